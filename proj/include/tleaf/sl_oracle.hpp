#pragma once

#include "weyl.hpp"

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tleaf {

// Concrete sl_m realization of the abstract A_{m-1} Chevalley algebra.
class SLRealization {
public:
    explicit SLRealization(int m)
        : m_(m),
          rs_(build_root_system("A" + std::to_string(m - 1))),
          g_(std::make_shared<const LieAlgebra>(build_lie_algebra(rs_))),
          W_(std::make_unique<WeylGroup>(rs_)) {
        if (m < 2) throw std::invalid_argument("SLRealization: m >= 2");
        build_basis_map();
        build_cells();
    }

    int m() const { return m_; }
    const RootSystem& root_system() const { return rs_; }
    std::shared_ptr<const LieAlgebra> algebra() const { return g_; }
    const WeylGroup& weyl() const { return *W_; }
    const Matrix& basis_image(std::size_t i) const { return phi_[i]; }

    static Matrix E(int m, int i, int j) {
        Matrix e(m, m);
        e(i, j) = 1;
        return e;
    }
    static Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

    // Coordinates of a traceless matrix in the Chevalley basis.
    Vec coords(const Matrix& x) const {
        Vec v(g_->dim);
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b) {
                if (a == b || x(a, b).is_zero()) continue;
                auto [idx, scale] = offdiag_.at({a, b});
                v[idx] += x(a, b) / scale;
            }
        Rational run;
        for (int i = 0; i + 1 < m_; ++i) {
            run += x(i, i);
            v[g_->h_index(i)] = run;
        }
        return v;
    }

    Matrix realize(const Vec& v) const {
        Matrix x(m_, m_);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) x = x + v[i] * phi_[i];
        return x;
    }

    // Bracket tables of the abstract algebra and of matrices agree.
    bool verify_basis_map() const {
        for (std::size_t i = 0; i < g_->dim; ++i)
            for (std::size_t j = 0; j < g_->dim; ++j) {
                Vec b = g_->bracket(g_->unit(i), g_->unit(j));
                if (commutator(phi_[i], phi_[j]) != realize(b)) return false;
            }
        return true;
    }

    Matrix adjoint_matrix(const Matrix& g) const {
        Matrix gi = inverse(g);
        Matrix ad(g_->dim, g_->dim);
        for (std::size_t j = 0; j < g_->dim; ++j) ad.set_col(j, coords(g * phi_[j] * gi));
        return ad;
    }

    Matrix sdot(int i) const {
        Matrix s = Matrix::identity(m_);
        s(i, i) = 0;
        s(i + 1, i + 1) = 0;
        s(i, i + 1) = 1;
        s(i + 1, i) = -1;
        return s;
    }
    Matrix x_elem(int i, const Rational& t) const {
        Matrix s = Matrix::identity(m_);
        s(i, i + 1) = t;
        return s;
    }
    Matrix y_elem(int i, const Rational& t) const {
        Matrix s = Matrix::identity(m_);
        s(i + 1, i) = t;
        return s;
    }

    Matrix weyl_representative(const WeylElement& w) const {
        Matrix r = Matrix::identity(m_);
        for (int s : w.word()) r = r * sdot(s);
        return r;
    }

    // Cell indices by rank patterns matched against the Weyl representatives.
    struct Cells {
        WeylElement in_B, in_Bminus;
    };
    WeylElement cell_B(const Matrix& g) const { return match(bottom_left(g), bl_); }
    WeylElement cell_Bminus(const Matrix& g) const { return match(top_right(g), tr_); }
    WeylElement cell_BminusB(const Matrix& g) const { return match(top_left(g), tl_); }
    Cells cell_of(const Matrix& g) const {
        if (matrix_rank(g) != (std::size_t)m_) throw std::invalid_argument("cell_of: singular input");
        return {cell_B(g), cell_Bminus(g)};
    }

    int class_dim(const Matrix& rep) const {
        Matrix a = adjoint_matrix(rep) - Matrix::identity(g_->dim);
        return (int)g_->dim - ((int)g_->dim - (int)matrix_rank(a));
    }

    static Rational det(Matrix a) {
        const std::size_t n = a.rows();
        Rational d = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = n;
            for (std::size_t r = c; r < n; ++r)
                if (!a(r, c).is_zero()) {
                    p = r;
                    break;
                }
            if (p == n) return 0;
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
                d = -d;
            }
            d *= a(c, c);
            Rational inv = a(c, c).inverse();
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a(r, c).is_zero()) continue;
                Rational f = a(r, c) * inv;
                for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            }
        }
        return d;
    }

    using RankTable = std::vector<int>;
    RankTable top_left(const Matrix& g) const {
        RankTable t;
        for (int i = 1; i <= m_; ++i)
            for (int j = 1; j <= m_; ++j) t.push_back((int)matrix_rank(g.block(0, 0, i, j)));
        return t;
    }
    RankTable bottom_left(const Matrix& g) const {
        RankTable t;
        for (int i = 0; i < m_; ++i)
            for (int j = 1; j <= m_; ++j) t.push_back((int)matrix_rank(g.block(i, 0, m_ - i, j)));
        return t;
    }
    RankTable top_right(const Matrix& g) const {
        RankTable t;
        for (int i = 1; i <= m_; ++i)
            for (int j = 0; j < m_; ++j) t.push_back((int)matrix_rank(g.block(0, j, i, m_ - j)));
        return t;
    }

private:
    int m_;
    RootSystem rs_;
    std::shared_ptr<const LieAlgebra> g_;
    std::unique_ptr<WeylGroup> W_;
    std::vector<Matrix> phi_;
    std::map<std::pair<int, int>, std::pair<int, Rational>> offdiag_;
    std::map<RankTable, int> bl_, tr_, tl_;

    void build_basis_map() {
        const int r = rs_.rank, np = rs_.num_positive();
        phi_.assign(g_->dim, Matrix(m_, m_));
        std::vector<char> done(g_->dim, 0);
        for (int i = 0; i < r; ++i) {
            phi_[g_->h_index(i)] = E(m_, i, i) - E(m_, i + 1, i + 1);
            done[g_->h_index(i)] = 1;
            IVec a(r, 0);
            a[i] = 1;
            int k = rs_.positive_index(a);
            phi_[g_->e_index(k)] = E(m_, i, i + 1);
            phi_[g_->f_index(k)] = E(m_, i + 1, i);
            done[g_->e_index(k)] = done[g_->f_index(k)] = 1;
        }
        // higher roots: x_gamma = [x_i, x_beta] / coefficient, in height order
        for (int k = 0; k < np; ++k)
            for (int neg = 0; neg < 2; ++neg) {
                int target = neg ? g_->f_index(k) : g_->e_index(k);
                if (done[target]) continue;
                bool found = false;
                for (int i = 0; i < r && !found; ++i) {
                    IVec a(r, 0);
                    a[i] = 1;
                    int si = rs_.positive_index(a);
                    int xi = neg ? g_->f_index(si) : g_->e_index(si);
                    for (std::size_t j = 0; j < g_->dim && !found; ++j) {
                        if (!done[j]) continue;
                        const auto& b = g_->br(xi, j);
                        if (b.size() == 1 && b[0].first == target) {
                            phi_[target] = b[0].second.inverse() * commutator(phi_[xi], phi_[j]);
                            found = true;
                        }
                    }
                }
                if (!found) throw std::logic_error("basis map: cannot reach root vector");
                done[target] = 1;
            }
        for (std::size_t idx = r; idx < g_->dim; ++idx) {
            const Matrix& x = phi_[idx];
            int cnt = 0;
            for (int a = 0; a < m_; ++a)
                for (int b = 0; b < m_; ++b)
                    if (!x(a, b).is_zero()) {
                        offdiag_[{a, b}] = {(int)idx, x(a, b)};
                        ++cnt;
                    }
            if (cnt != 1) throw std::logic_error("basis map: root vector is not a matrix unit multiple");
        }
    }

    void build_cells() {
        for (auto& w : W_->elements()) {
            Matrix r = weyl_representative(w);
            bl_[bottom_left(r)] = w.id;
            tr_[top_right(r)] = w.id;
            tl_[top_left(r)] = w.id;
        }
    }

    WeylElement match(const RankTable& t, const std::map<RankTable, int>& tab) const {
        auto it = tab.find(t);
        if (it == tab.end()) throw std::invalid_argument("cell_of: singular input");
        return W_->element(it->second);
    }
};

// Deterministic small-integer parameters from [-3,3] minus {0}.
class ParamSource {
public:
    explicit ParamSource(unsigned long long seed) : rng_(seed) {}
    Rational nonzero() {
        std::uniform_int_distribution<int> d(1, 6);
        int k = d(rng_);
        return Rational(k <= 3 ? k : 3 - k);
    }
    Rational any() {
        std::uniform_int_distribution<int> d(-3, 3);
        return Rational(d(rng_));
    }
    int pick(int n) {
        std::uniform_int_distribution<int> d(0, n - 1);
        return d(rng_);
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Random element of B (sign > 0) or B_- (sign < 0) with det 1.
inline Matrix random_borel(int m, ParamSource& ps, int sign) {
    Matrix b = Matrix::identity(m);
    Rational prod = 1;
    for (int i = 0; i + 1 < m; ++i) {
        b(i, i) = ps.nonzero();
        prod *= b(i, i);
    }
    b(m - 1, m - 1) = prod.inverse();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (sign > 0)
                b(i, j) = ps.any();
            else
                b(j, i) = ps.any();
        }
    return b;
}

// Guided walk through B_-\G/B cells: right factors x_s(t) sdot_s, left factors sdot_s y_s(t).
// Each step either stays in its cell or moves; moves that raise codimension need a special t.
class CellWalker {
public:
    struct Move {
        bool left;
        int s;
    };

    CellWalker(const SLRealization& sl, ParamSource& ps) : sl_(sl), W_(sl.weyl()), ps_(ps) {}

    // Plans a path of cells ending at target; returns false if unreachable.
    bool plan(const std::vector<Move>& moves, const WeylElement& start, const WeylElement& target,
              std::vector<WeylElement>& path) {
        const std::size_t L = moves.size();
        std::vector<std::vector<char>> reach(L + 1, std::vector<char>(W_.size(), 0));
        reach[0][start.id] = 1;
        for (std::size_t k = 0; k < L; ++k)
            for (int v = 0; v < W_.size(); ++v)
                if (reach[k][v])
                    for (auto& nx : successors(moves[k], W_.element(v))) reach[k + 1][nx.id] = 1;
        if (!reach[L][target.id]) return false;
        path.assign(L + 1, start);
        path[L] = target;
        for (std::size_t k = L; k-- > 0;) {
            std::vector<WeylElement> cand;
            for (int v = 0; v < W_.size(); ++v)
                if (reach[k][v])
                    for (auto& nx : successors(moves[k], W_.element(v)))
                        if (nx == path[k + 1]) cand.push_back(W_.element(v));
            path[k] = cand[ps_.pick((int)cand.size())];
        }
        return true;
    }

    // Executes the planned path from g (which must lie in cell path[0]); returns the factor list.
    bool run(const std::vector<Move>& moves, const std::vector<WeylElement>& path, Matrix& g,
             std::vector<Matrix>& factors) {
        factors.clear();
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const Move& mv = moves[k];
            const WeylElement want = path[k + 1];
            auto build = [&](const Rational& t) {
                return mv.left ? sl_.sdot(mv.s) * sl_.y_elem(mv.s, t) : sl_.x_elem(mv.s, t) * sl_.sdot(mv.s);
            };
            auto apply = [&](const Matrix& f) { return mv.left ? f * g : g * f; };
            WeylElement cur = path[k];
            WeylElement moved = mv.left ? W_.simple_times(mv.s, cur) : W_.times_simple(cur, mv.s);
            bool forced = W_.length(moved) < W_.length(cur);
            Matrix f;
            bool ok = false;
            if (forced || want == cur) {
                for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
                    f = build(ps_.nonzero());
                    ok = sl_.cell_BminusB(apply(f)) == want;
                }
            } else {
                ok = solve_special(build, apply, want, f);
            }
            if (!ok) return false;
            g = apply(f);
            factors.push_back(f);
        }
        return true;
    }

private:
    const SLRealization& sl_;
    const WeylGroup& W_;
    ParamSource& ps_;

    std::vector<WeylElement> successors(const Move& mv, const WeylElement& v) const {
        WeylElement moved = mv.left ? W_.simple_times(mv.s, v) : W_.times_simple(v, mv.s);
        if (W_.length(moved) < W_.length(v)) return {moved};
        return {v, moved};
    }

    // The special parameter makes some top-left minor vanish; minors are affine in t.
    template <class Build, class Apply>
    bool solve_special(Build build, Apply apply, const WeylElement& want, Matrix& f) {
        const int m = sl_.m();
        Matrix g0 = apply(build(0)), g1 = apply(build(1));
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                if (try_minors(g0, g1, i, j, std::min(i, j), build, apply, want, f)) return true;
        return false;
    }

    template <class Build, class Apply>
    bool try_minors(const Matrix& g0, const Matrix& g1, int i, int j, int kmax, Build build, Apply apply,
                    const WeylElement& want, Matrix& f) {
        for (int k = 1; k <= kmax; ++k) {
            std::vector<std::vector<int>> rsets, csets;
            subsets(i, k, rsets);
            subsets(j, k, csets);
            for (auto& rs : rsets)
                for (auto& cs : csets) {
                    Rational a = minor(g0, rs, cs), b = minor(g1, rs, cs);
                    if (a == b) continue;
                    Rational t = -a / (b - a);
                    Matrix cand = build(t);
                    if (sl_.cell_BminusB(apply(cand)) == want) {
                        f = cand;
                        return true;
                    }
                }
        }
        return false;
    }

    static void subsets(int n, int k, std::vector<std::vector<int>>& out) {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int start) {
            if ((int)cur.size() == k) {
                out.push_back(cur);
                return;
            }
            for (int x = start; x < n; ++x) {
                cur.push_back(x);
                rec(x + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }

    static Rational minor(const Matrix& g, const std::vector<int>& rs, const std::vector<int>& cs) {
        Matrix s(rs.size(), cs.size());
        for (std::size_t a = 0; a < rs.size(); ++a)
            for (std::size_t b = 0; b < cs.size(); ++b) s(a, b) = g(rs[a], cs[b]);
        return SLRealization::det(s);
    }
};

// Product of y_i(t) over a reduced word of u: an element of B_- cap BuB (t != 0).
inline Matrix lower_word_product(const SLRealization& sl, const WeylElement& u, ParamSource& ps) {
    Matrix g = Matrix::identity(sl.m());
    for (int s : u.word()) g = g * sl.y_elem(s, ps.nonzero());
    return g;
}

// Product of x_i(t) over a reduced word of v: an element of B cap B_- v B_-.
inline Matrix upper_word_product(const SLRealization& sl, const WeylElement& v, ParamSource& ps) {
    Matrix g = Matrix::identity(sl.m());
    for (int s : v.word()) g = g * sl.x_elem(s, ps.nonzero());
    return g;
}

inline Matrix random_torus(int m, ParamSource& ps) {
    Matrix t = Matrix::identity(m);
    Rational prod = 1;
    for (int i = 0; i + 1 < m; ++i) {
        t(i, i) = ps.nonzero();
        prod *= t(i, i);
    }
    t(m - 1, m - 1) = prod.inverse();
    return t;
}

// Point of the double Bruhat cell BuB cap B_-vB_-.
inline Matrix double_bruhat_point(const SLRealization& sl, const WeylElement& u, const WeylElement& v,
                                  ParamSource& ps) {
    return lower_word_product(sl, u, ps) * random_torus(sl.m(), ps) * upper_word_product(sl, v, ps);
}

}  // namespace tleaf
