#pragma once

#include "exactlin.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tleaf {

using IVec = std::vector<int>;

struct RootSystem {
    char series = 'A';
    int rank = 0;
    std::vector<IVec> cartan;     // a_ij = <alpha_i^vee, alpha_j>
    std::vector<int> half_len;    // (alpha_i, alpha_i) / 2, short roots give 1
    std::vector<IVec> positive_roots;  // ordered by height, then lexicographically
    std::vector<Matrix> simple_reflection_matrices;  // on the root lattice, columns = images of alpha_j

    std::string label() const { return std::string(1, series) + std::to_string(rank); }
    int num_positive() const { return (int)positive_roots.size(); }

    // (a, b) for roots in simple-root coordinates; (alpha_i, alpha_j) = half_len_i * a_ij
    int inner(const IVec& a, const IVec& b) const {
        int s = 0;
        for (int i = 0; i < rank; ++i)
            if (a[i])
                for (int j = 0; j < rank; ++j)
                    if (b[j]) s += a[i] * b[j] * half_len[i] * cartan[i][j];
        return s;
    }
    int norm2(const IVec& a) const { return inner(a, a); }

    static int height(const IVec& a) { return std::accumulate(a.begin(), a.end(), 0); }

    // Index into positive_roots, or -1.
    int positive_index(const IVec& a) const {
        auto it = index_.find(a);
        return it == index_.end() ? -1 : it->second;
    }
    // Signed index: k >= 0 for positive root k, -(k+1) for its negative, 0x7fffffff if not a root.
    bool is_root(const IVec& a) const {
        if (positive_index(a) >= 0) return true;
        IVec m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) m[i] = -a[i];
        return positive_index(m) >= 0;
    }

    // Coroot of root a in the basis of simple coroots.
    IVec coroot(const IVec& a) const {
        int n2 = norm2(a);
        IVec c(rank);
        for (int j = 0; j < rank; ++j) {
            int num = a[j] * 2 * half_len[j];
            if (num % n2) throw std::logic_error("coroot not integral");
            c[j] = num / n2;
        }
        return c;
    }

    // <alpha_i^vee, a>
    int pair_coroot(int i, const IVec& a) const {
        int s = 0;
        for (int j = 0; j < rank; ++j) s += a[j] * cartan[i][j];
        return s;
    }

    void build_index() {
        index_.clear();
        for (int k = 0; k < (int)positive_roots.size(); ++k) index_[positive_roots[k]] = k;
    }

private:
    std::map<IVec, int> index_;
};

inline std::vector<IVec> cartan_matrix(char series, int r) {
    std::vector<IVec> a(r, IVec(r, 0));
    for (int i = 0; i < r; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (series) {
    case 'A':
        for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
        break;
    case 'B':
        for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
        a[r - 1][r - 2] = -2;  // alpha_r short
        break;
    case 'C':
        for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
        a[r - 2][r - 1] = -2;  // alpha_r long
        break;
    case 'D':
        for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
        link(r - 3, r - 1);
        break;
    case 'G':
        a[0][1] = -3;  // alpha_1 short
        a[1][0] = -1;
        break;
    default:
        throw std::invalid_argument("unsupported type");
    }
    return a;
}

inline std::pair<char, int> parse_type_label(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("unsupported type label: " + s);
    char c = s[0];
    int r = 0;
    try {
        std::size_t pos = 0;
        r = std::stoi(s.substr(1), &pos);
        if (pos != s.size() - 1) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("unsupported type label: " + s);
    }
    bool ok = (c == 'A' && r >= 1) || (c == 'B' && r >= 2) || (c == 'C' && r >= 2) || (c == 'D' && r >= 4) ||
              (c == 'G' && r == 2);
    if (!ok) throw std::invalid_argument("unsupported type label: " + s);
    return {c, r};
}

inline RootSystem build_root_system(const std::string& label) {
    auto [series, r] = parse_type_label(label);
    RootSystem rs;
    rs.series = series;
    rs.rank = r;
    rs.cartan = cartan_matrix(series, r);

    // d_i a_ij = d_j a_ji, propagated along the Dynkin diagram.
    std::vector<Rational> d(r);
    std::vector<char> seen(r, 0);
    d[0] = 1;
    seen[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int j = 0; j < r; ++j)
            if (!seen[j] && rs.cartan[i][j] != 0) {
                d[j] = d[i] * Rational(rs.cartan[i][j]) / Rational(rs.cartan[j][i]);
                seen[j] = 1;
                q.push(j);
            }
    }
    Rational mn = *std::min_element(d.begin(), d.end());
    for (int i = 0; i < r; ++i) rs.half_len.push_back((int)(d[i] / mn).to_int());

    // Closure of simple roots under simple reflections.
    std::vector<IVec> roots;
    std::map<IVec, int> seen_roots;
    for (int i = 0; i < r; ++i) {
        IVec e(r, 0);
        e[i] = 1;
        roots.push_back(e);
        seen_roots[e] = 1;
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
        for (int i = 0; i < r; ++i) {
            IVec b = roots[k];
            int c = rs.pair_coroot(i, b);
            b[i] -= c;
            bool pos = std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; });
            bool nz = std::any_of(b.begin(), b.end(), [](int x) { return x != 0; });
            if (pos && nz && !seen_roots.count(b)) {
                seen_roots[b] = 1;
                roots.push_back(b);
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const IVec& a, const IVec& b) {
        int ha = RootSystem::height(a), hb = RootSystem::height(b);
        if (ha != hb) return ha < hb;
        return a > b;  // among equal heights, earlier simple roots first
    });
    rs.positive_roots = roots;
    rs.build_index();

    for (int i = 0; i < r; ++i) {
        Matrix m = Matrix::identity(r);
        for (int j = 0; j < r; ++j) m(i, j) -= rs.cartan[i][j];
        rs.simple_reflection_matrices.push_back(m);
    }
    return rs;
}

inline int expected_positive_roots(char series, int r) {
    switch (series) {
    case 'A': return r * (r + 1) / 2;
    case 'B':
    case 'C': return r * r;
    case 'D': return r * (r - 1);
    case 'G': return 6;
    }
    return -1;
}

// Structure constants N_{a,b} for a Chevalley basis, signs by extraspecial pairs.
class StructureConstants {
public:
    explicit StructureConstants(const RootSystem& rs) : rs_(rs) {
        const auto& P = rs.positive_roots;
        int np = (int)P.size();
        // special pairs grouped by their sum, processed in increasing height
        for (int k = 0; k < np; ++k) {
            const IVec& xi = P[k];
            std::vector<std::pair<int, int>> pairs;
            for (int a = 0; a < np; ++a)
                for (int b = a + 1; b < np; ++b) {
                    IVec s = add(P[a], P[b]);
                    if (s == xi) pairs.push_back({a, b});
                }
            if (pairs.empty()) continue;
            auto [a0, b0] = pairs.front();  // minimal first entry
            table_[{a0, b0}] = p_value(P[a0], P[b0]) + 1;
            for (std::size_t t = 1; t < pairs.size(); ++t) {
                auto [a, b] = pairs[t];
                const IVec &al = P[a], &be = P[b], &al1 = P[a0], &be1 = P[b0];
                // four-term identity with (alpha, beta, -alpha', -beta')
                Rational acc;
                IVec g1 = sub(be, al1);
                if (rs.is_root(g1))
                    acc += Rational(N(be, neg(al1)) * N(al, neg(be1)), rs.norm2(g1));
                IVec g2 = sub(al, al1);
                if (rs.is_root(g2))
                    acc += Rational(N(neg(al1), al) * N(be, neg(be1)), rs.norm2(g2));
                Rational nmm = -Rational(table_[{a0, b0}]);  // N_{-a',-b'}
                Rational val = -Rational(rs.norm2(xi)) * acc / nmm;
                table_[{a, b}] = (int)val.to_int();
            }
        }
    }

    // N_{a,b} for arbitrary roots a, b; 0 if a+b is not a root.
    int N(const IVec& a, const IVec& b) const {
        IVec s = add(a, b);
        if (!rs_.is_root(s)) return 0;
        bool ap = positive(a), bp = positive(b);
        if (ap && bp) {
            int ia = rs_.positive_index(a), ib = rs_.positive_index(b);
            if (ia < ib) return table_.at({ia, ib});
            return -table_.at({ib, ia});
        }
        if (!ap && !bp) return -N(neg(a), neg(b));
        if (!ap) return -N(b, a);
        // a > 0, b < 0, z = -(a+b); N_{a,b}/(z,z) = N_{b,z}/(a,a) = N_{z,a}/(b,b)
        IVec z = neg(s);
        if (positive(s)) {
            Rational v = Rational(rs_.norm2(z), rs_.norm2(a)) * Rational(N(b, z));
            return (int)v.to_int();
        }
        Rational v = Rational(rs_.norm2(z), rs_.norm2(b)) * Rational(N(z, a));
        return (int)v.to_int();
    }

    int p_value(const IVec& a, const IVec& b) const {
        int p = 0;
        IVec c = b;
        while (true) {
            c = sub(c, a);
            if (!rs_.is_root(c)) break;
            ++p;
        }
        return p;
    }

    static IVec add(const IVec& a, const IVec& b) {
        IVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
        return c;
    }
    static IVec sub(const IVec& a, const IVec& b) {
        IVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
        return c;
    }
    static IVec neg(const IVec& a) {
        IVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
        return c;
    }
    static bool positive(const IVec& a) {
        for (int x : a)
            if (x != 0) return x > 0;
        return false;
    }

private:
    const RootSystem& rs_;
    std::map<std::pair<int, int>, int> table_;
};

using SparseVec = std::vector<std::pair<int, Rational>>;

struct LieAlgebra {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<SparseVec> table;  // table[i*dim+j] = [x_i, x_j]
    Matrix form;
    Subspace cartan, nilpotent_pos, nilpotent_neg, borel_pos, borel_neg;
    std::shared_ptr<const RootSystem> roots;  // null for direct sums
    Rational form_scale = 1;

    // Basis index helpers for simple algebras: h_i, E_alpha, E_-alpha.
    int rank() const { return roots ? roots->rank : 0; }
    int h_index(int i) const { return i; }
    int e_index(int k) const { return rank() + k; }
    int f_index(int k) const { return rank() + roots->num_positive() + k; }

    const SparseVec& br(std::size_t i, std::size_t j) const { return table[i * dim + j]; }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (y[j].is_zero()) continue;
                const auto& b = br(i, j);
                if (b.empty()) continue;
                Rational c = x[i] * y[j];
                for (auto& [k, v] : b) out[k] += c * v;
            }
        }
        return out;
    }

    Matrix ad(const Vec& x) const {
        if (x.size() != dim) throw std::invalid_argument("ad: dimension mismatch");
        Matrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j)
                for (auto& [k, v] : br(i, j)) m(k, j) += x[i] * v;
        }
        return m;
    }

    Vec unit(std::size_t i) const {
        Vec v(dim);
        v[i] = 1;
        return v;
    }

    Rational pair(const Vec& x, const Vec& y) const { return dot(x, form * y); }
};

// Chevalley basis: h_1..h_r (simple coroots), E_alpha = e_alpha and
// E_-alpha = ((alpha,alpha)/2)/scale * e_-alpha so that <E_alpha, E_-alpha> = 1.
inline LieAlgebra build_lie_algebra(const RootSystem& rs_in, const Rational& scale = 1) {
    auto rsp = std::make_shared<const RootSystem>(rs_in);
    const RootSystem& rs = *rsp;
    StructureConstants sc(rs);
    const int r = rs.rank, np = rs.num_positive();
    const std::size_t n = r + 2 * np;

    LieAlgebra g;
    g.dim = n;
    g.roots = rsp;
    g.form_scale = scale;
    g.table.assign(n * n, {});

    auto coeff_str = [](const IVec& a) {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
        return s + "]";
    };
    for (int i = 0; i < r; ++i) g.labels.push_back("h" + std::to_string(i + 1));
    for (int k = 0; k < np; ++k) g.labels.push_back("e" + coeff_str(rs.positive_roots[k]));
    for (int k = 0; k < np; ++k) g.labels.push_back("f" + coeff_str(rs.positive_roots[k]));

    // Root of a basis element (zero for Cartan), and the rescaling c with basis = c * chevalley.
    std::vector<IVec> root_of(n, IVec(r, 0));
    std::vector<Rational> c(n, Rational(1));
    for (int k = 0; k < np; ++k) {
        root_of[g.e_index(k)] = rs.positive_roots[k];
        root_of[g.f_index(k)] = StructureConstants::neg(rs.positive_roots[k]);
        c[g.f_index(k)] = Rational(rs.norm2(rs.positive_roots[k]), 2) / scale;
    }
    auto index_of_root = [&](const IVec& a) {
        if (StructureConstants::positive(a)) return g.e_index(rs.positive_index(a));
        return g.f_index(rs.positive_index(StructureConstants::neg(a)));
    };

    auto set = [&](int i, int j, SparseVec v) {
        SparseVec nv;
        for (auto& [k, x] : v) nv.push_back({k, -x});
        g.table[i * n + j] = std::move(v);
        g.table[j * n + i] = std::move(nv);
    };

    // [h_i, x_a] = <a, alpha_i^vee> x_a
    for (int i = 0; i < r; ++i)
        for (std::size_t a = r; a < n; ++a) {
            int v = rs.pair_coroot(i, root_of[a]);
            if (v) set(i, (int)a, {{(int)a, Rational(v)}});
        }
    for (std::size_t a = r; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            IVec s = StructureConstants::add(root_of[a], root_of[b]);
            bool zero = std::all_of(s.begin(), s.end(), [](int x) { return x == 0; });
            if (zero) {
                // [e_alpha, e_-alpha] = h_alpha
                IVec pos = StructureConstants::positive(root_of[a]) ? root_of[a] : root_of[b];
                IVec cr = rs.coroot(pos);
                Rational sgn = StructureConstants::positive(root_of[a]) ? 1 : -1;
                Rational f = c[a] * c[b] * sgn;
                SparseVec v;
                for (int j = 0; j < r; ++j)
                    if (cr[j]) v.push_back({j, f * Rational(cr[j])});
                set((int)a, (int)b, v);
            } else if (rs.is_root(s)) {
                int nab = sc.N(root_of[a], root_of[b]);
                int k = index_of_root(s);
                set((int)a, (int)b, {{k, c[a] * c[b] / c[k] * Rational(nab)}});
            }
        }

    // form: <h_i,h_j> = scale * (alpha_i^vee, alpha_j^vee), <E_a, E_-a> = 1
    g.form = Matrix(n, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            IVec ai(r, 0), aj(r, 0);
            ai[i] = 1;
            aj[j] = 1;
            Rational v = Rational(4 * rs.inner(ai, aj), rs.norm2(ai) * rs.norm2(aj));
            g.form(i, j) = scale * v;
        }
    for (int k = 0; k < np; ++k) {
        g.form(g.e_index(k), g.f_index(k)) = 1;
        g.form(g.f_index(k), g.e_index(k)) = 1;
    }

    std::vector<std::size_t> hi, ei, fi;
    for (int i = 0; i < r; ++i) hi.push_back(i);
    for (int k = 0; k < np; ++k) ei.push_back(g.e_index(k)), fi.push_back(g.f_index(k));
    auto cat = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    g.cartan = Subspace::coordinate(n, hi);
    g.nilpotent_pos = Subspace::coordinate(n, ei);
    g.nilpotent_neg = Subspace::coordinate(n, fi);
    g.borel_pos = Subspace::coordinate(n, cat(hi, ei));
    g.borel_neg = Subspace::coordinate(n, cat(hi, fi));
    return g;
}

inline LieAlgebra build_lie_algebra(const std::string& label, const Rational& scale = 1) {
    return build_lie_algebra(build_root_system(label), scale);
}

// g^k with slot-concatenated coordinates; form is blockwise the form of g.
inline LieAlgebra direct_power(const LieAlgebra& g, int k) {
    LieAlgebra s;
    const std::size_t d = g.dim, n = d * k;
    s.dim = n;
    s.table.assign(n * n, {});
    s.form_scale = g.form_scale;
    for (int t = 0; t < k; ++t) {
        for (auto& l : g.labels) s.labels.push_back(l + "@" + std::to_string(t + 1));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                SparseVec v;
                for (auto& [idx, x] : g.br(i, j)) v.push_back({(int)(idx + t * d), x});
                s.table[(i + t * d) * n + (j + t * d)] = v;
            }
    }
    s.form = block_diag(std::vector<Matrix>(k, g.form));
    s.cartan = direct_sum(std::vector<Subspace>(k, g.cartan));
    s.nilpotent_pos = direct_sum(std::vector<Subspace>(k, g.nilpotent_pos));
    s.nilpotent_neg = direct_sum(std::vector<Subspace>(k, g.nilpotent_neg));
    s.borel_pos = direct_sum(std::vector<Subspace>(k, g.borel_pos));
    s.borel_neg = direct_sum(std::vector<Subspace>(k, g.borel_neg));
    return s;
}

inline Matrix ad_matrix(const LieAlgebra& g, const Vec& x) { return g.ad(x); }

// exp(ad_x) for ad-nilpotent x.
inline Matrix exp_nilpotent(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix out = Matrix::identity(n), term = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        term = Rational(1, (long long)k) * (term * a);
        if (term.is_zero()) return out;
        out = out + term;
    }
    if (!term.is_zero()) throw std::domain_error("exp_nilpotent: matrix is not nilpotent");
    return out;
}

// Chevalley vector e_{-alpha_i} in the stored basis (so that [e_i, f_i] = h_i).
inline Vec chevalley_f(const LieAlgebra& g, int k) {
    Vec v(g.dim);
    const IVec& a = g.roots->positive_roots[k];
    v[g.f_index(k)] = g.form_scale * Rational(2, g.roots->norm2(a));
    return v;
}

// Ad of sdot_i = exp(e_i) exp(-f_i) exp(e_i).
inline Matrix ad_simple_reflection(const LieAlgebra& g, int i) {
    int k = g.roots->positive_index([&] {
        IVec e(g.rank(), 0);
        e[i] = 1;
        return e;
    }());
    Matrix ae = exp_nilpotent(g.ad(g.unit(g.e_index(k))));
    Matrix af = exp_nilpotent(-g.ad(chevalley_f(g, k)));
    return ae * af * ae;
}

// Ad of x_alpha(t) = exp(t e_alpha) and y_alpha(t) = exp(t f_alpha) for a positive root index k.
inline Matrix ad_root_exp(const LieAlgebra& g, int k, const Rational& t, bool negative) {
    Vec v(g.dim);
    if (negative)
        v = chevalley_f(g, k), v[g.f_index(k)] *= t;
    else
        v[g.e_index(k)] = t;
    return exp_nilpotent(g.ad(v));
}

// Ad of a torus element acting by the character prod c_i^{a_i} on the root vector of a.
inline Matrix ad_torus(const LieAlgebra& g, const std::vector<Rational>& c) {
    const auto& rs = *g.roots;
    Matrix m = Matrix::identity(g.dim);
    for (int k = 0; k < rs.num_positive(); ++k) {
        Rational chi = 1;
        for (int i = 0; i < rs.rank; ++i) {
            int p = rs.positive_roots[k][i];
            for (int t = 0; t < p; ++t) chi *= c[i];
        }
        m(g.e_index(k), g.e_index(k)) = chi;
        m(g.f_index(k), g.f_index(k)) = chi.inverse();
    }
    return m;
}

// Inverse of an orthogonal map (A^T F A = F): A^{-1} = F^{-1} A^T F.
inline Matrix orthogonal_inverse(const Matrix& a, const Matrix& form, const Matrix& form_inv) {
    return form_inv * a.transpose() * form;
}

}  // namespace tleaf
