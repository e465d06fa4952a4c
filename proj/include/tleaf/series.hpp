#pragma once

#include "leaf_engine.hpp"
#include "weyl.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tleaf {

enum class Series { F, FF, Ftilde, FFtilde };

inline std::string series_name(Series s) {
    switch (s) {
        case Series::F: return "F";
        case Series::FF: return "FF";
        case Series::Ftilde: return "Ft";
        case Series::FFtilde: return "FFt";
    }
    return "?";
}

inline Series parse_series(const std::string& s) {
    if (s == "F") return Series::F;
    if (s == "FF") return Series::FF;
    if (s == "Ft" || s == "Ftilde") return Series::Ftilde;
    if (s == "FFt" || s == "FFtilde") return Series::FFtilde;
    throw std::invalid_argument("unknown series: " + s);
}

inline bool is_doubled(Series s) { return s == Series::FF || s == Series::FFtilde; }
inline bool is_x_model(Series s) { return s == Series::Ftilde || s == Series::FFtilde; }

struct LeafDescriptor {
    Series series = Series::F;
    int n = 1;
    WeylSequence u;
    std::optional<WeylSequence> v;  // FF, FFt
    std::optional<WeylElement> w;   // F, FF, Ft (the v of B_- v B_- for Ft)
    std::optional<int> class_dim;   // FFt
    int ambient_dim = 0;
    int leaf_dim = 0;
    int symplectic_rank = 0;
    Subspace stabilizer;  // in h, simple-coroot coordinates
};

class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct GroupDims {
    int g, b, t, n_pos;
};
inline GroupDims group_dims(const RootSystem& rs) {
    int np = rs.num_positive();
    return {2 * np + rs.rank, np + rs.rank, rs.rank, np};
}

inline int ambient_dim(Series s, const RootSystem& rs, int n) {
    GroupDims d = group_dims(rs);
    switch (s) {
        case Series::F: return n * d.n_pos;
        case Series::FF: return 2 * n * d.n_pos;
        case Series::Ftilde: return n * d.g - (n - 1) * d.b;
        case Series::FFtilde: return 2 * (n * d.g - (n - 1) * d.b);
    }
    return 0;
}

namespace detail {

// Calls f on every tuple in W^k, lexicographic in element ids (shortlex words).
inline void for_each_tuple(const WeylGroup& W, int k, const std::function<void(const WeylSequence&)>& f) {
    WeylSequence cur(k, W.identity());
    std::vector<int> idx(k, 0);
    while (true) {
        for (int i = 0; i < k; ++i) cur[i] = W.element(idx[i]);
        f(cur);
        int p = k - 1;
        while (p >= 0 && ++idx[p] == W.size()) idx[p--] = 0;
        if (p < 0) return;
    }
}

inline void check_cap(const WeylGroup& W, int exponent, double cap) {
    double est = std::pow((double)W.size(), exponent);
    if (est > cap)
        throw CapExceeded("index set too large: about " + std::to_string((long long)est) + " candidates exceed cap " +
                          std::to_string((long long)cap));
}

inline Matrix endo(const WeylGroup& W, int sign, const WeylElement& p) {
    return Matrix::identity(W.rank()) + Rational(sign) * p.matrix();
}

}  // namespace detail

constexpr double kDefaultCap = 1e6;

// (1 + u w^{-1}) on h
inline LeafDescriptor leaf_F(const WeylGroup& W, const WeylSequence& u, const WeylElement& w) {
    LeafDescriptor d;
    d.series = Series::F;
    d.n = (int)u.size();
    d.u = u;
    d.w = w;
    d.ambient_dim = ambient_dim(Series::F, W.root_system(), d.n);
    WeylElement p = W.multiply(W.product_of_sequence(u), W.inverse(w));
    auto se = W.signed_endomorphism(+1, p);
    d.leaf_dim = W.length(u) - W.length(w);
    d.symplectic_rank = d.leaf_dim - se.ker_dim;
    d.stabilizer = se.image;
    return d;
}

inline LeafDescriptor leaf_FF(const WeylGroup& W, const WeylSequence& u, const WeylSequence& v, const WeylElement& w) {
    LeafDescriptor d;
    d.series = Series::FF;
    d.n = (int)u.size();
    d.u = u;
    d.v = v;
    d.w = w;
    d.ambient_dim = ambient_dim(Series::FF, W.root_system(), d.n);
    WeylElement p = W.multiply(W.multiply(W.product_of_sequence(u), W.inverse(w)),
                               W.inverse(W.product_of_sequence(v)));
    auto se = W.signed_endomorphism(+1, p);
    d.leaf_dim = W.length(u) + W.length(v) - W.length(w);
    d.symplectic_rank = d.leaf_dim - se.ker_dim;
    d.stabilizer = se.image;
    return d;
}

inline LeafDescriptor leaf_Ftilde(const WeylGroup& W, const WeylSequence& u, const WeylElement& v) {
    LeafDescriptor d;
    d.series = Series::Ftilde;
    d.n = (int)u.size();
    d.u = u;
    d.w = v;
    d.ambient_dim = ambient_dim(Series::Ftilde, W.root_system(), d.n);
    WeylElement p = W.multiply(W.product_of_sequence(u), W.inverse(v));
    auto se = W.signed_endomorphism(-1, p);
    d.leaf_dim = W.length(u) + W.length(v) + W.rank();
    d.symplectic_rank = W.length(u) + W.length(v) + (int)se.image.dim();
    d.stabilizer = se.image;
    return d;
}

inline LeafDescriptor leaf_FFtilde(const WeylGroup& W, const WeylSequence& u, const WeylSequence& v, int class_dim) {
    GroupDims gd = group_dims(W.root_system());
    if (class_dim < 0 || class_dim > gd.g - gd.t)
        throw std::invalid_argument("class_dim must lie in [0, dim G - rank]");
    if (class_dim % 2 != 0) throw std::invalid_argument("class_dim must be even");
    if (u.size() != v.size()) throw std::invalid_argument("u and v must have the same length");
    LeafDescriptor d;
    d.series = Series::FFtilde;
    d.n = (int)u.size();
    d.u = u;
    d.v = v;
    d.class_dim = class_dim;
    d.ambient_dim = ambient_dim(Series::FFtilde, W.root_system(), d.n);
    WeylElement p = W.multiply(W.product_of_sequence(u), W.inverse(W.product_of_sequence(v)));
    auto se = W.signed_endomorphism(-1, p);
    d.leaf_dim = W.length(u) + W.length(v) + class_dim + W.rank();
    d.symplectic_rank = W.length(u) + W.length(v) + class_dim + (int)se.image.dim();
    d.stabilizer = se.image;
    return d;
}

inline std::vector<LeafDescriptor> enumerate_F(const WeylGroup& W, int n, double cap = kDefaultCap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::check_cap(W, n + 1, cap);
    std::vector<LeafDescriptor> out;
    detail::for_each_tuple(W, n, [&](const WeylSequence& u) {
        WeylElement top = W.demazure_of_sequence(u);
        for (auto& w : W.elements())
            if (W.bruhat_leq(w, top)) out.push_back(leaf_F(W, u, w));
    });
    return out;
}

inline std::vector<LeafDescriptor> enumerate_FF(const WeylGroup& W, int n, double cap = kDefaultCap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::check_cap(W, 2 * n + 1, cap);
    std::vector<LeafDescriptor> out;
    detail::for_each_tuple(W, n, [&](const WeylSequence& u) {
        detail::for_each_tuple(W, n, [&](const WeylSequence& v) {
            for (auto& w : W.elements())
                if (wuv_nonempty(W, u, v, w)) out.push_back(leaf_FF(W, u, v, w));
        });
    });
    return out;
}

inline std::vector<LeafDescriptor> enumerate_Ftilde(const WeylGroup& W, int n, double cap = kDefaultCap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::check_cap(W, n + 1, cap);
    std::vector<LeafDescriptor> out;
    detail::for_each_tuple(W, n, [&](const WeylSequence& u) {
        for (auto& v : W.elements()) out.push_back(leaf_Ftilde(W, u, v));
    });
    return out;
}

// One descriptor per (u, v) for a fixed conjugacy class dimension.
inline std::vector<LeafDescriptor> enumerate_FFtilde(const WeylGroup& W, int n, int class_dim,
                                                     double cap = kDefaultCap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    detail::check_cap(W, 2 * n, cap);
    std::vector<LeafDescriptor> out;
    detail::for_each_tuple(W, n, [&](const WeylSequence& u) {
        detail::for_each_tuple(W, n, [&](const WeylSequence& v) { out.push_back(leaf_FFtilde(W, u, v, class_dim)); });
    });
    return out;
}

// ---------------------------------------------------------------------------
// Ambient setups: Y-model (G/Q)^n for F, FF and X-model (G/Q)^{n-1} x G for Ft, FFt.

struct BaseData {
    std::shared_ptr<const LieAlgebra> g;  // the simple algebra
    std::shared_ptr<const FactorizableData> rd;  // on g (F, Ft) or g (+) g (FF, FFt)
    Subspace m_plus, m_minus, q, c;
    bool doubled = false;

    std::size_t dim() const { return rd->dim(); }
};

inline BaseData base_data(Series s, std::shared_ptr<const LieAlgebra> g) {
    BaseData b;
    b.g = g;
    b.doubled = is_doubled(s);
    FactorizableData st = build_r_st(g);
    if (!b.doubled) {
        b.rd = std::make_shared<const FactorizableData>(st);
        b.m_plus = g->borel_pos;
        b.m_minus = g->borel_neg;
        b.q = g->borel_pos;
        b.c = g->cartan;
    } else {
        // (G x G, r_st^(2)) with M_+ = Q = B x B_-, M_- = G_diag
        b.rd = std::make_shared<const FactorizableData>(build_r_n(st, 2));
        b.m_plus = direct_sum(g->borel_pos, g->borel_neg);
        b.m_minus = diagonal(g->dim);
        b.q = b.m_plus;
        b.c = direct_sum(g->cartan, g->cartan);
    }
    return b;
}

namespace detail {

// Subspace of a^k assembled from per-slot pieces and diagonals over consecutive slot pairs.
struct SlotPiece {
    int width;  // 1 or 2 slots
    Subspace s;
};

inline Subspace assemble(const std::vector<SlotPiece>& parts) {
    std::vector<Subspace> v;
    for (auto& p : parts) v.push_back(p.s);
    return direct_sum(v);
}

inline std::vector<SlotPiece> m_n_pieces(const BaseData& b, int n, bool plus) {
    const std::size_t d = b.dim();
    Subspace dg = diagonal(d);
    std::vector<SlotPiece> out;
    if (n % 2 == 0) {
        if (plus) {
            out.push_back({1, b.m_plus});
            for (int j = 2; j + 1 <= n - 1; j += 2) out.push_back({2, dg});
            out.push_back({1, b.m_minus});
        } else {
            for (int j = 1; j <= n; j += 2) out.push_back({2, dg});
        }
    } else {
        if (plus) {
            out.push_back({1, b.m_plus});
            for (int j = 2; j <= n; j += 2) out.push_back({2, dg});
        } else {
            for (int j = 1; j + 1 <= n - 1; j += 2) out.push_back({2, dg});
            out.push_back({1, b.m_minus});
        }
    }
    return out;
}

}  // namespace detail

struct SeriesModel {
    Series series;
    int n;
    BaseData base;
    AdmissibleSetup base_setup;
    AdmissibleSetup setup;  // ambient
    Matrix h_to_base;   // h -> base algebra (x or (x, x))
    Matrix t_embed;     // h -> ambient algebra
    int slots = 0;      // group slots in the ambient algebra

    std::size_t base_dim() const { return base.dim(); }
    std::size_t ambient_dim() const { return setup.dim(); }
    int rank() const { return base.g->rank(); }

    // Ad of the point given per-slot Ad-matrices (n of them).
    Matrix point_ad(const std::vector<Matrix>& slot_ads) const {
        if ((int)slot_ads.size() != n) throw std::invalid_argument("point_ad: expected n slot matrices");
        std::vector<Matrix> blocks(slot_ads);
        if (is_x_model(series)) blocks.push_back(Matrix::identity(base_dim()));
        return block_diag(blocks);
    }

    // Orbit-pair representatives from c = (c_1, ..., c_{n+1}) (base Ad-matrices).
    std::pair<Matrix, Matrix> orbit_pair_ads(const std::vector<Matrix>& c) const {
        if ((int)c.size() != n + 1) throw std::invalid_argument("orbit_pair_ads: expected n+1 matrices");
        Matrix id = Matrix::identity(base_dim());
        std::vector<Matrix> yp, ym;
        for (int j = 1; j <= n; ++j) {
            yp.push_back(j % 2 == 1 ? c[j - 1] : id);
            ym.push_back(j % 2 == 0 ? c[j - 1] : id);
        }
        if (n % 2 == 0)
            yp[n - 1] = c[n];
        else
            ym[n - 1] = c[n];
        return {point_ad(yp), point_ad(ym)};
    }

    // T-stabilizer in h from an ambient stabilizer subspace.
    Subspace to_h(const Subspace& ambient_stab) const { return preimage(t_embed, ambient_stab); }

    // Closed-form route through V_c on the base setup.
    Subspace stabilizer_from_c(const std::vector<Matrix>& c) const {
        if (!is_x_model(series)) {
            Subspace vc = vc_subspace_zn(base_setup, c);
            return preimage(h_to_base, stabilizer_from_vc_zn(base_setup, vc));
        }
        Subspace vc = vc_subspace_dn(base_setup, c);
        Subspace tt = stabilizer_from_vc_dn(base_setup, vc);
        Matrix left = vstack(h_to_base, Matrix(base_dim(), rank()));
        return preimage(left, tt);
    }

    // T^2-stabilizer (t_1, t_2) from V_c for the X-model, as a subspace of h (+) h.
    Subspace t2_stabilizer_from_c(const std::vector<Matrix>& c) const {
        if (!is_x_model(series)) throw std::invalid_argument("T^2-stabilizer only for the X-model");
        Subspace tt = stabilizer_from_vc_dn(base_setup, vc_subspace_dn(base_setup, c));
        return preimage(block_diag({h_to_base, h_to_base}), tt);
    }
};

inline SeriesModel build_model(Series s, std::shared_ptr<const LieAlgebra> g, int n, bool check = true) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    SeriesModel m{s, n, base_data(s, g), {}, {}, {}, {}, 0};
    const BaseData& b = m.base;
    const std::size_t d = b.dim();
    const int r = g->rank();
    m.base_setup = make_setup(b.rd, b.m_plus, b.m_minus, b.q, b.c, check);

    m.h_to_base = Matrix(d, r);
    for (int i = 0; i < r; ++i) {
        m.h_to_base(g->h_index(i), i) = 1;
        if (b.doubled) m.h_to_base(g->dim + g->h_index(i), i) = 1;
    }

    std::shared_ptr<const FactorizableData> rd;
    Subspace mp, mm, q, c;
    if (!is_x_model(s)) {
        m.slots = n;
        rd = std::make_shared<const FactorizableData>(build_r_n(*b.rd, n));
        mp = detail::assemble(detail::m_n_pieces(b, n, true));
        mm = detail::assemble(detail::m_n_pieces(b, n, false));
        q = direct_sum(std::vector<Subspace>(n, b.q));
        c = direct_sum(std::vector<Subspace>(n, b.c));
        m.t_embed = Matrix(n * d, r);
        for (int j = 0; j < n; ++j) m.t_embed.set_block(j * d, 0, m.h_to_base);
    } else {
        m.slots = n + 1;
        rd = std::make_shared<const FactorizableData>(build_r_angle(*b.rd, n));
        auto pp = detail::m_n_pieces(b, n, true), pm = detail::m_n_pieces(b, n, false);
        if (n % 2 == 0) {
            pp.push_back({1, b.m_minus});
            pm.push_back({1, b.m_plus});
        } else {
            pp.push_back({1, b.m_plus});
            pm.push_back({1, b.m_minus});
        }
        mp = detail::assemble(pp);
        mm = detail::assemble(pm);
        std::vector<Subspace> qs(n - 1, b.q), cs(n - 1, b.c);
        qs.push_back(diagonal(d));
        cs.push_back(Subspace::zero(2 * d));
        q = direct_sum(qs);
        c = direct_sum(cs);
        m.t_embed = Matrix((n + 1) * d, r);
        for (int j = 0; j < n; ++j) m.t_embed.set_block(j * d, 0, m.h_to_base);
    }
    m.setup = make_setup(rd, mp, mm, q, c, check);
    if (check && !m.setup.t.contains(image(m.t_embed)))
        throw std::logic_error("torus embedding is not inside m_+ cap m_-");
    return m;
}

// Leaf index -> c = (c_1, ..., c_{n+1}) as base Ad-matrices; weyl_ad maps W to Ad of a representative.
// For FFt the last entry is (Ad_c, id) for a class representative c, supplied by the caller.
inline std::vector<Matrix> leaf_c(const SeriesModel& m, const LeafDescriptor& d,
                                  const std::function<Matrix(const WeylElement&)>& weyl_ad,
                                  const std::optional<Matrix>& class_ad = std::nullopt) {
    std::vector<Matrix> c;
    const std::size_t gd = m.base.g->dim;
    Matrix idg = Matrix::identity(gd);
    for (int j = 0; j < d.n; ++j) {
        if (!m.base.doubled)
            c.push_back(weyl_ad(d.u[j]));
        else
            c.push_back(block_diag({weyl_ad(d.u[j]), weyl_ad((*d.v)[j])}));
    }
    switch (d.series) {
        case Series::F:
        case Series::Ftilde: c.push_back(weyl_ad(*d.w)); break;
        case Series::FF: c.push_back(block_diag({weyl_ad(*d.w), idg})); break;
        case Series::FFtilde:
            if (!class_ad) throw std::invalid_argument("FFt needs a class representative");
            c.push_back(block_diag({*class_ad, idg}));
            break;
    }
    return c;
}

// Ad of a Weyl representative through exp(ad e) exp(-ad f) exp(ad e) along the canonical word.
inline Matrix weyl_ad_symbolic(const LieAlgebra& g, const WeylElement& w) {
    Matrix a = Matrix::identity(g.dim);
    for (int s : w.word()) a = a * ad_simple_reflection(g, s);
    return a;
}

// Degree of each basis vector of a^k under the height grading (h: 0, e_a: ht a, f_a: -ht a).
inline std::vector<int> height_grades(const LieAlgebra& g, std::size_t copies) {
    std::vector<int> one(g.dim, 0);
    const auto& rs = *g.roots;
    for (int k = 0; k < rs.num_positive(); ++k) {
        one[g.e_index(k)] = rs.height(rs.positive_roots[k]);
        one[g.f_index(k)] = -rs.height(rs.positive_roots[k]);
    }
    std::vector<int> out;
    for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), one.begin(), one.end());
    return out;
}

}  // namespace tleaf
