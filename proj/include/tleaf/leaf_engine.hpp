#pragma once

#include "rmat.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace tleaf {

struct AdmissibleSetup {
    std::shared_ptr<const FactorizableData> rd;
    Subspace m_plus, m_minus, q, t, c;
    Subspace q_perp, m_plus_perp, m_minus_perp;
    Matrix p_c;  // a -> a, onto c along c^perp
    Matrix p_t;  // a (+) a -> a, (X1, X2) -> -r_flat_minus X1 + r_flat_plus X2
    std::string assumptions = "Q_y connected; M_+ cap M_- connected";

    std::size_t dim() const { return rd->dim(); }
    const Matrix& form() const { return rd->form; }
};

namespace detail {

// <[x,y], z> = 0 for x,y in s and z in target
inline bool bracket_into(const LieAlgebra& g, const Subspace& s, const Subspace& target) {
    auto v = s.vectors();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!target.contains(g.bracket(v[i], v[j]))) return false;
    return true;
}

inline Matrix projection_onto(const Subspace& c, const Matrix& form) {
    const std::size_t n = form.rows();
    if (c.dim() == 0) return Matrix(n, n);
    Matrix cb = c.columns();
    Matrix gram = cb.transpose() * form * cb;
    return cb * inverse(gram) * cb.transpose() * form;
}

}  // namespace detail

// Validates the r-admissibility and the splitting q = c + q^perp; throws on violation.
inline AdmissibleSetup make_setup(std::shared_ptr<const FactorizableData> rd, const Subspace& m_plus,
                                  const Subspace& m_minus, const Subspace& q, const Subspace& c, bool check = true) {
    AdmissibleSetup s;
    s.rd = rd;
    s.m_plus = m_plus;
    s.m_minus = m_minus;
    s.q = q;
    s.c = c;
    const Matrix& F = rd->form;
    s.q_perp = perp(q, F);
    s.m_plus_perp = perp(m_plus, F);
    s.m_minus_perp = perp(m_minus, F);
    s.t = intersect(m_plus, m_minus);
    const std::size_t n = rd->dim();
    s.p_t = hstack(-rd->r_flat_minus, rd->r_flat_plus);
    if (check) {
        const LieAlgebra& g = rd->alg();
        if (!m_plus.contains(rd->f_plus) || !m_minus.contains(rd->f_minus))
            throw std::invalid_argument("setup: f_+ or f_- not contained in m_+ or m_-");
        if (!detail::bracket_into(g, m_plus, s.m_plus_perp) || !detail::bracket_into(g, m_minus, s.m_minus_perp))
            throw std::invalid_argument("setup: [m, m] not contained in m^perp");
        if (!q.contains(s.q_perp) || !detail::bracket_into(g, q, s.q_perp))
            throw std::invalid_argument("setup: [q, q] in q^perp in q fails");
        if ((m_plus + m_minus).dim() != n) throw std::invalid_argument("setup: m_+ + m_- is not the whole algebra");
        if (intersect(c, s.q_perp).dim() != 0 || (c + s.q_perp) != q)
            throw std::invalid_argument("setup: q = c + q^perp fails");
    }
    s.p_c = detail::projection_onto(c, F);
    if (check) {
        // p_t on the diagonal of t is the identity; p_t vanishes on l_r
        for (auto& x : s.t.vectors()) {
            Vec xx(x);
            xx.insert(xx.end(), x.begin(), x.end());
            if (s.p_t * xx != x) throw std::invalid_argument("setup: p_t is not the identity on t_diag");
        }
        for (auto& x : rd->l_r.vectors())
            if (!is_zero(s.p_t * x)) throw std::invalid_argument("setup: p_t does not vanish on l_r");
    }
    return s;
}

// Points y_pm = g_pm . y_0 given by the block Ad-matrices of g_pm on the ambient algebra.
struct StabilizerPair {
    Matrix ad_plus, ad_minus;
    Subspace q_plus, q_minus;
    Matrix transport;  // Ad_{g_+ g_-^{-1}}
    bool chart = false;  // both g_pm normalize c
};

inline Matrix ad_inverse(const AdmissibleSetup& s, const Matrix& a) {
    return orthogonal_inverse(a, s.rd->form, s.rd->form_inv);
}

inline StabilizerPair make_pair(const AdmissibleSetup& s, const Matrix& ad_plus, const Matrix& ad_minus) {
    StabilizerPair p;
    p.ad_plus = ad_plus;
    p.ad_minus = ad_minus;
    p.q_plus = image(ad_plus, s.q);
    p.q_minus = image(ad_minus, s.q);
    p.transport = ad_plus * ad_inverse(s, ad_minus);
    p.chart = image(ad_plus, s.c) == s.c && image(ad_minus, s.c) == s.c;
    return p;
}

inline StabilizerPair make_diagonal_pair(const AdmissibleSetup& s, const Matrix& ad) { return make_pair(s, ad, ad); }

// (A_+ (+) A_-) applied to {(x + z, x) : x in q, z in q^perp}; needs no chart.
inline Subspace lagrangian_pair_general(const AdmissibleSetup& s, const StabilizerPair& p) {
    const std::size_t n = s.dim();
    std::vector<Vec> rows;
    for (auto& x : s.q.vectors()) {
        Vec v(2 * n);
        for (std::size_t i = 0; i < n; ++i) v[i] = v[n + i] = x[i];
        rows.push_back(v);
    }
    for (auto& z : s.q_perp.vectors()) {
        Vec v(2 * n);
        for (std::size_t i = 0; i < n; ++i) v[i] = z[i];
        rows.push_back(v);
    }
    Subspace l0 = Subspace::span(rows, 2 * n);
    return image(block_diag({p.ad_plus, p.ad_minus}), l0);
}

// {(x_+, x_-) in q_+ (+) q_- : p_c x_+ = transport p_c x_-}; requires the chart.
inline Subspace lagrangian_pair_chart(const AdmissibleSetup& s, const StabilizerPair& p) {
    if (!p.chart) throw std::invalid_argument("lagrangian_pair_chart: points do not normalize c");
    const std::size_t n = s.dim();
    Subspace qq = direct_sum(p.q_plus, p.q_minus);
    Matrix constraint = hstack(s.p_c, -(p.transport * s.p_c));
    return kernel(constraint, qq);
}

inline Subspace lagrangian_pair(const AdmissibleSetup& s, const StabilizerPair& p) {
    return p.chart ? lagrangian_pair_chart(s, p) : lagrangian_pair_general(s, p);
}

inline bool is_lagrangian(const Subspace& l, const Matrix& double_form) {
    return 2 * l.dim() == l.ambient() && perp(l, double_form) == l;
}

struct RankResult {
    int via_lr;      // orbit_dim - dim(l_r cap l_yy)
    int via_corank;  // orbit_dim - dim(q_y^perp cap r_flat_plus^{-1} q_y)
};

inline RankResult rank_at_point(const AdmissibleSetup& s, const Matrix& ad, int orbit_dim) {
    StabilizerPair p = make_diagonal_pair(s, ad);
    Subspace lyy = lagrangian_pair(s, p);
    int a = orbit_dim - (int)intersect(s.rd->l_r, lyy).dim();
    Subspace qperp = image(ad, s.q_perp);
    int b = orbit_dim - (int)intersect(qperp, preimage(s.rd->r_flat_plus, p.q_plus)).dim();
    if (a < 0 || b < 0) throw std::logic_error("rank_at_point: negative rank, inconsistent orbit_dim");
    return {a, b};
}

// Tangent dimension of O_+ cap O_- at y (transversal intersection).
inline int leaf_dim_at_point(const AdmissibleSetup& s, const Matrix& ad) {
    Subspace qy = image(ad, s.q);
    return (int)intersect(s.m_plus + qy, s.m_minus + qy).dim() - (int)qy.dim();
}

// delta via the projection of (m_+^perp (+) m_-^perp) cap l_{y+,y-} to q_+/q_+^perp.
inline int delta_pair(const AdmissibleSetup& s, const StabilizerPair& p) {
    const std::size_t n = s.dim();
    Subspace l = lagrangian_pair(s, p);
    Subspace S = intersect(direct_sum(s.m_plus_perp, s.m_minus_perp), l);
    Matrix first = hstack(Matrix::identity(n), Matrix(n, n));
    Subspace qpp = image(p.ad_plus, s.q_perp);
    return (int)(image(first, S) + qpp).dim() - (int)qpp.dim();
}

// delta via the intersection of the two images in q_0/q_0^perp, with y_0 = g_0 . base.
inline int delta_pair_quotient(const AdmissibleSetup& s, const StabilizerPair& p, const Matrix& ad0) {
    Subspace q0 = image(ad0, s.q), q0p = image(ad0, s.q_perp);
    Matrix to0_plus = ad0 * ad_inverse(s, p.ad_plus);
    Matrix to0_minus = ad0 * ad_inverse(s, p.ad_minus);
    Subspace Sp = intersect(image(to0_plus, s.m_plus_perp), q0);
    Subspace Sm = intersect(image(to0_minus, s.m_minus_perp), q0);
    return (int)intersect(Sp + q0p, Sm + q0p).dim() - (int)q0p.dim();
}

// p_t((m_+ (+) m_-) cap l_{y+,y-}), a subspace of t.
inline Subspace stabilizer_pair(const AdmissibleSetup& s, const StabilizerPair& p) {
    Subspace l = lagrangian_pair(s, p);
    Subspace S = intersect(direct_sum(s.m_plus, s.m_minus), l);
    Subspace out = image(s.p_t, S);
    if (!s.t.contains(out)) throw std::logic_error("stabilizer_pair: image not inside t");
    return out;
}

// {x in t : (x, x) in l_r + l_{y,y}}
inline Subspace stabilizer_point_lr(const AdmissibleSetup& s, const Matrix& ad) {
    const std::size_t n = s.dim();
    StabilizerPair p = make_diagonal_pair(s, ad);
    Subspace L = s.rd->l_r + lagrangian_pair(s, p);
    Matrix diag = vstack(Matrix::identity(n), Matrix::identity(n));
    return intersect(s.t, preimage(diag, L));
}

// V_c for Y_n(c): (m_+ cap Ad_{c1} q) (+) (m_- cap Ad_{c_{n+1}} q) with p_c x_+ = Ad_{c1..cn c_{n+1}^{-1}} p_c x_-.
// c holds Ad-matrices of c_1..c_{n+1} on the base algebra.
inline Subspace vc_subspace_zn(const AdmissibleSetup& s, const std::vector<Matrix>& c) {
    const std::size_t n = s.dim();
    Matrix prod = Matrix::identity(n);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) prod = prod * c[i];
    prod = prod * ad_inverse(s, c.back());
    Subspace A = intersect(s.m_plus, image(c.front(), s.q));
    Subspace B = intersect(s.m_minus, image(c.back(), s.q));
    Matrix constraint = hstack(s.p_c, -(prod * s.p_c));
    return kernel(constraint, direct_sum(A, B));
}

// V_c for X_n(c): quadruples (x_+, x_-, z_+, Ad_{c_{n+1}^{-1}} x_-) in a^4.
inline Subspace vc_subspace_dn(const AdmissibleSetup& s, const std::vector<Matrix>& c) {
    const std::size_t n = s.dim();
    const std::size_t k = c.size() - 1;
    Matrix prod = Matrix::identity(n);
    for (std::size_t i = 0; i < k; ++i) prod = prod * c[i];
    Subspace X = intersect(s.m_plus, image(c.front(), s.q));
    Subspace Xm = intersect(s.m_minus, image(c.back(), s.m_minus));
    Subspace Z = intersect(s.m_plus, image(ad_inverse(s, c[k - 1]), s.q));
    // parameters (x_+, x_-, z_+) subject to p_c x_+ = prod p_c z_+
    Subspace dom = direct_sum({X, Xm, Z});
    Matrix constraint = hstack(hstack(s.p_c, Matrix(n, n)), -(prod * s.p_c));
    Subspace par = kernel(constraint, dom);
    Matrix emb(4 * n, 3 * n);
    emb.set_block(0, 0, Matrix::identity(n));
    emb.set_block(n, n, Matrix::identity(n));
    emb.set_block(2 * n, 2 * n, Matrix::identity(n));
    emb.set_block(3 * n, n, ad_inverse(s, c.back()));
    return image(emb, par);
}

inline Subspace stabilizer_from_vc_zn(const AdmissibleSetup& s, const Subspace& vc) { return image(s.p_t, vc); }

// (p_t (+) p_t)(V_c) inside t (+) t
inline Subspace stabilizer_from_vc_dn(const AdmissibleSetup& s, const Subspace& vc) {
    return image(block_diag({s.p_t, s.p_t}), vc);
}

}  // namespace tleaf
