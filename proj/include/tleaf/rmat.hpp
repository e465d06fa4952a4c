#pragma once

#include "lie_core.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace tleaf {

// r = sum_ij C_ij x_i (x) x_j
struct RTensor {
    std::shared_ptr<const LieAlgebra> alg;
    Matrix coeff;

    RTensor transpose21() const { return {alg, coeff.transpose()}; }
};

struct FactorizableData {
    RTensor r;
    Matrix r_plus, r_minus;            // dual-basis chart: xi -> g
    Matrix r_flat_plus, r_flat_minus;  // g -> g
    Matrix form, form_inv;             // <,> associated with r, and its inverse (= r_plus - r_minus)
    Subspace f_plus, f_minus;
    Subspace l_r;  // in a (+) a
    Matrix double_form;  // diag(form, -form)

    const LieAlgebra& alg() const { return *r.alg; }
    std::size_t dim() const { return r.alg->dim; }
};

// Sparse 3-tensor keyed by flattened (p,q,s).
using Tensor3 = std::map<std::size_t, Rational>;

inline Tensor3 cyb(const RTensor& r) {
    const LieAlgebra& g = *r.alg;
    const std::size_t n = g.dim;
    struct Entry {
        std::size_t a, b;
        Rational c;
    };
    std::vector<Entry> nz;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!r.coeff(a, b).is_zero()) nz.push_back({a, b, r.coeff(a, b)});
    Tensor3 t;
    auto put = [&](std::size_t p, std::size_t q, std::size_t s, const Rational& v) {
        std::size_t key = (p * n + q) * n + s;
        Rational& x = t[key];
        x += v;
        if (x.is_zero()) t.erase(key);
    };
    // [r12,r13] + [r12,r23] + [r13,r23], r = sum C_ab x_a (x) x_b
    for (auto& e1 : nz)
        for (auto& e2 : nz) {
            Rational c = e1.c * e2.c;
            for (auto& [k, v] : g.br(e1.a, e2.a)) put(k, e1.b, e2.b, c * v);
            for (auto& [k, v] : g.br(e1.b, e2.a)) put(e1.a, k, e2.b, c * v);
            for (auto& [k, v] : g.br(e1.b, e2.b)) put(e1.a, e2.a, k, c * v);
        }
    return t;
}

// r + r^21 is ad-invariant: A S + S A^T = 0 for ad of every basis element.
inline bool symmetric_part_invariant(const RTensor& r) {
    const LieAlgebra& g = *r.alg;
    Matrix s = r.coeff + r.coeff.transpose();
    for (std::size_t i = 0; i < g.dim; ++i) {
        Matrix a = g.ad(g.unit(i));
        if (!(a * s + s * a.transpose()).is_zero()) return false;
    }
    return true;
}

inline bool is_quasitriangular(const RTensor& r) { return cyb(r).empty() && symmetric_part_invariant(r); }

inline Subspace diagonal(std::size_t n) {
    Matrix m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, n + i) = 1;
    return Subspace::span_rows(m);
}

inline FactorizableData make_factorizable(const RTensor& r) {
    FactorizableData d;
    d.r = r;
    const Matrix& C = r.coeff;
    // r^#(xi) = sum_ij C_ij xi(x_i) x_j, so r_plus = C^T and r_minus = -(r^21)^# = -C.
    d.r_plus = C.transpose();
    d.r_minus = -C;
    d.form_inv = d.r_plus - d.r_minus;
    d.form = inverse(d.form_inv);  // throws if not factorizable
    d.r_flat_plus = d.r_plus * d.form;
    d.r_flat_minus = d.r_minus * d.form;
    d.f_plus = image(d.r_flat_plus);
    d.f_minus = image(d.r_flat_minus);
    d.l_r = Subspace::span_rows(vstack(d.r_flat_plus, d.r_flat_minus).transpose());
    d.double_form = block_diag({d.form, -d.form});
    return d;
}

// Standard r-matrix: (1/2) sum (B^{-1})_ij h_i (x) h_j + sum E_-a (x) E_a.
inline FactorizableData build_r_st(std::shared_ptr<const LieAlgebra> g) {
    const int r = g->rank();
    const int np = g->roots->num_positive();
    Matrix C(g->dim, g->dim);
    Matrix B = g->form.block(0, 0, r, r);
    Matrix Binv = inverse(B);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) C(i, j) = Rational(1, 2) * Binv(i, j);
    for (int k = 0; k < np; ++k) C(g->f_index(k), g->e_index(k)) = 1;
    return make_factorizable({g, C});
}

// r^(n) on g^n: odd slots r, even slots -r^21, cross terms sum_{j<k} (y_i)_j ^ (x_i)_k.
inline FactorizableData build_r_n(const FactorizableData& base, int n) {
    if (n < 1) throw std::invalid_argument("build_r_n: n must be >= 1");
    if (n == 1) return base;
    const Matrix& C = base.r.coeff;
    const std::size_t d = C.rows();
    Matrix Ct = C.transpose();
    Matrix big(n * d, n * d);
    Matrix negCt = -Ct;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const Matrix& blk = j == k ? (j % 2 == 0 ? C : negCt) : (j < k ? negCt : C);
            big.set_block(j * d, k * d, blk);
        }
    auto alg = std::make_shared<const LieAlgebra>(direct_power(base.alg(), n));
    return make_factorizable({alg, big});
}

// r^<n+1> on g^{n+1}: (r^(n), 0) + (0, r^21) for n even, (0, -r) for n odd.
inline FactorizableData build_r_angle(const FactorizableData& base, int n) {
    if (n < 1) throw std::invalid_argument("build_r_angle: n must be >= 1");
    FactorizableData rn = build_r_n(base, n);
    const Matrix& C = base.r.coeff;
    Matrix last = (n % 2 == 0) ? C.transpose() : -C;
    Matrix big = block_diag({rn.r.coeff, last});
    auto alg = std::make_shared<const LieAlgebra>(direct_power(base.alg(), n + 1));
    return make_factorizable({alg, big});
}

struct FSubalgebras {
    Subspace f_plus, f_minus;
};
inline FSubalgebras f_subalgebras(const FactorizableData& rd) { return {rd.f_plus, rd.f_minus}; }

// Predicted images of r^(n)_pm assembled from l_r, f_pm and diagonals.
// n = 2m: f~_+ = tau(l_r + diag^{m-1}), f~_- = diag^m, tau moving slot 2 to the end.
// n = 2m+1: f~_+ = f_+ + diag^m, f~_- = diag^m + f_-.
inline FSubalgebras tilde_images_expected(const FactorizableData& base, int n) {
    const std::size_t d = base.dim();
    Subspace dg = diagonal(d);
    std::vector<Subspace> plus, minus;
    if (n % 2 == 0) {
        plus.push_back(base.l_r);
        for (int k = 1; k < n / 2; ++k) plus.push_back(dg);
        for (int k = 0; k < n / 2; ++k) minus.push_back(dg);
        Subspace pre = direct_sum(plus);
        // tau(x_1, x_2, ..., x_n) = (x_1, x_3, ..., x_n, x_2)
        std::vector<int> src;  // target slot j takes source slot src[j]
        src.push_back(0);
        for (int j = 2; j < n; ++j) src.push_back(j);
        src.push_back(1);
        Matrix tau(n * d, n * d);
        for (int j = 0; j < n; ++j)
            for (std::size_t i = 0; i < d; ++i) tau(j * d + i, src[j] * d + i) = 1;
        return {image(tau, pre), direct_sum(minus)};
    }
    plus.push_back(base.f_plus);
    for (int k = 0; k < n / 2; ++k) {
        plus.push_back(dg);
        minus.push_back(dg);
    }
    minus.push_back(base.f_minus);
    return {direct_sum(plus), direct_sum(minus)};
}

// Closed under bracket.
inline bool is_subalgebra(const LieAlgebra& g, const Subspace& s) {
    auto v = s.vectors();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!s.contains(g.bracket(v[i], v[j]))) return false;
    return true;
}

// Algebra g (+) g with its own structure constants (for the doubled series).
inline std::shared_ptr<const LieAlgebra> doubled(const LieAlgebra& g) {
    return std::make_shared<const LieAlgebra>(direct_power(g, 2));
}

}  // namespace tleaf
