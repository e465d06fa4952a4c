#include "doctest.h"
#include "tleaf/rmat.hpp"

using namespace tleaf;

namespace {

std::shared_ptr<const LieAlgebra> alg(const char* t) {
    return std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(t)));
}

// r_st^(2) written out by hand in slot coordinates: with K = (1/2) B^{-1} on the Cartan part,
// sum K_ij (h_i, h_i) (x) (h_j, -h_j) + sum_a (E_a, E_a) (x) (0, -E_-a) + (E_-a, E_-a) (x) (E_a, 0).
Matrix r_st_2_by_hand(const LieAlgebra& g) {
    const std::size_t d = g.dim;
    const int r = g.rank(), np = g.roots->num_positive();
    Matrix K = Rational(1, 2) * inverse(g.form.block(0, 0, r, r));
    Matrix C(2 * d, 2 * d);
    auto add = [&](std::size_t a, std::size_t b, const Rational& v) { C(a, b) += v; };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            add(i, j, K(i, j));
            add(i, d + j, -K(i, j));
            add(d + i, j, K(i, j));
            add(d + i, d + j, -K(i, j));
        }
    for (int k = 0; k < np; ++k) {
        std::size_t e = g.e_index(k), f = g.f_index(k);
        add(e, d + f, -1);
        add(d + e, d + f, -1);
        add(f, e, 1);
        add(d + f, e, 1);
    }
    return C;
}

}  // namespace

TEST_CASE("CYB examples") {
    auto g = alg("A1");
    CHECK(cyb({g, Matrix(3, 3)}).empty());
    auto st = build_r_st(g);
    // (1/4) h (x) h + f (x) e
    CHECK(st.r.coeff(0, 0) == Rational(1, 4));
    CHECK(st.r.coeff(g->f_index(0), g->e_index(0)) == Rational(1));
    CHECK(cyb(st.r).empty());
    RTensor bad = st.r;
    bad.coeff(0, 0) += Rational(1, 3);
    CHECK_FALSE(cyb(bad).empty());
}

TEST_CASE("r_st is quasitriangular and factorizable") {
    for (const char* t : {"A1", "A2", "A3", "B2", "G2"}) {
        auto st = build_r_st(alg(t));
        CHECK_MESSAGE(is_quasitriangular(st.r), t);
        CHECK(st.form == st.alg().form);
    }
}

TEST_CASE("f subalgebras of r_st are the Borels") {
    auto g = alg("A2");
    auto st = build_r_st(g);
    auto f = f_subalgebras(st);
    CHECK(f.f_plus == g->borel_pos);
    CHECK(f.f_minus == g->borel_neg);
    CHECK(f.f_plus.dim() == 5);
    CHECK(st.l_r.dim() == g->dim);
    CHECK(intersect(st.l_r, diagonal(g->dim)).dim() == 0);
}

TEST_CASE("r^(n) construction") {
    auto g = alg("A1");
    auto st = build_r_st(g);
    CHECK(build_r_n(st, 1).r.coeff == st.r.coeff);
    auto r2 = build_r_n(st, 2);
    CHECK(is_quasitriangular(r2.r));
    CHECK(build_r_n(build_r_st(alg("A2")), 2).r.coeff == r_st_2_by_hand(*alg("A2")));
    CHECK(r2.r.coeff == r_st_2_by_hand(*g));

    // f_+ = l_st = {(x_+ + x_0, -x_0 + x_-)}, f_- = g_diag
    std::vector<Vec> lst;
    lst.push_back({0, 1, 0, 0, 0, 0});
    lst.push_back({1, 0, 0, -1, 0, 0});
    lst.push_back({0, 0, 0, 0, 0, 1});
    CHECK(r2.f_plus == Subspace::span(lst, 6));
    CHECK(r2.f_minus == diagonal(3));
    CHECK_THROWS(build_r_n(st, 0));
}

TEST_CASE("r^<n+1> last slot") {
    auto g = alg("A1");
    auto st = build_r_st(g);
    const std::size_t d = g->dim;
    auto a2 = build_r_angle(st, 2);
    CHECK(a2.r.coeff.block(2 * d, 2 * d, d, d) == st.r.coeff.transpose());
    CHECK(a2.r.coeff.block(0, 0, 2 * d, 2 * d) == build_r_n(st, 2).r.coeff);
    CHECK(a2.r.coeff.block(0, 2 * d, 2 * d, d).is_zero());
    auto a3 = build_r_angle(st, 3);
    CHECK(a3.r.coeff.block(3 * d, 3 * d, d, d) == -st.r.coeff);
    CHECK(is_quasitriangular(a2.r));
    CHECK(is_quasitriangular(a3.r));
}

TEST_CASE("quasitriangularity of the series r-matrices") {
    for (const char* t : {"A1", "A2"}) {
        auto st = build_r_st(alg(t));
        for (int n : {2, 3, 4}) CHECK_MESSAGE(is_quasitriangular(build_r_n(st, n).r), t << " n=" << n);
        for (int n : {2, 3}) CHECK_MESSAGE(is_quasitriangular(build_r_angle(st, n).r), t << " <n+1> n=" << n);
    }
}

TEST_CASE("images of r^(n)_pm") {
    for (const char* t : {"A1", "A2"}) {
        auto st = build_r_st(alg(t));
        for (int n = 2; n <= 5; ++n) {
            auto rn = build_r_n(st, n);
            auto ex = tilde_images_expected(st, n);
            CHECK_MESSAGE(rn.f_plus == ex.f_plus, t << " n=" << n);
            CHECK_MESSAGE(rn.f_minus == ex.f_minus, t << " n=" << n);
            CHECK(is_subalgebra(rn.alg(), rn.f_plus));
            CHECK(is_subalgebra(rn.alg(), rn.f_minus));
        }
    }
}

TEST_CASE("l_r is Lagrangian in the double") {
    for (const char* t : {"A2", "B2"}) {
        auto st = build_r_st(alg(t));
        const std::size_t d = st.dim();
        CHECK(st.l_r.dim() == d);
        Matrix lb = st.l_r.columns();
        CHECK((lb.transpose() * st.double_form * lb).is_zero());
    }
}
