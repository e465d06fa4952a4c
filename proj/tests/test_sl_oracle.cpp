#include "doctest.h"
#include "tleaf/sampler.hpp"
#include "tleaf/sl_oracle.hpp"
#include "tleaf/verify.hpp"

using namespace tleaf;

namespace {

Matrix random_sl(int m, ParamSource& ps) {
    return random_borel(m, ps, -1) * random_borel(m, ps, +1) * random_borel(m, ps, -1);
}

}  // namespace

TEST_CASE("basis map agrees with the abstract bracket table") {
    for (int m : {2, 3, 4}) CHECK(SLRealization(m).verify_basis_map());
}

TEST_CASE("Ad is a homomorphism preserving the form") {
    SLRealization sl(3);
    ParamSource ps(5);
    const Matrix& F = sl.algebra()->form;
    for (int k = 0; k < 10; ++k) {
        Matrix a = random_sl(3, ps), b = random_sl(3, ps);
        REQUIRE(SLRealization::det(a) == Rational(1));
        Matrix A = sl.adjoint_matrix(a), B = sl.adjoint_matrix(b);
        CHECK(sl.adjoint_matrix(a * b) == A * B);
        CHECK(A.transpose() * F * A == F);
        // Ad_g ad_x Ad_g^{-1} = ad_{Ad_g x}
        Vec x = sl.algebra()->unit(k % 8);
        CHECK(A * sl.algebra()->ad(x) * inverse(A) == sl.algebra()->ad(A * x));
    }
    CHECK(sl.adjoint_matrix(Matrix::identity(3)) == Matrix::identity(8));
}

TEST_CASE("Ad of torus and Weyl representatives in SL2") {
    SLRealization sl(2);
    const auto& g = *sl.algebra();
    const int h = g.h_index(0), e = g.e_index(0), f = g.f_index(0);
    Matrix t{{3, 0}, {0, Rational(1, 3)}};
    Matrix at = sl.adjoint_matrix(t);
    CHECK(at(e, e) == Rational(9));
    CHECK(at(f, f) == Rational(1, 9));
    CHECK(at(h, h) == Rational(1));

    Matrix sd{{0, 1}, {-1, 0}};
    CHECK(sl.sdot(0) == sd);
    Matrix as = sl.adjoint_matrix(sd);
    CHECK(as * g.unit(h) == Vec{-1, 0, 0});
    // sdot E_12 sdot^{-1} = -E_21
    CHECK(as * g.unit(e) == Vec{0, 0, -1});
    CHECK(as * g.unit(f) == Vec{0, -1, 0});
    CHECK(as == weyl_ad_symbolic(g, sl.weyl().simple(0)));
}

TEST_CASE("Weyl representatives") {
    SLRealization sl(3);
    const WeylGroup& W = sl.weyl();
    CHECK(sl.weyl_representative(W.identity()) == Matrix::identity(3));
    CHECK(sl.weyl_representative(W.simple(0)) == Matrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}});
    CHECK(sl.weyl_representative(W.longest()) == sl.sdot(0) * sl.sdot(1) * sl.sdot(0));
    for (int m : {3, 4}) {
        SLRealization s(m);
        const auto& g = *s.algebra();
        const int r = g.rank();
        for (auto& w : s.weyl().elements()) {
            Matrix ad = s.adjoint_matrix(s.weyl_representative(w));
            CHECK(ad == weyl_ad_symbolic(g, w));
            // induced action on h is M_w
            CHECK(ad.block(0, 0, r, r) == w.matrix());
            CHECK(ad.block(r, 0, g.dim - r, r).is_zero());
        }
    }
}

TEST_CASE("cell membership") {
    SLRealization s2(2);
    auto c = s2.cell_of(Matrix::identity(2));
    CHECK(c.in_B == s2.weyl().identity());
    CHECK(c.in_Bminus == s2.weyl().identity());
    auto c0 = s2.cell_of(Matrix{{0, 1}, {-1, 0}});
    CHECK(c0.in_B == s2.weyl().simple(0));
    CHECK(c0.in_Bminus == s2.weyl().simple(0));
    CHECK_THROWS_AS(s2.cell_of(Matrix{{1, 1}, {1, 1}}), std::invalid_argument);

    SLRealization sl(3);
    ParamSource ps(2024);
    for (auto& w : sl.weyl().elements()) {
        Matrix wd = sl.weyl_representative(w);
        for (int k = 0; k < 20; ++k) {
            Matrix g = random_borel(3, ps, +1) * wd * random_borel(3, ps, +1);
            CHECK(sl.cell_B(g) == w);
            Matrix gm = random_borel(3, ps, -1) * wd * random_borel(3, ps, -1);
            CHECK(sl.cell_Bminus(gm) == w);
            Matrix gmb = random_borel(3, ps, -1) * wd * random_borel(3, ps, +1);
            CHECK(sl.cell_BminusB(gmb) == w);
        }
    }
}

TEST_CASE("conjugacy class dimensions") {
    SLRealization sl(2);
    CHECK(sl.class_dim(Matrix::identity(2)) == 0);
    CHECK(sl.class_dim(Matrix{{2, 0}, {0, Rational(1, 2)}}) == 2);
    CHECK(sl.class_dim(Matrix{{1, 1}, {0, 1}}) == 2);
    CHECK(sl.class_dim(Matrix{{-1, 0}, {0, -1}}) == 0);

    SLRealization s3(3);
    auto reps = standard_class_reps(3);
    CHECK(s3.class_dim(reps[0].rep) == 0);
    CHECK(s3.class_dim(reps[1].rep) == 6);
    CHECK(s3.class_dim(reps[2].rep) == 6);
    Matrix minimal = Matrix::identity(3);
    minimal(0, 2) = 1;
    CHECK(s3.class_dim(minimal) == 4);
    ParamSource ps(9);
    for (auto& cr : reps)
        for (int k = 0; k < 5; ++k) {
            Matrix g = random_sl(3, ps);
            CHECK(s3.class_dim(g * cr.rep * inverse(g)) == s3.class_dim(cr.rep));
        }
}

TEST_CASE("word products land in the expected cells") {
    SLRealization sl(3);
    ParamSource ps(77);
    for (auto& u : sl.weyl().elements())
        for (auto& v : sl.weyl().elements()) {
            Matrix x = double_bruhat_point(sl, u, v, ps);
            auto c = sl.cell_of(x);
            CHECK(c.in_B == u);
            CHECK(c.in_Bminus == v);
        }
}

TEST_CASE("sampled points lie in their strata") {
    SLRealization s2(2);
    auto g2 = s2.algebra();
    const WeylGroup& W = s2.weyl();
    SeriesModel F1 = build_model(Series::F, g2, 1);
    auto open = leaf_F(W, {W.simple(0)}, W.identity());
    LeafPoint p = sample_leaf_point(s2, F1, open, 3);
    CHECK(s2.cell_B(p.g[0]) == W.simple(0));
    CHECK(s2.cell_BminusB(p.g[0]) == W.identity());
    auto base = leaf_F(W, {W.identity()}, W.identity());
    LeafPoint b1 = sample_leaf_point(s2, F1, base, 1), b2 = sample_leaf_point(s2, F1, base, 2);
    // the leaf is the single point eB: both samples have the same stabilizer subalgebra
    CHECK(image(b1.ambient_ad, F1.setup.q) == F1.setup.q);
    CHECK(image(b2.ambient_ad, F1.setup.q) == F1.setup.q);

    SeriesModel Ft1 = build_model(Series::Ftilde, g2, 1);
    auto ss = leaf_Ftilde(W, {W.simple(0)}, W.simple(0));
    LeafPoint q = sample_leaf_point(s2, Ft1, ss, 4);
    auto c = s2.cell_of(q.g[0]);
    CHECK(c.in_B == W.simple(0));
    CHECK(c.in_Bminus == W.simple(0));
    CHECK(q.attempts <= 1000);
}

TEST_CASE("sampling is deterministic in the seed") {
    SLRealization sl(3);
    const WeylGroup& W = sl.weyl();
    SeriesModel F2 = build_model(Series::F, sl.algebra(), 2);
    auto d = leaf_F(W, {W.longest(), W.parse("s1")}, W.parse("s2"));
    LeafPoint a = sample_leaf_point(sl, F2, d, 42), b = sample_leaf_point(sl, F2, d, 42);
    CHECK(a.ambient_ad == b.ambient_ad);
    CHECK(a.g == b.g);
}
