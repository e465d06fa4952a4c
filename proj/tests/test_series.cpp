#include "doctest.h"
#include "tleaf/series.hpp"

#include <set>

using namespace tleaf;

namespace {

std::shared_ptr<const LieAlgebra> alg(const char* t) {
    return std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(t)));
}

std::vector<LeafDescriptor> all_leaves(Series s, const WeylGroup& W, int n) {
    switch (s) {
        case Series::F: return enumerate_F(W, n);
        case Series::FF: return enumerate_FF(W, n);
        case Series::Ftilde: return enumerate_Ftilde(W, n);
        case Series::FFtilde: {
            std::vector<LeafDescriptor> out;
            GroupDims gd = group_dims(W.root_system());
            // identity, subregular and regular class dimensions
            for (int cd : std::set<int>{0, std::max(0, 2 * gd.n_pos - 2), gd.g - gd.t}) {
                auto part = enumerate_FFtilde(W, n, cd);
                out.insert(out.end(), part.begin(), part.end());
            }
            return out;
        }
    }
    return {};
}

const Series kAll[] = {Series::F, Series::FF, Series::Ftilde, Series::FFtilde};

}  // namespace

TEST_CASE("series names") {
    for (Series s : kAll) CHECK(parse_series(series_name(s)) == s);
    CHECK_THROWS_AS(parse_series("G"), std::invalid_argument);
}

TEST_CASE("flag variety leaves in A1 and A2") {
    WeylGroup W(build_root_system("A1"));
    auto L = enumerate_F(W, 1);
    REQUIRE(L.size() == 3);
    auto s = W.simple(0), e = W.identity();
    CHECK((L[0].u[0] == e && *L[0].w == e && L[0].leaf_dim == 0 && L[0].symplectic_rank == 0));
    CHECK((L[1].u[0] == s && *L[1].w == e && L[1].leaf_dim == 1 && L[1].symplectic_rank == 0));
    CHECK(L[1].stabilizer.dim() == 0);
    CHECK((L[2].u[0] == s && *L[2].w == s && L[2].leaf_dim == 0 && L[2].symplectic_rank == 0));
    CHECK(L[0].stabilizer.dim() == 1);
    CHECK(L[2].stabilizer.dim() == 1);

    WeylGroup W2(build_root_system("A2"));
    CHECK(enumerate_F(W2, 1).size() == 19);
    auto open = leaf_F(W2, {W2.longest()}, W2.identity());
    CHECK(open.leaf_dim == 3);
    CHECK(open.symplectic_rank == 2);
    CHECK(open.stabilizer == Subspace::span({{1, -1}}, 2));

    auto L2 = enumerate_F(W, 2);
    CHECK(L2.size() == 7);
    auto ss = leaf_F(W, {s, s}, e);
    CHECK(ss.leaf_dim == 2);
    CHECK(ss.symplectic_rank == 2);
    CHECK(ss.stabilizer == Subspace::full(1));
}

TEST_CASE("FF examples") {
    WeylGroup W(build_root_system("A1"));
    auto s = W.simple(0), e = W.identity();
    auto d = leaf_FF(W, {s}, {s}, e);
    CHECK(d.leaf_dim == 2);
    CHECK(d.symplectic_rank == 2);
    CHECK_FALSE(wuv_nonempty(W, {e}, {e}, s));
    // each (u, v) contributes |[e, v^{-1} * u]| leaves
    auto L = enumerate_FF(W, 1);
    std::size_t want = 0;
    for (auto& u : W.elements())
        for (auto& v : W.elements()) {
            auto top = W.demazure(W.inverse(v), u);
            for (auto& w : W.elements()) want += W.bruhat_leq(w, top);
        }
    CHECK(L.size() == want);
    CHECK(enumerate_FF(WeylGroup(build_root_system("A2")), 1).size() == 167);
}

TEST_CASE("double Bruhat cell leaves") {
    WeylGroup W(build_root_system("A1"));
    auto s = W.simple(0), e = W.identity();
    auto ee = leaf_Ftilde(W, {e}, e);
    CHECK(ee.leaf_dim == 1);
    CHECK(ee.symplectic_rank == 0);
    auto sss = leaf_Ftilde(W, {s}, s);
    CHECK(sss.leaf_dim == 3);
    CHECK(sss.symplectic_rank == 2);
    CHECK(sss.stabilizer.dim() == 0);

    WeylGroup W2(build_root_system("A2"));
    auto w0e = leaf_Ftilde(W2, {W2.longest()}, W2.identity());
    CHECK(w0e.symplectic_rank == 4);
    CHECK(w0e.leaf_dim == 5);
    CHECK(w0e.stabilizer == Subspace::span({{1, 1}}, 2));
    for (auto& d : enumerate_Ftilde(W2, 1))
        CHECK(d.leaf_dim == W2.length(d.u[0]) + d.w->length() + 2);
}

TEST_CASE("conjugacy class leaves") {
    WeylGroup W(build_root_system("A1"));
    auto s = W.simple(0), e = W.identity();
    auto id = leaf_FFtilde(W, {e}, {e}, 0);
    CHECK(id.leaf_dim == 1);
    CHECK(id.symplectic_rank == 0);
    auto rs = leaf_FFtilde(W, {e}, {e}, 2);
    CHECK(rs.leaf_dim == 3);
    CHECK(rs.symplectic_rank == 2);
    auto ss = leaf_FFtilde(W, {s}, {s}, 0);
    CHECK(ss.leaf_dim == 3);
    CHECK(ss.symplectic_rank == 2);
    CHECK(ss.stabilizer.dim() == 0);
    CHECK_THROWS_AS(leaf_FFtilde(W, {e}, {e}, 3), std::invalid_argument);
    CHECK_THROWS_AS(leaf_FFtilde(W, {e}, {e}, 1), std::invalid_argument);  // class dimensions are even
    CHECK(enumerate_FFtilde(W, 1, 2).size() == 4);
}

TEST_CASE("ambient dimensions") {
    RootSystem a2 = build_root_system("A2");
    CHECK(ambient_dim(Series::F, a2, 2) == 6);
    CHECK(ambient_dim(Series::FF, a2, 2) == 12);
    CHECK(ambient_dim(Series::Ftilde, a2, 2) == 2 * 8 - 5);
    CHECK(ambient_dim(Series::FFtilde, a2, 2) == 2 * (2 * 8 - 5));
}

TEST_CASE("cap on the index set") {
    WeylGroup W(build_root_system("A2"));
    CHECK_THROWS_AS(enumerate_F(W, 8), CapExceeded);
    CHECK_THROWS_AS(enumerate_FF(W, 2, 1000), CapExceeded);
    CHECK_NOTHROW(enumerate_FF(W, 2, 1e5));
}

TEST_CASE("descriptor invariants over desk-scale enumerations") {
    for (const char* t : {"A1", "A2", "B2"}) {
        WeylGroup W(build_root_system(t));
        const int r = W.rank();
        for (Series s : kAll)
            for (int n : {1, 2}) {
                if (std::string(t) != "A1" && n == 2 && is_doubled(s)) continue;
                auto L = all_leaves(s, W, n);
                int maxdim = 0;
                std::set<std::string> keys;
                for (auto& d : L) {
                    CAPTURE(series_name(s));
                    CHECK(d.leaf_dim - d.symplectic_rank == r - (int)d.stabilizer.dim());
                    CHECK(d.symplectic_rank % 2 == 0);
                    CHECK(d.symplectic_rank >= 0);
                    CHECK(d.leaf_dim <= d.ambient_dim);
                    maxdim = std::max(maxdim, d.leaf_dim);
                    std::string k;
                    for (auto& x : d.u) k += std::to_string(x.id) + ",";
                    if (d.v)
                        for (auto& x : *d.v) k += std::to_string(x.id) + ",";
                    k += d.w ? std::to_string(d.w->id) : "-";
                    k += d.class_dim ? ":" + std::to_string(*d.class_dim) : "";
                    CHECK(keys.insert(k).second);
                }
                // the conjugacy classes form a rank-dimensional family, so FFt leaves stop short of the top
                CHECK(maxdim == L.front().ambient_dim - (s == Series::FFtilde ? r : 0));
            }
    }
}

TEST_CASE("maximal leaves fill the ambient space") {
    WeylGroup W(build_root_system("A2"));
    auto w0 = W.longest(), e = W.identity();
    for (int n : {1, 2, 3}) {
        WeylSequence top(n, w0);
        CHECK(leaf_F(W, top, e).leaf_dim == ambient_dim(Series::F, W.root_system(), n));
        CHECK(leaf_FF(W, top, top, e).leaf_dim == ambient_dim(Series::FF, W.root_system(), n));
    }
    CHECK(leaf_Ftilde(W, {w0}, w0).leaf_dim == ambient_dim(Series::Ftilde, W.root_system(), 1));
}

TEST_CASE("leaf dimension is monotone in w") {
    WeylGroup W(build_root_system("A2"));
    for (auto& u1 : W.elements())
        for (auto& u2 : W.elements())
            for (auto& w : W.elements())
                for (auto& w2 : W.elements()) {
                    if (!W.bruhat_leq(w, w2)) continue;
                    CHECK(leaf_F(W, {u1, u2}, w2).leaf_dim <= leaf_F(W, {u1, u2}, w).leaf_dim);
                }
}

TEST_CASE("enumeration order is deterministic and lexicographic") {
    WeylGroup W(build_root_system("A2"));
    auto a = enumerate_F(W, 2), b = enumerate_F(W, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].u == b[i].u);
        CHECK(*a[i].w == *b[i].w);
    }
    for (std::size_t i = 1; i < a.size(); ++i) {
        auto key = [](const LeafDescriptor& d) { return std::make_tuple(d.u[0].id, d.u[1].id, d.w->id); };
        CHECK(key(a[i - 1]) < key(a[i]));
    }
}

TEST_CASE("models pass the admissibility checks") {
    for (const char* t : {"A1", "A2"})
        for (Series s : kAll)
            for (int n : {1, 2, 3}) {
                CAPTURE(series_name(s));
                CAPTURE(n);
                SeriesModel m = build_model(s, alg(t), n);
                CHECK((int)m.ambient_dim() ==
                      (is_doubled(s) ? 2 : 1) * (int)alg(t)->dim * (is_x_model(s) ? n + 1 : n));
            }
}

TEST_CASE("V_c route reproduces the closed-form stabilizers") {
    for (const char* t : {"A1", "A2", "B2"}) {
        auto g = alg(t);
        WeylGroup W(*g->roots);
        auto wad = [&](const WeylElement& w) { return weyl_ad_symbolic(*g, w); };
        for (Series s : kAll)
            for (int n : {1, 2}) {
                if (std::string(t) != "A1" && n == 2 && s != Series::F && s != Series::Ftilde) continue;
                SeriesModel m = build_model(s, g, n);
                std::vector<LeafDescriptor> L =
                    s == Series::FFtilde ? enumerate_FFtilde(W, n, 0) : all_leaves(s, W, n);
                for (auto& d : L) {
                    CAPTURE(series_name(s));
                    std::optional<Matrix> cls;
                    if (s == Series::FFtilde) cls = Matrix::identity(g->dim);
                    auto c = leaf_c(m, d, wad, cls);
                    CHECK(m.stabilizer_from_c(c) == d.stabilizer);
                    if (is_x_model(s)) {
                        // (h + 0) + (h + h)^{u,v} = h + h
                        Subspace t2 = m.t2_stabilizer_from_c(c);
                        const std::size_t r = W.rank();
                        Matrix left(r, 2 * r);
                        for (std::size_t i = 0; i < r; ++i) left(i, i) = 1;
                        CHECK((Subspace::span_rows(left) + t2) == Subspace::full(2 * r));
                    }
                }
            }
    }
}

TEST_CASE("Ft_1 in A1 through V_c at c = (s, s)") {
    auto g = alg("A1");
    WeylGroup W(*g->roots);
    SeriesModel m = build_model(Series::Ftilde, g, 1);
    Matrix sd = weyl_ad_symbolic(*g, W.simple(0));
    Subspace st = m.stabilizer_from_c({sd, sd});
    CHECK(st == W.signed_endomorphism(-1, W.identity()).image);
    CHECK(st.dim() == 0);
}
