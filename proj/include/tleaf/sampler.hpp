#pragma once

#include "series.hpp"
#include "sl_oracle.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tleaf {

// A sampled leaf point: group factors and the Ad-matrix of its image in the ambient chart.
struct LeafPoint {
    std::vector<Matrix> g, k;   // factors g_j (and k_j for doubled series)
    Matrix ambient_ad;
    int attempts = 0;
};

class SamplingFailed : public std::runtime_error {
public:
    explicit SamplingFailed(const std::string& m) : std::runtime_error(m) {}
};

namespace detail {

inline Matrix prod(const std::vector<Matrix>& v, std::size_t upto, int m) {
    Matrix p = Matrix::identity(m);
    for (std::size_t i = 0; i < upto; ++i) p = p * v[i];
    return p;
}

inline Matrix ambient_ad_of(const SLRealization& sl, const SeriesModel& model, const std::vector<Matrix>& g,
                            const std::vector<Matrix>& k) {
    std::vector<Matrix> slots;
    for (int j = 1; j <= model.n; ++j) {
        Matrix a = sl.adjoint_matrix(prod(g, j, sl.m()));
        if (model.base.doubled) a = block_diag({a, sl.adjoint_matrix(prod(k, j, sl.m()))});
        slots.push_back(a);
    }
    return model.point_ad(slots);
}

// One attempt of the guided walk for F and FF; returns false on a failed step.
inline bool walk_attempt(const SLRealization& sl, const LeafDescriptor& d, ParamSource& ps, std::vector<Matrix>& g,
                         std::vector<Matrix>& k) {
    const WeylGroup& W = sl.weyl();
    std::vector<CellWalker::Move> moves;
    std::vector<int> owner;  // which factor each move belongs to
    for (int j = 0; j < d.n; ++j)
        for (int s : d.u[j].word()) {
            moves.push_back({false, s});
            owner.push_back(j);
        }
    if (d.series == Series::FF)
        for (int j = 0; j < d.n; ++j)
            for (int s : (*d.v)[j].word()) {
                moves.push_back({true, s});
                owner.push_back(d.n + j);
            }
    CellWalker walker(sl, ps);
    std::vector<WeylElement> path;
    if (!walker.plan(moves, W.identity(), *d.w, path)) throw SamplingFailed("empty stratum: no cell path reaches w");
    Matrix P = Matrix::identity(sl.m());
    std::vector<Matrix> factors;
    if (!walker.run(moves, path, P, factors)) return false;
    const int m = sl.m();
    g.assign(d.n, Matrix::identity(m));
    std::vector<Matrix> hinv(d.n, Matrix::identity(m));
    for (std::size_t i = 0; i < moves.size(); ++i) {
        int o = owner[i];
        if (o < d.n)
            g[o] = g[o] * factors[i];
        else
            hinv[o - d.n] = factors[i] * hinv[o - d.n];
    }
    k.clear();
    if (d.series == Series::FF)
        for (auto& x : hinv) k.push_back(inverse(x));
    return true;
}

inline bool verify_point(const SLRealization& sl, const LeafDescriptor& d, const std::vector<Matrix>& g,
                         const std::vector<Matrix>& k, const std::optional<Matrix>& class_rep) {
    const int m = sl.m();
    for (int j = 0; j < d.n; ++j) {
        if (sl.cell_B(g[j]) != d.u[j]) return false;
        if (is_doubled(d.series) && sl.cell_Bminus(k[j]) != (*d.v)[j]) return false;
    }
    Matrix G = prod(g, d.n, m);
    switch (d.series) {
        case Series::F: return sl.cell_BminusB(G) == *d.w;
        case Series::FF: return sl.cell_BminusB(inverse(prod(k, d.n, m)) * G) == *d.w;
        case Series::Ftilde: return sl.cell_Bminus(G) == *d.w;
        case Series::FFtilde: {
            Matrix c = G * inverse(prod(k, d.n, m));
            // same class as the representative: equal centralizer dimension and a conjugating B-element was used
            return class_rep && sl.class_dim(c) == sl.class_dim(*class_rep);
        }
    }
    return false;
}

}  // namespace detail

// Seeded leaf point in the stratum of d, verified through cell_of.
// FFt needs a class representative lying in B.
inline LeafPoint sample_leaf_point(const SLRealization& sl, const SeriesModel& model, const LeafDescriptor& d,
                                   unsigned long long seed, const std::optional<Matrix>& class_rep = std::nullopt,
                                   int budget = 1000) {
    if (d.series != model.series || d.n != model.n) throw std::invalid_argument("descriptor does not match model");
    ParamSource ps(seed);
    const int m = sl.m();
    LeafPoint pt;
    for (int attempt = 1; attempt <= budget; ++attempt) {
        pt.attempts = attempt;
        std::vector<Matrix> g, k;
        switch (d.series) {
            case Series::F:
            case Series::FF:
                if (!detail::walk_attempt(sl, d, ps, g, k)) continue;
                break;
            case Series::Ftilde: {
                for (int j = 0; j < d.n; ++j) g.push_back(lower_word_product(sl, d.u[j], ps));
                g[d.n - 1] = g[d.n - 1] * random_torus(m, ps) * upper_word_product(sl, *d.w, ps);
                break;
            }
            case Series::FFtilde: {
                if (!class_rep) throw std::invalid_argument("FFt sampling needs a class representative");
                Matrix b = random_borel(m, ps, +1);
                Matrix c = b * *class_rep * inverse(b);
                for (int j = 0; j < d.n; ++j) {
                    Matrix x = double_bruhat_point(sl, d.u[j], (*d.v)[j], ps);
                    g.push_back(x);
                    k.push_back(x);
                }
                g[0] = c * g[0];
                break;
            }
        }
        if (!detail::verify_point(sl, d, g, k, class_rep)) continue;
        pt.g = g;
        pt.k = k;
        pt.ambient_ad = detail::ambient_ad_of(sl, model, g, k);
        return pt;
    }
    throw SamplingFailed("rejection budget exhausted");
}

}  // namespace tleaf
