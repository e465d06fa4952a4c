#pragma once

#include "parallel.hpp"
#include "sampler.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tleaf {

// ---------------------------------------------------------------------------
// r-matrix checks

struct CheckLine {
    std::string name;
    bool pass;
    std::string evidence;
};

inline CheckLine check_quasitriangular(const std::string& name, const FactorizableData& rd) {
    Tensor3 t = cyb(rd.r);
    bool inv = symmetric_part_invariant(rd.r);
    std::ostringstream os;
    os << "dim " << rd.dim() << ", nonzero CYB coefficients " << t.size() << ", invariant symmetric part "
       << (inv ? "yes" : "no");
    return {name, t.empty() && inv, os.str()};
}

inline std::vector<CheckLine> verify_cyb(const FactorizableData& st, int n) {
    std::vector<CheckLine> out;
    out.push_back(check_quasitriangular("r_st", st));
    if (n >= 2) out.push_back(check_quasitriangular("r^(" + std::to_string(n) + ")", build_r_n(st, n)));
    out.push_back(check_quasitriangular("r^<" + std::to_string(n + 1) + ">", build_r_angle(st, n)));
    return out;
}

inline std::vector<CheckLine> verify_tilde(const FactorizableData& st, int n) {
    FactorizableData rn = build_r_n(st, n);
    FSubalgebras ex = tilde_images_expected(st, n);
    std::vector<CheckLine> out;
    auto line = [&](const std::string& nm, const Subspace& got, const Subspace& want) {
        std::ostringstream os;
        os << "dim " << got.dim() << " vs predicted " << want.dim();
        out.push_back({nm, got == want, os.str()});
    };
    line("Im r~_+ (n=" + std::to_string(n) + ")", rn.f_plus, ex.f_plus);
    line("Im r~_- (n=" + std::to_string(n) + ")", rn.f_minus, ex.f_minus);
    return out;
}

// ---------------------------------------------------------------------------
// Oracle check of one leaf at sampled points

struct LeafCheck {
    bool pass = true;
    std::vector<int> ranks_lr, ranks_corank, leaf_dims;
    bool stab_pair_ok = true, stab_lr_ok = true, stab_vc_ok = true;
    std::string failure;
};

inline LeafCheck check_leaf(const SLRealization& sl, const SeriesModel& model, const LeafDescriptor& d, int samples,
                            unsigned long long seed, const std::optional<Matrix>& class_rep = std::nullopt) {
    LeafCheck lc;
    auto fail = [&](const std::string& why) {
        if (lc.pass) lc.failure = why;
        lc.pass = false;
    };
    for (int s = 0; s < samples; ++s) {
        LeafPoint p = sample_leaf_point(sl, model, d, seed * 1000003ULL + s, class_rep);
        RankResult rr = rank_at_point(model.setup, p.ambient_ad, d.ambient_dim);
        int ld = leaf_dim_at_point(model.setup, p.ambient_ad);
        lc.ranks_lr.push_back(rr.via_lr);
        lc.ranks_corank.push_back(rr.via_corank);
        lc.leaf_dims.push_back(ld);
        if (rr.via_lr != d.symplectic_rank || rr.via_corank != d.symplectic_rank)
            fail("rank " + std::to_string(rr.via_lr) + "/" + std::to_string(rr.via_corank) + " vs closed form " +
                 std::to_string(d.symplectic_rank));
        if (ld != d.leaf_dim) fail("leaf dim " + std::to_string(ld) + " vs " + std::to_string(d.leaf_dim));
        Subspace sp = model.to_h(stabilizer_pair(model.setup, make_diagonal_pair(model.setup, p.ambient_ad)));
        Subspace sl_ = model.to_h(stabilizer_point_lr(model.setup, p.ambient_ad));
        if (sp != d.stabilizer) {
            lc.stab_pair_ok = false;
            fail("stabilizer (pair route) differs");
        }
        if (sl_ != d.stabilizer) {
            lc.stab_lr_ok = false;
            fail("stabilizer (l_r route) differs");
        }
    }
    auto wad = [&](const WeylElement& w) { return weyl_ad_symbolic(*model.base.g, w); };
    std::optional<Matrix> cad;
    if (class_rep) cad = sl.adjoint_matrix(*class_rep);
    Subspace vc = model.stabilizer_from_c(leaf_c(model, d, wad, cad));
    if (vc != d.stabilizer) {
        lc.stab_vc_ok = false;
        fail("stabilizer (V_c route) differs");
    }
    return lc;
}

// ---------------------------------------------------------------------------
// Orbit pairs and the delta sweep

struct OrbitPairIndex {
    std::vector<Matrix> slot_opts;  // base Ad-matrices for c_1..c_n
    std::vector<Matrix> last_opts;  // base Ad-matrices for c_{n+1}
    std::vector<std::string> slot_names, last_names;
    int n = 1;

    std::size_t count() const {
        std::size_t c = last_opts.size();
        for (int j = 0; j < n; ++j) c *= slot_opts.size();
        return c;
    }
    std::vector<Matrix> at(std::size_t idx, std::string* name = nullptr) const {
        std::vector<Matrix> c(n + 1);
        std::vector<std::string> nm(n + 1);
        std::size_t L = last_opts.size(), S = slot_opts.size();
        c[n] = last_opts[idx % L];
        nm[n] = last_names[idx % L];
        idx /= L;
        for (int j = n - 1; j >= 0; --j) {
            c[j] = slot_opts[idx % S];
            nm[j] = slot_names[idx % S];
            idx /= S;
        }
        if (name) {
            *name = "";
            for (int j = 0; j <= n; ++j) *name += (j ? " | " : "") + nm[j];
        }
        return c;
    }
};

// Class representatives enter as base Ad-matrices of g; names label them in reports.
struct ClassRepAd {
    std::string name;
    Matrix ad;
};

inline OrbitPairIndex orbit_pair_index(const SeriesModel& model, const WeylGroup& W,
                                       const std::vector<ClassRepAd>& classes = {}) {
    const LieAlgebra& g = *model.base.g;
    OrbitPairIndex ix;
    ix.n = model.n;
    std::vector<Matrix> wads;
    std::vector<std::string> wn;
    for (auto& w : W.elements()) {
        wads.push_back(weyl_ad_symbolic(g, w));
        wn.push_back(w.str());
    }
    Matrix id = Matrix::identity(g.dim);
    if (!model.base.doubled) {
        ix.slot_opts = wads;
        ix.slot_names = wn;
        ix.last_opts = wads;
        ix.last_names = wn;
        return ix;
    }
    for (std::size_t a = 0; a < wads.size(); ++a)
        for (std::size_t b = 0; b < wads.size(); ++b) {
            ix.slot_opts.push_back(block_diag({wads[a], wads[b]}));
            ix.slot_names.push_back("(" + wn[a] + ", " + wn[b] + ")");
        }
    if (model.series == Series::FF) {
        for (std::size_t a = 0; a < wads.size(); ++a) {
            ix.last_opts.push_back(block_diag({wads[a], id}));
            ix.last_names.push_back("(" + wn[a] + ", e)");
        }
    } else {
        if (classes.empty()) throw std::invalid_argument("FFt orbit pairs need class representatives");
        for (auto& c : classes) {
            ix.last_opts.push_back(block_diag({c.ad, id}));
            ix.last_names.push_back("(" + c.name + ", e)");
        }
    }
    return ix;
}

struct DeltaRecord {
    int delta_lagrangian = -1;  // via the projection of (m_+^perp + m_-^perp) cap l
    int delta_quotient = -1;    // via the two images in q_0 / q_0^perp
};

struct DeltaSweep {
    std::size_t cases = 0, zero_both = 0, disagree = 0;
    std::vector<DeltaRecord> records;
    std::vector<std::size_t> failures;  // indices with nonzero delta or disagreement
};

inline DeltaRecord delta_at(const SeriesModel& model, const std::vector<Matrix>& c) {
    auto [ap, am] = model.orbit_pair_ads(c);
    StabilizerPair p = make_pair(model.setup, ap, am);
    return {delta_pair(model.setup, p), delta_pair_quotient(model.setup, p, ap)};
}

inline DeltaSweep delta_sweep(const SeriesModel& model, const OrbitPairIndex& ix, int jobs) {
    DeltaSweep ds;
    ds.cases = ix.count();
    ds.records.resize(ds.cases);
    parallel_for(ds.cases, jobs, [&](std::size_t i) { ds.records[i] = delta_at(model, ix.at(i)); });
    for (std::size_t i = 0; i < ds.cases; ++i) {
        const auto& r = ds.records[i];
        if (r.delta_lagrangian != r.delta_quotient) ++ds.disagree;
        if (r.delta_lagrangian == 0 && r.delta_quotient == 0)
            ++ds.zero_both;
        else
            ds.failures.push_back(i);
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Random elements of the ambient groups M_pm and G (Ad-matrices)

inline std::vector<int> ambient_grades(const SeriesModel& m) {
    std::size_t copies = m.ambient_dim() / m.base.g->dim;
    return height_grades(*m.base.g, copies);
}

// Product of exp(ad x_k) over the nonzero height degrees k, x_k random in s cap (degree k).
inline Matrix random_group_ad(const LieAlgebra& amb, const std::vector<int>& grades, const Subspace& s,
                              ParamSource& ps) {
    std::map<int, std::vector<std::size_t>> by;
    for (std::size_t i = 0; i < grades.size(); ++i)
        if (grades[i] != 0) by[grades[i]].push_back(i);
    Matrix a = Matrix::identity(amb.dim);
    for (auto& [k, idx] : by) {
        Subspace piece = intersect(s, Subspace::coordinate(amb.dim, idx));
        if (piece.dim() == 0) continue;
        Vec x(amb.dim);
        for (auto& b : piece.vectors()) {
            Rational t = ps.any();
            for (std::size_t i = 0; i < amb.dim; ++i) x[i] += t * b[i];
        }
        if (is_zero(x)) continue;
        a = a * exp_nilpotent(amb.ad(x));
    }
    return a;
}

struct BasePointCheck {
    bool pass = true;
    std::size_t pairs = 0, representatives = 0;
    std::string failure;
};

// delta and t_{O+,O-} at `reps` random representative pairs (m_+ y_+, m_- y_-) and random y_0.
inline BasePointCheck base_point_independence(const SeriesModel& model, const OrbitPairIndex& ix,
                                              const std::vector<std::size_t>& which, int reps, ParamSource& ps) {
    BasePointCheck bc;
    const LieAlgebra& amb = model.setup.rd->alg();
    auto grades = ambient_grades(model);
    Subspace full = Subspace::full(model.ambient_dim());
    for (std::size_t idx : which) {
        std::string name;
        auto c = ix.at(idx, &name);
        auto [ap, am] = model.orbit_pair_ads(c);
        StabilizerPair p0 = make_pair(model.setup, ap, am);
        int d0 = delta_pair(model.setup, p0);
        Subspace t0 = stabilizer_pair(model.setup, p0);
        ++bc.pairs;
        for (int r = 0; r < reps; ++r) {
            Matrix mp = random_group_ad(amb, grades, model.setup.m_plus, ps);
            Matrix mm = random_group_ad(amb, grades, model.setup.m_minus, ps);
            Matrix g0 = random_group_ad(amb, grades, full, ps);
            StabilizerPair p = make_pair(model.setup, mp * ap, mm * am);
            int d1 = delta_pair(model.setup, p);
            int d2 = delta_pair_quotient(model.setup, p, g0 * p.ad_plus);
            Subspace t1 = stabilizer_pair(model.setup, p);
            ++bc.representatives;
            if (d1 != d0 || d2 != d0 || t1 != t0) {
                if (bc.pass)
                    bc.failure = series_name(model.series) + " n=" + std::to_string(model.n) + " pair [" + name +
                                 "]: delta " + std::to_string(d0) + " -> " + std::to_string(d1) + "/" +
                                 std::to_string(d2) + ", stabilizer dims " + std::to_string(t0.dim()) + " -> " +
                                 std::to_string(t1.dim());
                bc.pass = false;
            }
        }
    }
    return bc;
}

// ---------------------------------------------------------------------------
// Standard conjugacy class representatives in SL_m (all lie in B).

struct ClassRep {
    std::string name;
    Matrix rep;
};

inline std::vector<ClassRep> standard_class_reps(int m) {
    std::vector<ClassRep> out;
    out.push_back({"identity", Matrix::identity(m)});
    Matrix s = Matrix::identity(m);
    if (m == 2) {
        s(0, 0) = 2;
        s(1, 1) = Rational(1, 2);
    } else {
        Rational prod = 1;
        for (int i = 0; i + 1 < m; ++i) {
            s(i, i) = i + 2;
            prod *= Rational(i + 2);
        }
        s(m - 1, m - 1) = prod.inverse();
    }
    out.push_back({"regular semisimple", s});
    Matrix u = Matrix::identity(m);
    for (int i = 0; i + 1 < m; ++i) u(i, i + 1) = 1;
    out.push_back({"regular unipotent", u});
    return out;
}

}  // namespace tleaf
