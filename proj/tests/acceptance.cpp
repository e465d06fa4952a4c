// Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic, pinned time budgets.

#include "tleaf/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tleaf;

namespace {

// Every symplectic rank reported by criteria 3-7, closed-form and sampled.
std::vector<int> g_ranks;
std::mutex g_ranks_mu;

void record_rank(int r) {
    std::lock_guard<std::mutex> lk(g_ranks_mu);
    g_ranks.push_back(r);
}

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (pass) note << why;
        pass = false;
    }
};

std::shared_ptr<const LieAlgebra> alg(const std::string& t) {
    return std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(t)));
}

const int kJobs = default_jobs();

// ---------------------------------------------------------------------------

void crit_cyb(Outcome& o) {
    int checked = 0;
    auto need = [&](const CheckLine& c, const std::string& where) {
        ++checked;
        if (!c.pass) o.fail(where + " " + c.name + ": " + c.evidence);
    };
    for (const char* t : {"A1", "A2", "A3", "B2"}) need(check_quasitriangular("r_st", build_r_st(alg(t))), t);
    for (const char* t : {"A1", "A2"}) {
        auto st = build_r_st(alg(t));
        for (int n : {2, 3, 4}) need(check_quasitriangular("r^(" + std::to_string(n) + ")", build_r_n(st, n)), t);
        for (int n : {2, 3})
            need(check_quasitriangular("r^<" + std::to_string(n + 1) + ">", build_r_angle(st, n)), t);
    }
    o.note << checked << " r-matrices with CYB = 0 and invariant symmetric part";
}

void crit_tilde(Outcome& o) {
    int checked = 0;
    for (const char* t : {"A1", "A2"}) {
        auto st = build_r_st(alg(t));
        for (int n = 2; n <= 5; ++n)
            for (auto& c : verify_tilde(st, n)) {
                ++checked;
                if (!c.pass) o.fail(std::string(t) + " " + c.name + ": " + c.evidence);
            }
    }
    o.note << checked << " image subspaces equal to their predictions";
}

void crit_sl2_flag(Outcome& o) {
    SLRealization sl(2);
    const WeylGroup& W = sl.weyl();
    auto L = enumerate_F(W, 1);
    const int want[3][3] = {{0, 0, 1}, {1, 0, 0}, {0, 0, 1}};
    if (L.size() != 3) return o.fail(std::to_string(L.size()) + " leaves instead of 3");
    for (int i = 0; i < 3; ++i) {
        record_rank(L[i].symplectic_rank);
        if (L[i].leaf_dim != want[i][0] || L[i].symplectic_rank != want[i][1] ||
            (int)L[i].stabilizer.dim() != want[i][2])
            o.fail("leaf " + std::to_string(i) + " has the wrong (dim, rank, stab_dim)");
    }
    SeriesModel m = build_model(Series::F, sl.algebra(), 1);
    LeafCheck lc = check_leaf(sl, m, L[1], 5, 1);
    for (int r : lc.ranks_lr) record_rank(r);
    for (int r : lc.ranks_corank) record_rank(r);
    if (!lc.pass) o.fail("open leaf: " + lc.failure);
    for (int r : lc.ranks_lr)
        if (r != 0) o.fail("nonzero rank on P^1");
    o.note << "3 leaves (0,0,1) (1,0,0) (0,0,1); sampled ranks on the open leaf [";
    for (std::size_t i = 0; i < lc.ranks_lr.size(); ++i) o.note << (i ? " " : "") << lc.ranks_lr[i];
    o.note << "]";
}

void crit_sl3_flag(Outcome& o) {
    SLRealization sl(3);
    const WeylGroup& W = sl.weyl();
    auto L = enumerate_F(W, 1);
    if (L.size() != 19) return o.fail(std::to_string(L.size()) + " leaves instead of 19");
    SeriesModel m = build_model(Series::F, sl.algebra(), 1);
    std::vector<LeafCheck> res(L.size());
    parallel_for(L.size(), kJobs, [&](std::size_t i) { res[i] = check_leaf(sl, m, L[i], 3, 100 + i); });
    int points = 0;
    for (std::size_t i = 0; i < L.size(); ++i) {
        const auto& d = L[i];
        record_rank(d.symplectic_rank);
        for (int r : res[i].ranks_lr) record_rank(r);
        for (int r : res[i].ranks_corank) record_rank(r);
        points += (int)res[i].ranks_lr.size();
        auto se = W.signed_endomorphism(1, W.multiply(d.u[0], W.inverse(*d.w)));
        if (d.symplectic_rank != W.length(d.u[0]) - W.length(*d.w) - se.ker_dim) o.fail("closed form mismatch");
        if (d.leaf_dim - d.symplectic_rank != W.rank() - (int)d.stabilizer.dim()) o.fail("corank identity fails");
        if (!res[i].pass) o.fail("u=" + d.u[0].str() + " w=" + d.w->str() + ": " + res[i].failure);
        if (!res[i].stab_pair_ok || !res[i].stab_lr_ok) o.fail("stabilizer route mismatch");
    }
    o.note << "19 leaves, " << points << " sampled points; rank, leaf dim and both stabilizer routes agree";
}

void crit_delta(Outcome& o) {
    auto g = alg("A2");
    WeylGroup W(*g->roots);
    SLRealization sl(3);
    std::vector<ClassRepAd> classes;
    for (auto& cr : standard_class_reps(3)) classes.push_back({cr.name, sl.adjoint_matrix(cr.rep)});
    std::size_t total = 0;
    for (Series s : {Series::F, Series::FF, Series::Ftilde, Series::FFtilde})
        for (int n : {1, 2}) {
            SeriesModel m = build_model(s, g, n);
            OrbitPairIndex ix = orbit_pair_index(m, W, s == Series::FFtilde ? classes : std::vector<ClassRepAd>{});
            DeltaSweep ds = delta_sweep(m, ix, kJobs);
            total += ds.cases;
            o.note << series_name(s) << "_" << n << " " << ds.zero_both << "/" << ds.cases << "; ";
            if (!ds.failures.empty())
                o.fail(series_name(s) + " n=" + std::to_string(n) + ": " + std::to_string(ds.failures.size()) +
                       " setups with delta != 0 or route disagreement");
            if (s == Series::F && n == 2 && ds.cases < 216) o.fail("F_2 sweep below 216 cases");
        }
    o.note << total << " setups, both routes zero";
}

void crit_base_point(Outcome& o) {
    auto g = alg("A2");
    WeylGroup W(*g->roots);
    SLRealization sl(3);
    std::vector<ClassRepAd> classes;
    for (auto& cr : standard_class_reps(3)) classes.push_back({cr.name, sl.adjoint_matrix(cr.rep)});
    std::vector<std::pair<Series, int>> configs;
    for (Series s : {Series::F, Series::FF, Series::Ftilde, Series::FFtilde})
        for (int n : {1, 2}) configs.push_back({s, n});
    std::vector<SeriesModel> models;
    std::vector<OrbitPairIndex> idx;
    for (auto& [s, n] : configs) {
        models.push_back(build_model(s, g, n));
        idx.push_back(orbit_pair_index(models.back(), W, s == Series::FFtilde ? classes : std::vector<ClassRepAd>{}));
    }
    const int seeds = 20, reps = 3;
    std::vector<BasePointCheck> res(seeds * configs.size());
    parallel_for(res.size(), kJobs, [&](std::size_t k) {
        std::size_t c = k % configs.size();
        ParamSource ps(7000 + k);
        std::vector<std::size_t> which{(std::size_t)ps.pick((int)idx[c].count())};
        res[k] = base_point_independence(models[c], idx[c], which, reps, ps);
    });
    std::size_t pairs = 0, representatives = 0;
    for (auto& r : res) {
        pairs += r.pairs;
        representatives += r.representatives;
        if (!r.pass) o.fail(r.failure);
    }
    o.note << seeds << " seeds x " << configs.size() << " setups: " << pairs << " orbit pairs, " << representatives
           << " random representative pairs; delta (both routes) and stabilizer unchanged";
}

void crit_double_bruhat(Outcome& o) {
    int strata = 0, points = 0;
    for (int mdim : {2, 3}) {
        SLRealization sl(mdim);
        const WeylGroup& W = sl.weyl();
        auto reps = standard_class_reps(mdim);
        struct Job {
            Series s;
            LeafDescriptor d;
            int cls;
        };
        std::vector<Job> jobs;
        for (auto& d : enumerate_Ftilde(W, 1)) jobs.push_back({Series::Ftilde, d, -1});
        for (int c = 0; c < (int)reps.size(); ++c)
            for (auto& d : enumerate_FFtilde(W, 1, sl.class_dim(reps[c].rep))) jobs.push_back({Series::FFtilde, d, c});
        SeriesModel ft = build_model(Series::Ftilde, sl.algebra(), 1);
        SeriesModel fft = build_model(Series::FFtilde, sl.algebra(), 1);
        std::vector<LeafCheck> res(jobs.size());
        parallel_for(jobs.size(), kJobs, [&](std::size_t i) {
            const Job& j = jobs[i];
            std::optional<Matrix> rep;
            if (j.cls >= 0) rep = reps[j.cls].rep;
            res[i] = check_leaf(sl, j.s == Series::Ftilde ? ft : fft, j.d, 5, 500 + i, rep);
        });
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const auto& d = jobs[i].d;
            ++strata;
            points += (int)res[i].ranks_lr.size();
            record_rank(d.symplectic_rank);
            for (int r : res[i].ranks_lr) record_rank(r);
            for (int r : res[i].ranks_corank) record_rank(r);
            // l(u) + l(v) + dim C + dim Im(1 - u v^{-1})
            WeylElement v = d.series == Series::Ftilde ? *d.w : (*d.v)[0];
            int cdim = d.class_dim.value_or(0);
            int im = (int)W.signed_endomorphism(-1, W.multiply(d.u[0], W.inverse(v))).image.dim();
            int want_rank = W.length(d.u[0]) + W.length(v) + cdim + im;
            int want_dim = W.length(d.u[0]) + W.length(v) + cdim + W.rank();
            if (d.symplectic_rank != want_rank || d.leaf_dim != want_dim) o.fail("closed form mismatch");
            if (!res[i].pass) {
                std::string c = jobs[i].cls >= 0 ? " C=" + reps[jobs[i].cls].name : "";
                o.fail("SL" + std::to_string(mdim) + " " + series_name(d.series) + " u=" + d.u[0].str() +
                       " v=" + v.str() + c + ": " + res[i].failure);
            }
            for (int r : res[i].ranks_lr)
                if (r != res[i].ranks_lr.front()) o.fail("rank not constant on a stratum");
        }
    }
    o.note << strata << " strata in SL2 and SL3, " << points << " sampled points; rank constant and equal to the formula";
}

void crit_weyl(Outcome& o) {
    std::size_t pairs = 0, triples = 0;
    for (const char* t : {"A2", "B2", "A3"}) {
        WeylGroup W(build_root_system(t));
        auto els = W.elements();
        for (auto& x : els)
            for (auto& y : els) {
                ++pairs;
                if (W.bruhat_leq(x, y) != W.bruhat_leq_lifting(x, y)) o.fail(std::string(t) + ": Bruhat tests disagree");
                auto cells = W.cell_product({x}, y);
                WeylElement d = W.demazure(x, y);
                if (!cells.count(d)) o.fail(std::string(t) + ": Demazure product not among the cells");
                for (auto& c : cells)
                    if (!W.bruhat_leq(c, d)) o.fail(std::string(t) + ": cell above the Demazure product");
                for (auto& z : els) {
                    ++triples;
                    if (W.demazure(d, z) != W.demazure(x, W.demazure(y, z)))
                        o.fail(std::string(t) + ": Demazure product not associative");
                }
            }
    }
    o.note << pairs << " pairs (Bruhat, cell max), " << triples << " triples (associativity) over A2, B2, A3";
}

void crit_wuv(Outcome& o) {
    WeylGroup W(build_root_system("A2"));
    auto els = W.elements();
    int cases = 0, agree = 0, nonempty = 0;
    for (auto& u1 : els)
        for (auto& u2 : els)
            for (auto& v1 : els)
                for (auto& v2 : els)
                    for (auto& w : els) {
                        ++cases;
                        bool a = wuv_nonempty(W, {u1, u2}, {v1, v2}, w);
                        bool b = wuv_nonempty_cells(W, {u1, u2}, {v1, v2}, w);
                        agree += a == b;
                        nonempty += a;
                    }
    if (cases != 7776) o.fail("expected 7776 cases");
    if (agree != cases) o.fail(std::to_string(cases - agree) + " disagreements");
    o.note << agree << "/" << cases << " cases agree (" << nonempty << " nonempty)";
}

void crit_even(Outcome& o) {
    int odd = 0;
    for (int r : g_ranks) odd += r % 2 != 0;
    if (g_ranks.empty()) o.fail("no ranks recorded");
    if (odd) o.fail(std::to_string(odd) + " odd ranks");
    o.note << g_ranks.size() << " ranks from criteria 3-7, all even";
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> crits = {
        {1, "quasitriangularity of r_st, r^(n), r^<n+1>", 30, crit_cyb},
        {2, "images of r^(n)_pm, n = 2..5", 10, crit_tilde},
        {3, "SL2 flag variety leaves and oracle ranks", 5, crit_sl2_flag},
        {4, "SL3 flag variety: 19 leaves against the oracle", 120, crit_sl3_flag},
        {5, "delta = 0 over all A2 orbit-pair setups, n <= 2", 120, crit_delta},
        {6, "base-point independence of delta and stabilizers", 60, crit_base_point},
        {7, "double Bruhat cells and conjugacy-class strata in SL2, SL3", 180, crit_double_bruhat},
        {8, "Weyl combinatorics over A2, B2, A3", 30, crit_weyl},
        {9, "wuv criterion vs cell-product reduction, A2 n = 2", 60, crit_wuv},
        {10, "evenness of every reported rank", 5, crit_even},
    };
    int failed = 0;
    for (const auto& c : crits) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) o.fail("over the time budget");
        failed += !o.pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.budget_s);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  (" << timing << ")  "
                  << o.note.str() << std::endl;
    }
    std::cout << (crits.size() - failed) << "/" << crits.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
