// tleaf: leaf tables, verification sweeps and single-leaf reports.
// Exit codes: 0 ok, 1 failed check, 2 index cap exceeded, 3 parse/usage error, 4 empty stratum.

#include "tleaf/io.hpp"
#include "tleaf/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace tleaf;

namespace {

constexpr int kExitFail = 1, kExitCap = 2, kExitParse = 3, kExitEmpty = 4;

struct EmptyStratum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string type;
    int n = 1;
    std::string form_scale = "1";
    int jobs = 1;
    std::string series = "F";
    std::string class_rep_file;
    int class_dim = -1;
};

struct Context {
    RootSystem rs;
    std::shared_ptr<const LieAlgebra> g;
    std::unique_ptr<WeylGroup> W;
    Rational scale;
};

std::unique_ptr<Context> make_context(const Common& c) {
    auto ctx = std::make_unique<Context>();
    ctx->rs = build_root_system(c.type);
    ctx->scale = Rational::parse(c.form_scale);
    if (ctx->scale.sign() <= 0) throw ParseError("--form-scale must be positive");
    ctx->g = std::make_shared<const LieAlgebra>(build_lie_algebra(ctx->rs, ctx->scale));
    ctx->W = std::make_unique<WeylGroup>(ctx->rs);
    return ctx;
}

// Type A_{m-1} realization needed for class representatives and sampling.
std::unique_ptr<SLRealization> realization_for(const RootSystem& rs) {
    if (rs.series != 'A') throw ParseError("this command needs a type A root system");
    return std::make_unique<SLRealization>(rs.rank + 1);
}

Matrix load_class_rep(const std::string& path, int m) {
    Matrix rep = parse_matrix_json(read_file(path));
    if ((int)rep.rows() != m) throw ParseError("class representative must be " + std::to_string(m) + "x" + std::to_string(m));
    if (SLRealization::det(rep) != Rational(1)) throw ParseError("class representative must have determinant 1");
    return rep;
}

WeylSequence parse_sequence(const WeylGroup& W, const std::string& text) {
    WeylSequence s;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) s.push_back(W.parse(part));
    if (s.empty()) throw ParseError("empty Weyl sequence");
    return s;
}

std::string vec_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

std::string span_string(const Subspace& s) {
    if (s.dim() == 0) return "{0}";
    std::string out = "span{";
    auto v = s.vectors();
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + vec_string(v[i]);
    return out + "}";
}

std::string leaf_label(const LeafDescriptor& d) {
    std::string s = "u=";
    for (auto& x : d.u) s += "(" + x.str() + ")";
    if (d.v) {
        s += " v=";
        for (auto& x : *d.v) s += "(" + x.str() + ")";
    }
    if (d.w) s += (d.series == Series::Ftilde ? " v=" : " w=") + d.w->str();
    return s;
}

std::vector<LeafDescriptor> enumerate(Series s, const WeylGroup& W, int n, double cap, int class_dim) {
    switch (s) {
        case Series::F: return enumerate_F(W, n, cap);
        case Series::FF: return enumerate_FF(W, n, cap);
        case Series::Ftilde: return enumerate_Ftilde(W, n, cap);
        case Series::FFtilde: return enumerate_FFtilde(W, n, class_dim, cap);
    }
    return {};
}

int cmd_leaves(const Common& c, const std::string& out, const std::string& format, double cap) {
    auto ctx = make_context(c);
    Series s = parse_series(c.series);
    int class_dim = -1;
    if (s == Series::FFtilde) {
        if (!c.class_rep_file.empty()) {
            auto sl = realization_for(ctx->rs);
            class_dim = sl->class_dim(load_class_rep(c.class_rep_file, sl->m()));
        } else if (c.class_dim >= 0) {
            class_dim = c.class_dim;
        } else {
            throw ParseError("FFt needs --class-rep or --class-dim");
        }
    }
    LeafTable t;
    t.type = ctx->rs.label();
    t.series = s;
    t.n = c.n;
    t.normalization = normalization_string(ctx->scale);
    t.rows = enumerate(s, *ctx->W, c.n, cap, class_dim);
    std::string text;
    if (format == "json")
        text = serialize_json(t);
    else if (format == "csv")
        text = serialize_csv(t);
    else
        throw ParseError("--format must be json or csv");
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw ParseError("cannot write " + out);
        f << text;
        std::cerr << t.rows.size() << " leaves written to " << out << "\n";
    }
    return 0;
}

int report(const std::vector<CheckLine>& lines) {
    bool all = true;
    for (auto& l : lines) {
        std::cout << (l.pass ? "pass  " : "FAIL  ") << l.name << "  [" << l.evidence << "]\n";
        all = all && l.pass;
    }
    return all ? 0 : kExitFail;
}

int cmd_verify_cyb(const Common& c) {
    auto ctx = make_context(c);
    return report(verify_cyb(build_r_st(ctx->g), c.n));
}

int cmd_verify_tilde(const Common& c) {
    auto ctx = make_context(c);
    if (c.n < 2) throw ParseError("verify tilde needs --n >= 2");
    return report(verify_tilde(build_r_st(ctx->g), c.n));
}

std::vector<ClassRep> class_reps_for(const Common& c, const SLRealization& sl) {
    if (!c.class_rep_file.empty()) return {{"file " + c.class_rep_file, load_class_rep(c.class_rep_file, sl.m())}};
    return standard_class_reps(sl.m());
}

int cmd_verify_rank(const Common& c, int samples, unsigned long long seed) {
    auto ctx = make_context(c);
    auto sl = realization_for(ctx->rs);
    Series s = parse_series(c.series);
    SeriesModel model = build_model(s, ctx->g, c.n);
    struct Job {
        LeafDescriptor d;
        std::optional<ClassRep> cls;
    };
    std::vector<Job> jobs;
    if (s == Series::FFtilde) {
        for (auto& cr : class_reps_for(c, *sl))
            for (auto& d : enumerate_FFtilde(sl->weyl(), c.n, sl->class_dim(cr.rep))) jobs.push_back({d, cr});
    } else {
        for (auto& d : enumerate(s, sl->weyl(), c.n, kDefaultCap, -1)) jobs.push_back({d, std::nullopt});
    }
    std::vector<LeafCheck> res(jobs.size());
    parallel_for(jobs.size(), c.jobs, [&](std::size_t i) {
        std::optional<Matrix> rep;
        if (jobs[i].cls) rep = jobs[i].cls->rep;
        res[i] = check_leaf(*sl, model, jobs[i].d, samples, seed + i, rep);
    });
    std::size_t ok = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& d = jobs[i].d;
        std::cout << (res[i].pass ? "pass  " : "FAIL  ") << leaf_label(d);
        if (jobs[i].cls) std::cout << " C=" << jobs[i].cls->name;
        std::cout << "  dim " << d.leaf_dim << " rank " << d.symplectic_rank << " sampled ranks [";
        for (std::size_t k = 0; k < res[i].ranks_lr.size(); ++k) std::cout << (k ? " " : "") << res[i].ranks_lr[k];
        std::cout << "]";
        if (!res[i].pass) std::cout << "  " << res[i].failure;
        std::cout << "\n";
        ok += res[i].pass;
    }
    std::cout << ok << "/" << jobs.size() << " leaves pass\n";
    return ok == jobs.size() ? 0 : kExitFail;
}

int cmd_verify_delta(const Common& c) {
    auto ctx = make_context(c);
    Series s = parse_series(c.series);
    SeriesModel model = build_model(s, ctx->g, c.n);
    std::vector<ClassRepAd> classes;
    if (s == Series::FFtilde) {
        if (ctx->rs.series == 'A') {
            SLRealization sl(ctx->rs.rank + 1);
            for (auto& cr : class_reps_for(c, sl)) classes.push_back({cr.name, sl.adjoint_matrix(cr.rep)});
        } else {
            classes.push_back({"identity", Matrix::identity(ctx->g->dim)});
        }
    }
    OrbitPairIndex ix = orbit_pair_index(model, *ctx->W, classes);
    DeltaSweep ds = delta_sweep(model, ix, c.jobs);
    for (std::size_t i : ds.failures) {
        std::string name;
        ix.at(i, &name);
        std::cout << "FAIL  c = [" << name << "]  delta " << ds.records[i].delta_lagrangian << " / "
                  << ds.records[i].delta_quotient << "\n";
    }
    std::cout << (ds.failures.empty() ? "pass  " : "FAIL  ") << series_name(s) << " " << ctx->rs.label()
              << " n=" << c.n << ": " << ds.zero_both << "/" << ds.cases
              << " orbit-pair setups report delta = 0 by both routes; route disagreements " << ds.disagree << "\n";
    return ds.failures.empty() ? 0 : kExitFail;
}

int cmd_stabilizer(const Common& c, const std::string& u_text, const std::string& v_text, const std::string& w_text) {
    auto ctx = make_context(c);
    const WeylGroup& W = *ctx->W;
    Series s = parse_series(c.series);
    WeylSequence u = parse_sequence(W, u_text);
    LeafDescriptor d;
    switch (s) {
        case Series::F: {
            if (w_text.empty()) throw ParseError("F needs --w");
            WeylElement w = W.parse(w_text);
            if (!W.bruhat_leq(w, W.demazure_of_sequence(u)))
                throw EmptyStratum("empty stratum: w ≰ Demazure product");
            d = leaf_F(W, u, w);
            break;
        }
        case Series::FF: {
            if (w_text.empty() || v_text.empty()) throw ParseError("FF needs --v and --w");
            WeylSequence v = parse_sequence(W, v_text);
            if (v.size() != u.size()) throw ParseError("u and v must have the same length");
            WeylElement w = W.parse(w_text);
            if (!wuv_nonempty(W, u, v, w)) throw EmptyStratum("empty stratum: w ≰ Demazure product");
            d = leaf_FF(W, u, v, w);
            break;
        }
        case Series::Ftilde: {
            std::string vt = !v_text.empty() ? v_text : w_text;
            if (vt.empty()) throw ParseError("Ft needs --v");
            d = leaf_Ftilde(W, u, W.parse(vt));
            break;
        }
        case Series::FFtilde: {
            if (v_text.empty()) throw ParseError("FFt needs --v");
            WeylSequence v = parse_sequence(W, v_text);
            int cd = c.class_dim;
            if (!c.class_rep_file.empty()) {
                auto sl = realization_for(ctx->rs);
                cd = sl->class_dim(load_class_rep(c.class_rep_file, sl->m()));
            }
            if (cd < 0) throw ParseError("FFt needs --class-rep or --class-dim");
            d = leaf_FFtilde(W, u, v, cd);
            break;
        }
    }
    std::cout << "dim " << d.leaf_dim << ", rank " << d.symplectic_rank << ", stabilizer " << span_string(d.stabilizer)
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-leaves, symplectic ranks and leaf stabilizers of mixed product Poisson structures"};
    app.require_subcommand(1);
    Common c;
    c.jobs = 1;

    auto add_type = [&](CLI::App* sub, bool with_n = true) {
        sub->add_option("--type", c.type, "root system label, e.g. A2, B2, G2")->required();
        if (with_n) sub->add_option("--n", c.n, "number of factors")->check(CLI::PositiveNumber);
        sub->add_option("--form-scale", c.form_scale, "positive rational rescaling of the invariant form");
    };
    auto add_class = [&](CLI::App* sub) {
        auto* o1 = sub->add_option("--class-rep", c.class_rep_file, "JSON file with a conjugacy class representative");
        auto* o2 = sub->add_option("--class-dim", c.class_dim, "conjugacy class dimension");
        o1->excludes(o2);
    };

    std::string out, format = "json";
    double cap = kDefaultCap;
    auto* leaves = app.add_subcommand("leaves", "emit the leaf table of a series");
    leaves->add_option("--series", c.series, "F, FF, Ft or FFt")->required();
    add_type(leaves);
    add_class(leaves);
    leaves->add_option("--out", out, "output path (default stdout)");
    leaves->add_option("--format", format, "json or csv");
    leaves->add_option("--max-index", cap, "cap on the number of candidate indices");

    auto* verify = app.add_subcommand("verify", "verification sweeps");
    verify->require_subcommand(1);
    auto* v_cyb = verify->add_subcommand("cyb", "classical Yang-Baxter equation for r_st, r^(n), r^<n+1>");
    add_type(v_cyb);
    auto* v_tilde = verify->add_subcommand("tilde", "images of r^(n)_pm against their predicted subalgebras");
    add_type(v_tilde);
    int samples = 3;
    unsigned long long seed = 1;
    auto* v_rank = verify->add_subcommand("rank", "oracle rank, dimension and stabilizers at sampled leaf points");
    v_rank->add_option("--series", c.series, "F, FF, Ft or FFt")->required();
    add_type(v_rank);
    add_class(v_rank);
    v_rank->add_option("--samples", samples, "points per leaf")->check(CLI::PositiveNumber);
    v_rank->add_option("--seed", seed, "sampling seed");
    v_rank->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* v_delta = verify->add_subcommand("delta", "delta = 0 over all orbit-pair setups");
    v_delta->add_option("--series", c.series, "F, FF, Ft or FFt (default F)");
    add_type(v_delta);
    add_class(v_delta);
    v_delta->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);

    std::string u_text, v_text, w_text;
    auto* stab = app.add_subcommand("stabilizer", "single-leaf report");
    stab->add_option("--series", c.series, "F, FF, Ft or FFt")->required();
    add_type(stab, false);
    add_class(stab);
    stab->add_option("--u", u_text, "u_1,...,u_n with each u_j a word like \"s1 s2\"")->required();
    stab->add_option("--v", v_text, "v_1,...,v_n (FF, FFt) or v (Ft)");
    stab->add_option("--w", w_text, "w (F, FF)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*leaves) return cmd_leaves(c, out, format, cap);
        if (*v_cyb) return cmd_verify_cyb(c);
        if (*v_tilde) return cmd_verify_tilde(c);
        if (*v_rank) return cmd_verify_rank(c, samples, seed);
        if (*v_delta) return cmd_verify_delta(c);
        if (*stab) return cmd_stabilizer(c, u_text, v_text, w_text);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const EmptyStratum& e) {
        std::cerr << e.what() << "\n";
        return kExitEmpty;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SamplingFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitParse;
}
