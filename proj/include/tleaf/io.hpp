#pragma once

#include "series.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tleaf {

constexpr const char* kToolVersion = "0.1.0";

struct LeafTable {
    std::string type;
    Series series = Series::F;
    int n = 1;
    std::string normalization;
    std::string version = kToolVersion;
    std::optional<unsigned long long> seed;
    std::vector<LeafDescriptor> rows;
};

inline std::string normalization_string(const Rational& form_scale) {
    return "chevalley basis h_i (simple coroots), E_a, E_-a with <E_a,E_-a>=1; form scale " + form_scale.str() +
           "; r_st = 1/2 sum (B^-1)_ij h_i h_j + sum E_-a E_a";
}

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

inline bool operator==(const LeafDescriptor& a, const LeafDescriptor& b) {
    return a.series == b.series && a.n == b.n && a.u == b.u && a.v == b.v && a.w == b.w && a.class_dim == b.class_dim &&
           a.ambient_dim == b.ambient_dim && a.leaf_dim == b.leaf_dim && a.symplectic_rank == b.symplectic_rank &&
           a.stabilizer == b.stabilizer;
}

inline bool operator==(const LeafTable& a, const LeafTable& b) {
    return a.type == b.type && a.series == b.series && a.n == b.n && a.normalization == b.normalization &&
           a.version == b.version && a.seed == b.seed && a.rows == b.rows;
}

namespace detail {

inline nlohmann::json words(const WeylSequence& s) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& x : s) j.push_back(x.str());
    return j;
}

inline WeylSequence parse_words(const WeylGroup& W, const nlohmann::json& j) {
    WeylSequence s;
    for (auto& x : j) s.push_back(W.parse(x.get<std::string>()));
    return s;
}

inline nlohmann::json basis_json(const Subspace& s) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& v : s.vectors()) {
        nlohmann::json row = nlohmann::json::array();
        for (auto& x : v) row.push_back(x.str());
        j.push_back(row);
    }
    return j;
}

inline std::string basis_string(const Subspace& s) {
    std::string out;
    bool first = true;
    for (auto& v : s.vectors()) {
        if (!first) out += ";";
        first = false;
        out += "(";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
        out += ")";
    }
    return out;
}

inline std::string seq_string(const WeylSequence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "|" : "") + s[i].str();
    return out;
}

}  // namespace detail

inline nlohmann::json to_json(const LeafTable& t) {
    nlohmann::json j;
    j["meta"] = {{"series", series_name(t.series)},
                 {"type", t.type},
                 {"n", t.n},
                 {"normalization", t.normalization},
                 {"version", t.version},
                 {"seed", t.seed ? nlohmann::json(*t.seed) : nlohmann::json(nullptr)},
                 {"count", t.rows.size()}};
    nlohmann::json rows = nlohmann::json::array();
    for (auto& d : t.rows) {
        nlohmann::json r;
        r["u"] = detail::words(d.u);
        if (d.v) r["v"] = detail::words(*d.v);
        if (d.w) r["w"] = d.w->str();
        if (d.class_dim) r["class_dim"] = *d.class_dim;
        r["ambient_dim"] = d.ambient_dim;
        r["leaf_dim"] = d.leaf_dim;
        r["rank"] = d.symplectic_rank;
        r["stab_dim"] = d.stabilizer.dim();
        r["stab_basis"] = detail::basis_json(d.stabilizer);
        rows.push_back(r);
    }
    j["leaves"] = rows;
    return j;
}

inline std::string serialize_json(const LeafTable& t) { return to_json(t).dump(2) + "\n"; }

inline LeafTable parse_json(const WeylGroup& W, const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        LeafTable t;
        const auto& m = j.at("meta");
        t.series = parse_series(m.at("series").get<std::string>());
        t.type = m.at("type").get<std::string>();
        t.n = m.at("n").get<int>();
        t.normalization = m.at("normalization").get<std::string>();
        t.version = m.at("version").get<std::string>();
        if (!m.at("seed").is_null()) t.seed = m.at("seed").get<unsigned long long>();
        const int r = W.rank();
        for (auto& x : j.at("leaves")) {
            LeafDescriptor d;
            d.series = t.series;
            d.n = t.n;
            d.u = detail::parse_words(W, x.at("u"));
            if (x.contains("v")) d.v = detail::parse_words(W, x.at("v"));
            if (x.contains("w")) d.w = W.parse(x.at("w").get<std::string>());
            if (x.contains("class_dim")) d.class_dim = x.at("class_dim").get<int>();
            d.ambient_dim = x.at("ambient_dim").get<int>();
            d.leaf_dim = x.at("leaf_dim").get<int>();
            d.symplectic_rank = x.at("rank").get<int>();
            std::vector<Vec> basis;
            for (auto& row : x.at("stab_basis")) {
                Vec v;
                for (auto& e : row) v.push_back(Rational::parse(e.get<std::string>()));
                if ((int)v.size() != r) throw ParseError("stabilizer vector has wrong length");
                basis.push_back(v);
            }
            d.stabilizer = Subspace::span(basis, r);
            if ((int)d.stabilizer.dim() != x.at("stab_dim").get<int>()) throw ParseError("stab_dim mismatch");
            t.rows.push_back(d);
        }
        if (m.contains("count") && m.at("count").get<std::size_t>() != t.rows.size())
            throw ParseError("row count does not match metadata");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad leaf table: ") + e.what());
    }
}

// CSV: stabilizers flattened to a dimension and a basis string.
inline std::string serialize_csv(const LeafTable& t) {
    std::ostringstream os;
    os << "# series=" << series_name(t.series) << " type=" << t.type << " n=" << t.n << " version=" << t.version
       << " seed=" << (t.seed ? std::to_string(*t.seed) : "none") << " count=" << t.rows.size() << "\n";
    os << "u,v,w,class_dim,ambient_dim,leaf_dim,rank,stab_dim,stab_basis\n";
    for (auto& d : t.rows) {
        os << detail::seq_string(d.u) << "," << (d.v ? detail::seq_string(*d.v) : "") << ","
           << (d.w ? d.w->str() : "") << "," << (d.class_dim ? std::to_string(*d.class_dim) : "") << ","
           << d.ambient_dim << "," << d.leaf_dim << "," << d.symplectic_rank << "," << d.stabilizer.dim() << ",\""
           << detail::basis_string(d.stabilizer) << "\"\n";
    }
    return os.str();
}

// Matrix of rational strings, either a bare array of rows or {"matrix": [...]}.
inline Matrix parse_matrix_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        const auto& rows = j.is_object() ? j.at("matrix") : j;
        if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
        const std::size_t m = rows.size();
        Matrix out(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            if (!rows[i].is_array() || rows[i].size() != m) throw ParseError("matrix must be square");
            for (std::size_t k = 0; k < m; ++k) {
                const auto& e = rows[i][k];
                out(i, k) = e.is_string() ? Rational::parse(e.get<std::string>()) : Rational(e.get<long long>());
            }
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad matrix file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad matrix entry: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tleaf
