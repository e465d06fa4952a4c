#pragma once

#include "lie_core.hpp"

#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tleaf {

class WeylGroup;

// Element handle: index into the enumerated group.
struct WeylElement {
    const WeylGroup* group = nullptr;
    int id = 0;

    const std::vector<int>& word() const;
    int length() const;
    const Matrix& matrix() const;  // action on h in simple-coroot coordinates
    std::string str() const;

    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.group == b.group && a.id == b.id; }
    friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
    friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.id < b.id; }
};

using WeylSequence = std::vector<WeylElement>;

class WeylGroup {
public:
    explicit WeylGroup(const RootSystem& rs) : rs_(rs) {
        const int r = rs.rank;
        // simple reflections on h (coroot coords): column i of s_j is e_i - a_ij e_j
        for (int j = 0; j < r; ++j) {
            Matrix m = Matrix::identity(r);
            for (int i = 0; i < r; ++i) m(j, i) -= rs.cartan[i][j];
            gen_h_.push_back(m);
        }
        std::map<std::vector<long long>, int> seen;
        auto key = [](const Matrix& m) {
            std::vector<long long> k;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j).to_int());
            return k;
        };
        words_.push_back({});
        mats_.push_back(Matrix::identity(r));
        root_mats_.push_back(Matrix::identity(r));
        seen[key(mats_[0])] = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            for (int s = 0; s < r; ++s) {
                Matrix m = mats_[k] * gen_h_[s];
                auto kk = key(m);
                if (seen.count(kk)) continue;
                int id = (int)words_.size();
                seen[kk] = id;
                auto w = words_[k];
                w.push_back(s);
                words_.push_back(w);
                mats_.push_back(m);
                root_mats_.push_back(root_mats_[k] * rs.simple_reflection_matrices[s]);
            }
        }
        const int N = (int)words_.size();
        rmul_.assign(N * r, -1);
        for (int k = 0; k < N; ++k)
            for (int s = 0; s < r; ++s) rmul_[k * r + s] = seen.at(key(mats_[k] * gen_h_[s]));
        longest_ = 0;
        for (int k = 0; k < N; ++k)
            if (words_[k].size() > words_[longest_].size()) longest_ = k;
        intervals_.resize(N);
        for (int k = 0; k < N; ++k) intervals_[k] = compute_interval(k);
    }

    WeylGroup(const WeylGroup&) = delete;
    WeylGroup& operator=(const WeylGroup&) = delete;

    const RootSystem& root_system() const { return rs_; }
    int size() const { return (int)words_.size(); }
    int rank() const { return rs_.rank; }
    WeylElement element(int id) const { return {this, id}; }
    WeylElement identity() const { return {this, 0}; }
    WeylElement simple(int s) const { return {this, rmul_[s]}; }
    WeylElement longest() const { return {this, longest_}; }
    std::vector<WeylElement> elements() const {
        std::vector<WeylElement> v;
        for (int k = 0; k < size(); ++k) v.push_back(element(k));
        return v;
    }

    const std::vector<int>& word(int id) const { return words_[id]; }
    const Matrix& matrix(int id) const { return mats_[id]; }
    const Matrix& root_matrix(int id) const { return root_mats_[id]; }
    const Matrix& simple_h(int s) const { return gen_h_[s]; }

    WeylElement times_simple(const WeylElement& w, int s) const { return {this, rmul_[w.id * rank() + s]}; }
    WeylElement simple_times(int s, const WeylElement& w) const { return inverse(times_simple(inverse(w), s)); }

    WeylElement multiply(const WeylElement& a, const WeylElement& b) const {
        int id = a.id;
        for (int s : words_[b.id]) id = rmul_[id * rank() + s];
        return {this, id};
    }
    WeylElement inverse(const WeylElement& a) const {
        int id = 0;
        const auto& w = words_[a.id];
        for (auto it = w.rbegin(); it != w.rend(); ++it) id = rmul_[id * rank() + *it];
        return {this, id};
    }

    int length(const WeylElement& w) const { return (int)words_[w.id].size(); }

    // Length via the inversion count on positive roots, independent of the word.
    int inversion_count(const WeylElement& w) const {
        int c = 0;
        const Matrix& m = root_mats_[w.id];
        for (const auto& a : rs_.positive_roots) {
            Vec v(a.begin(), a.end());
            Vec img = m * v;
            bool neg = false;
            for (auto& x : img)
                if (!x.is_zero()) {
                    neg = x.sign() < 0;
                    break;
                }
            c += neg;
        }
        return c;
    }

    WeylElement from_word(const std::vector<int>& word) const {
        int id = 0;
        for (int s : word) {
            if (s < 0 || s >= rank()) throw std::invalid_argument("simple reflection index out of range");
            id = rmul_[id * rank() + s];
        }
        return {this, id};
    }

    // "s1 s2 s1" or "e"
    WeylElement parse(const std::string& text) const {
        std::istringstream is(text);
        std::string tok;
        std::vector<int> word;
        while (is >> tok) {
            if (tok == "e") continue;
            if (tok.size() < 2 || tok[0] != 's') throw std::invalid_argument("bad Weyl word: " + text);
            int s;
            try {
                std::size_t pos;
                s = std::stoi(tok.substr(1), &pos);
                if (pos != tok.size() - 1) throw std::invalid_argument("");
            } catch (...) {
                throw std::invalid_argument("bad Weyl word: " + text);
            }
            word.push_back(s - 1);
        }
        return from_word(word);
    }

    std::string render(const WeylElement& w) const {
        const auto& wd = words_[w.id];
        if (wd.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < wd.size(); ++i) s += (i ? " s" : "s") + std::to_string(wd[i] + 1);
        return s;
    }

    // Subword test against the canonical word of y.
    bool bruhat_leq(const WeylElement& x, const WeylElement& y) const {
        check(x);
        check(y);
        return lower_interval(y)[x.id];
    }

    // Cross-check implementation: lifting property recursion.
    bool bruhat_leq_lifting(const WeylElement& x, const WeylElement& y) const {
        check(x);
        check(y);
        if (length(y) == 0) return length(x) == 0;
        if (length(x) > length(y)) return false;
        int s = words_[y.id].back();
        WeylElement ys = times_simple(y, s), xs = times_simple(x, s);
        if (length(xs) < length(x)) return bruhat_leq_lifting(xs, ys);
        return bruhat_leq_lifting(x, ys);
    }

    // Indicator of [e, y] by reduced subwords of y's canonical word.
    const std::vector<char>& lower_interval(const WeylElement& y) const { return intervals_[y.id]; }

    WeylElement demazure(const WeylElement& u, const WeylElement& v) const {
        WeylElement acc = u;
        for (int s : words_[v.id]) {
            WeylElement t = times_simple(acc, s);
            if (length(t) > length(acc)) acc = t;
        }
        return acc;
    }

    // X . BsB
    std::set<WeylElement> cell_product(const std::set<WeylElement>& X, int s) const {
        std::set<WeylElement> out;
        for (auto& x : X) {
            WeylElement xs = times_simple(x, s);
            out.insert(xs);
            if (length(xs) < length(x)) out.insert(x);
        }
        return out;
    }

    // Cells of BuB . BvB.
    std::set<WeylElement> cell_product(const std::set<WeylElement>& X, const WeylElement& v) const {
        std::set<WeylElement> cur = X;
        for (int s : words_[v.id]) cur = cell_product(cur, s);
        return cur;
    }

    WeylElement product_of_sequence(const WeylSequence& u) const {
        if (u.empty()) throw std::invalid_argument("empty Weyl sequence");
        WeylElement acc = identity();
        for (auto& x : u) acc = multiply(acc, x);
        return acc;
    }
    WeylElement demazure_of_sequence(const WeylSequence& u) const {
        if (u.empty()) throw std::invalid_argument("empty Weyl sequence");
        WeylElement acc = identity();
        for (auto& x : u) acc = demazure(acc, x);
        return acc;
    }
    int length(const WeylSequence& u) const {
        int l = 0;
        for (auto& x : u) l += length(x);
        return l;
    }

    struct SignedEndo {
        int ker_dim;
        Subspace image;
    };
    // (1 + sign * M_w) on h
    SignedEndo signed_endomorphism(int sign, const WeylElement& w) const {
        Matrix m = Matrix::identity(rank()) + Rational(sign) * matrix(w.id);
        Subspace im = image(m);
        return {rank() - (int)im.dim(), im};
    }

private:
    RootSystem rs_;
    std::vector<Matrix> gen_h_;
    std::vector<std::vector<int>> words_;
    std::vector<Matrix> mats_, root_mats_;
    std::vector<int> rmul_;
    int longest_ = 0;
    std::vector<std::vector<char>> intervals_;

    std::vector<char> compute_interval(int y) const {
        std::vector<char> reach(words_.size(), 0);
        reach[0] = 1;
        for (int s : words_[y]) {
            std::vector<char> next = reach;
            for (int k = 0; k < (int)words_.size(); ++k)
                if (reach[k]) {
                    int ks = rmul_[k * rank() + s];
                    if (words_[ks].size() > words_[k].size()) next[ks] = 1;
                }
            reach.swap(next);
        }
        return reach;
    }

    void check(const WeylElement& x) const {
        if (x.group != this) throw std::invalid_argument("Weyl element from another group");
    }
};

inline const std::vector<int>& WeylElement::word() const { return group->word(id); }
inline int WeylElement::length() const { return group->length(*this); }
inline const Matrix& WeylElement::matrix() const { return group->matrix(id); }
inline std::string WeylElement::str() const { return group->render(*this); }

// Nonemptiness of the (u, v, w) stratum: w <= (v1 * ... * vn)^{-1} * u1 * ... * un.
inline bool wuv_nonempty(const WeylGroup& W, const WeylSequence& u, const WeylSequence& v, const WeylElement& w) {
    WeylElement dv = W.inverse(W.demazure_of_sequence(v));
    WeylElement target = W.demazure(dv, W.demazure_of_sequence(u));
    return W.bruhat_leq(w, target);
}

// Same question answered through cell products: the B_-\G/B cells reached by
// B_- v_n^{-1} B_- ... B_- v_1^{-1} B_- . (Bu_1B ... Bu_nB) contain B_- w B?
// B_- x B meets B z B iff x <= z, and B_- s B_- . B_- x B is {sx} if l(sx) < l(x), else {x, sx}.
inline bool wuv_nonempty_cells(const WeylGroup& W, const WeylSequence& u, const WeylSequence& v, const WeylElement& w) {
    std::set<WeylElement> X{W.identity()};
    for (auto& x : u) X = W.cell_product(X, x);
    // Z: cells of B_-v_1B_- ... B_-v_nB_- . B_-wB, letters applied right to left.
    std::set<WeylElement> Z{w};
    for (std::size_t k = v.size(); k-- > 0;) {
        const auto& word = v[k].word();
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            std::set<WeylElement> nz;
            for (auto& z : Z) {
                WeylElement sz = W.simple_times(*it, z);
                nz.insert(sz);
                if (W.length(sz) > W.length(z)) nz.insert(z);
            }
            Z.swap(nz);
        }
    }
    for (auto& z : Z)
        for (auto& x : X)
            if (W.bruhat_leq(z, x)) return true;
    return false;
}

}  // namespace tleaf
