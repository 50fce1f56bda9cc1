#pragma once

#include "fim/words.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fim {

// Element of the free inverse monoid: a finite prefix-closed set of reduced
// words (vertices of a subtree of the free-group Cayley graph, rooted at the
// identity) together with a designated vertex. Immutable value.
class MunnTree {
  public:
    MunnTree(int rank, std::vector<ReducedWord> vertices, ReducedWord designated)
        : rank_(check_rank(rank)), vertices_(std::move(vertices)), designated_(std::move(designated)) {
        normalize_and_validate();
    }

    static MunnTree identity(int rank) {
        return MunnTree(rank, {ReducedWord(rank)}, ReducedWord(rank));
    }

    // walk the word from the identity, collecting every vertex visited
    static MunnTree eval(const std::vector<Letter>& word, int rank) {
        check_rank(rank);
        std::string cur;
        std::vector<ReducedWord> verts;
        verts.reserve(word.size() + 1);
        verts.push_back(ReducedWord(rank));
        for (const Letter& a : word) {
            if (a.index > rank) throw std::out_of_range("letter index out of range");
            detail::push_reduced(cur, detail::pack_letter(a));
            verts.push_back(ReducedWord::from_packed(rank, cur));
        }
        ReducedWord g = verts.back();
        MunnTree m(rank, std::move(verts), std::move(g));
        // every step moves along one edge, so word length and t+2k share parity
        if (((static_cast<long>(word.size()) - m.length()) & 1L) != 0)
            throw std::logic_error("word length parity does not match element length");
        return m;
    }

    int rank() const { return rank_; }
    const std::vector<ReducedWord>& vertices() const { return vertices_; }  // shortlex sorted
    const ReducedWord& designated() const { return designated_; }

    bool is_idempotent() const { return designated_.empty(); }

    // (t, k): t trunk edges on the path to the designated vertex, k branch edges
    std::pair<long, long> trunk_branch_counts() const {
        long t = static_cast<long>(designated_.size());
        return {t, static_cast<long>(vertices_.size()) - 1 - t};
    }

    // minimal length of a word evaluating to this element, t + 2k
    long length() const {
        auto [t, k] = trunk_branch_counts();
        return t + 2 * k;
    }

    // canonical word of length exactly t+2k: at each trunk vertex, depth-first
    // excursions into the branch subtrees in letter order, then one trunk step
    std::vector<Letter> geodesic_word() const {
        std::map<std::string, std::vector<const ReducedWord*>> children;
        for (const ReducedWord& v : vertices_) {
            if (v.empty()) continue;
            children[v.packed().substr(0, v.size() - 1)].push_back(&v);
        }
        std::vector<Letter> out;
        auto emit_subtree = [&](auto&& self, const ReducedWord& v) -> void {
            out.push_back(v.letter(v.size() - 1));
            auto it = children.find(v.packed());
            if (it != children.end())
                for (const ReducedWord* c : it->second) self(self, *c);
            out.push_back(v.letter(v.size() - 1).inverse());
        };
        std::vector<ReducedWord> trunk = prefixes(designated_);
        for (std::size_t i = 0; i < trunk.size(); ++i) {
            const ReducedWord* next = i + 1 < trunk.size() ? &trunk[i + 1] : nullptr;
            auto it = children.find(trunk[i].packed());
            if (it != children.end())
                for (const ReducedWord* c : it->second)
                    if (!next || !(*c == *next)) emit_subtree(emit_subtree, *c);
            if (next) out.push_back(next->letter(next->size() - 1));
        }
        if (static_cast<long>(out.size()) != length())
            throw std::logic_error("geodesic length mismatch");
        return out;
    }

    // injective per rank: designated word, then the sorted vertices, NUL-terminated each
    std::string canonical_key() const {
        std::string key = designated_.packed();
        key.push_back('\0');
        for (const ReducedWord& v : vertices_) {
            key += v.packed();
            key.push_back('\0');
        }
        return key;
    }

    static MunnTree from_canonical_key(std::string_view key, int rank) {
        check_rank(rank);
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == '\0') {
                parts.push_back(key.substr(start, i - start));
                start = i + 1;
            }
        }
        if (start != key.size() || parts.size() < 2)
            throw std::invalid_argument("malformed canonical key");
        ReducedWord g = ReducedWord::from_packed(rank, std::string(parts[0]));
        std::vector<ReducedWord> verts;
        verts.reserve(parts.size() - 1);
        for (std::size_t i = 1; i < parts.size(); ++i)
            verts.push_back(ReducedWord::from_packed(rank, std::string(parts[i])));
        return MunnTree(rank, std::move(verts), std::move(g));
    }

    // {v1,v2,...}|g with vertices in shortlex order, e.g. {1,a,b}|b
    std::string text() const {
        std::string out = "{";
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i) out.push_back(',');
            out += vertices_[i].text();
        }
        out += "}|";
        out += designated_.text();
        return out;
    }

    static MunnTree parse(std::string_view s, int rank) {
        auto bar = s.rfind('|');
        if (s.size() < 5 || s.front() != '{' || bar == std::string_view::npos || bar < 3 ||
            s[bar - 1] != '}')
            throw std::invalid_argument("malformed tree text, expected {v1,v2,...}|g");
        std::string_view body = s.substr(1, bar - 2);
        std::vector<ReducedWord> verts;
        std::size_t start = 0;
        while (true) {
            auto comma = body.find(',', start);
            std::string_view piece =
                comma == std::string_view::npos ? body.substr(start) : body.substr(start, comma - start);
            verts.push_back(ReducedWord::parse(piece, rank));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return MunnTree(rank, std::move(verts), ReducedWord::parse(s.substr(bar + 1), rank));
    }

    MunnTree inverse() const {
        ReducedWord ginv = designated_.inverse();
        std::vector<ReducedWord> verts;
        verts.reserve(vertices_.size());
        for (const ReducedWord& v : vertices_) verts.push_back(concat(ginv, v));
        return MunnTree(rank_, std::move(verts), std::move(ginv));
    }

    // union of the left tree with the translated right tree; designated vertices multiply
    friend MunnTree multiply(const MunnTree& a, const MunnTree& b) {
        if (a.rank_ != b.rank_) throw RankMismatchError();
        std::vector<ReducedWord> verts = a.vertices_;
        verts.reserve(verts.size() + b.vertices_.size());
        for (const ReducedWord& v : b.vertices_) verts.push_back(concat(a.designated_, v));
        return MunnTree(a.rank_, std::move(verts), concat(a.designated_, b.designated_));
    }

    friend MunnTree operator*(const MunnTree& a, const MunnTree& b) { return multiply(a, b); }

    friend bool operator==(const MunnTree& a, const MunnTree& b) {
        return a.designated_ == b.designated_ && a.vertices_ == b.vertices_;
    }

  private:
    int rank_;
    std::vector<ReducedWord> vertices_;
    ReducedWord designated_;

    void normalize_and_validate() {
        for (const ReducedWord& v : vertices_)
            if (v.rank() != rank_) throw RankMismatchError();
        if (designated_.rank() != rank_) throw RankMismatchError();
        auto less = [](const ReducedWord& a, const ReducedWord& b) { return (a <=> b) < 0; };
        std::sort(vertices_.begin(), vertices_.end(), less);
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        if (vertices_.empty() || !vertices_.front().empty())
            throw std::invalid_argument("vertex set must contain the identity");
        if (!std::binary_search(vertices_.begin(), vertices_.end(), designated_, less))
            throw std::invalid_argument("designated vertex must be in the vertex set");
        for (const ReducedWord& v : vertices_) {
            if (v.empty()) continue;
            ReducedWord parent = ReducedWord::from_packed(rank_, v.packed().substr(0, v.size() - 1));
            if (!std::binary_search(vertices_.begin(), vertices_.end(), parent, less))
                throw std::invalid_argument("vertex set is not prefix-closed");
        }
    }
};

inline MunnTree invert(const MunnTree& m) { return m.inverse(); }

}  // namespace fim
