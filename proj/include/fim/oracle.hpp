#pragma once

#include "fim/counting.hpp"
#include "fim/munn.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fim {

inline constexpr unsigned long long default_word_budget = 10'000'000ULL;

struct BudgetExceeded : std::runtime_error {
    long completed;  // largest fully enumerated index before the budget ran out

    BudgetExceeded(long completed_, const std::string& what_)
        : std::runtime_error(what_), completed(completed_) {}
};

// Breadth-first census of elements by length over the right Cayley graph:
// every element first reached by a word of length K has length exactly K.
// Formula-free; used to cross-check the closed-form counts.
struct BfsCensus {
    int rank = 1;
    long requested_k = 0;
    long completed_k = 0;
    bool exhausted = false;                 // stopped early on the work budget
    unsigned long long words_examined = 0;  // generator products evaluated
    std::vector<std::map<std::pair<long, long>, BigCount>> levels;  // levels[K]: (t,k) -> count

    BigCount sphere(long K) const {
        if (K < 0 || K > completed_k) throw std::out_of_range("sphere level not enumerated");
        BigCount total = 0;
        for (const auto& [tk, c] : levels[static_cast<std::size_t>(K)]) total += c;
        return total;
    }

    // The budget is a ceiling on generator products, checked before each level,
    // so the census always ends on a complete sphere.
    static BfsCensus run(int rank, long K_max, unsigned long long budget = default_word_budget) {
        check_rank(rank);
        if (K_max < 0) throw std::invalid_argument("K_max must be >= 0");
        BfsCensus census;
        census.rank = rank;
        census.requested_k = K_max;

        std::vector<MunnTree> gens;
        gens.reserve(2 * static_cast<std::size_t>(rank));
        for (int i = 1; i <= rank; ++i)
            for (int sign : {+1, -1}) gens.push_back(MunnTree::eval({Letter(i, sign)}, rank));

        MunnTree id = MunnTree::identity(rank);
        std::unordered_set<std::string> seen{id.canonical_key()};
        std::vector<std::string> frontier{id.canonical_key()};
        census.levels.push_back({{{0, 0}, BigCount(1)}});

        for (long K = 1; K <= K_max; ++K) {
            unsigned long long cost = frontier.size() * gens.size();
            if (census.words_examined + cost > budget) {
                census.exhausted = true;
                census.completed_k = K - 1;
                return census;
            }
            std::vector<std::string> next;
            census.levels.emplace_back();
            for (const std::string& key : frontier) {
                MunnTree m = MunnTree::from_canonical_key(key, rank);
                for (const MunnTree& g : gens) {
                    MunnTree n = multiply(m, g);
                    std::string nk = n.canonical_key();
                    if (!seen.insert(nk).second) continue;
                    if (n.length() != K)
                        throw std::logic_error("element length disagrees with its first level");
                    census.levels.back()[n.trunk_branch_counts()] += 1;
                    next.push_back(std::move(nk));
                }
            }
            census.words_examined += cost;
            frontier.swap(next);
        }
        census.completed_k = K_max;
        return census;
    }
};

// Sphere sizes [S(0), ..., S(K_max)] by exhaustive search.
inline std::vector<BigCount> enumerate_sphere_sizes(int rank, long K_max,
                                                    unsigned long long budget = default_word_budget) {
    BfsCensus census = BfsCensus::run(rank, K_max, budget);
    if (census.exhausted)
        throw BudgetExceeded(census.completed_k,
                             "work budget exhausted after sphere " + std::to_string(census.completed_k));
    std::vector<BigCount> out;
    out.reserve(static_cast<std::size_t>(K_max) + 1);
    for (long K = 0; K <= K_max; ++K) out.push_back(census.sphere(K));
    return out;
}

// Elements with exactly t trunk and k branch edges, by exhaustive search.
inline BigCount enumerate_munn_trees(int rank, long t, long k,
                                     unsigned long long budget = default_word_budget) {
    if (t < 0 || k < 0) throw std::invalid_argument("t and k must be >= 0");
    long K = t + 2 * k;
    BfsCensus census = BfsCensus::run(rank, K, budget);
    if (census.exhausted)
        throw BudgetExceeded(census.completed_k,
                             "work budget exhausted after sphere " + std::to_string(census.completed_k));
    const auto& level = census.levels[static_cast<std::size_t>(K)];
    auto it = level.find({t, k});
    return it == level.end() ? BigCount(0) : it->second;
}

// Subtrees with k edges of the infinite tree whose root has q child slots and
// every other vertex p, children distinguishable by their slot index. Counted
// one by one: each state decides the first pending slot, taking it opens p
// more, and a completed selection of k edges is one subtree.
inline BigCount enumerate_tree_diagrams(long p, long q, long k,
                                        unsigned long long step_budget = 2'000'000'000ULL) {
    if (p < 1 || q < 1) throw std::invalid_argument("p and q must be >= 1");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    BigCount count = 0;
    unsigned long long steps = 0;
    std::vector<std::pair<long, long>> stack{{q, 0}};  // (pending slots, edges taken)
    while (!stack.empty()) {
        auto [pending, taken] = stack.back();
        stack.pop_back();
        if (++steps > step_budget)
            throw BudgetExceeded(-1, "tree-diagram enumeration exceeded its step budget");
        if (taken == k) {
            count += 1;
            continue;
        }
        if (pending == 0) continue;
        stack.push_back({pending - 1, taken});          // leave the slot empty
        stack.push_back({pending - 1 + p, taken + 1});  // take it, opening p child slots
    }
    return count;
}

}  // namespace fim
