#pragma once

#include "fim/words.hpp"

#include <random>
#include <vector>

namespace testutil {

inline std::vector<fim::Letter> random_raw_word(std::mt19937_64& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> letter_dist(0, 2 * rank - 1);
    int len = len_dist(rng);
    std::vector<fim::Letter> word;
    word.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        int c = letter_dist(rng);
        word.emplace_back(c / 2 + 1, c % 2 == 0 ? +1 : -1);
    }
    return word;
}

inline bool is_freely_reduced(const std::vector<fim::Letter>& word) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i + 1] == word[i].inverse()) return false;
    return true;
}

}  // namespace testutil
