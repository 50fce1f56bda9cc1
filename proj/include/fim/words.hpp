#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fim {

using BigCount = mpz_class;

// Letters pack into one signed byte, so word and tree operations cap the rank here.
inline constexpr int max_rank = 127;

struct RankMismatchError : std::invalid_argument {
    RankMismatchError() : std::invalid_argument("operands declare different alphabet ranks") {}
};

inline int check_rank(int rank) {
    if (rank < 1 || rank > max_rank)
        throw std::invalid_argument("alphabet rank must be in [1, 127]");
    return rank;
}

// Generator x_index (sign +1) or its inverse (sign -1); index is 1-based.
struct Letter {
    int index;
    int sign;

    Letter(int index_, int sign_) : index(index_), sign(sign_) {
        if (sign != +1 && sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
        if (index < 1 || index > max_rank) throw std::out_of_range("letter index out of range");
    }

    Letter inverse() const { return Letter(index, -sign); }

    friend bool operator==(const Letter& a, const Letter& b) = default;
};

// Position in the fixed total order x_1 < x_1^-1 < x_2 < x_2^-1 < ...
inline int letter_order_key(const Letter& a) { return 2 * (a.index - 1) + (a.sign < 0 ? 1 : 0); }

inline std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
    return letter_order_key(a) <=> letter_order_key(b);
}

namespace detail {

// packed letter: +index for x_i, -index for its inverse; never zero
using code_t = signed char;

inline code_t pack_letter(const Letter& a) { return static_cast<code_t>(a.sign * a.index); }

inline Letter unpack_letter(code_t c) { return c > 0 ? Letter(c, +1) : Letter(-c, -1); }

inline int code_order_key(code_t c) { return c > 0 ? 2 * (c - 1) : 2 * (-c - 1) + 1; }

inline std::strong_ordering shortlex_codes(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ka = code_order_key(static_cast<code_t>(a[i]));
        int kb = code_order_key(static_cast<code_t>(b[i]));
        if (ka != kb) return ka <=> kb;
    }
    return std::strong_ordering::equal;
}

// one step of free reduction against the tail of s
inline void push_reduced(std::string& s, code_t c) {
    if (!s.empty() && static_cast<code_t>(s.back()) == static_cast<code_t>(-c))
        s.pop_back();
    else
        s.push_back(static_cast<char>(c));
}

}  // namespace detail

// Freely reduced word over x_1..x_rank and their inverses; immutable value.
// The default-constructed word is the identity (empty word).
class ReducedWord {
  public:
    explicit ReducedWord(int rank = 1) : rank_(check_rank(rank)) {}

    // codes must already be freely reduced; validates letter range and reducedness
    static ReducedWord from_packed(int rank, std::string codes) {
        check_rank(rank);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            auto c = static_cast<detail::code_t>(codes[i]);
            int idx = c > 0 ? c : -c;
            if (idx < 1 || idx > rank) throw std::out_of_range("letter index out of range");
            if (i + 1 < codes.size() &&
                static_cast<detail::code_t>(codes[i + 1]) == static_cast<detail::code_t>(-c))
                throw std::invalid_argument("packed word is not freely reduced");
        }
        ReducedWord w(rank);
        w.codes_ = std::move(codes);
        return w;
    }

    int rank() const { return rank_; }
    std::size_t size() const { return codes_.size(); }
    bool empty() const { return codes_.empty(); }
    const std::string& packed() const { return codes_; }

    Letter letter(std::size_t i) const {
        return detail::unpack_letter(static_cast<detail::code_t>(codes_.at(i)));
    }

    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        out.reserve(codes_.size());
        for (char c : codes_) out.push_back(detail::unpack_letter(static_cast<detail::code_t>(c)));
        return out;
    }

    ReducedWord inverse() const {
        std::string rev(codes_.rbegin(), codes_.rend());
        for (char& c : rev) c = static_cast<char>(-static_cast<detail::code_t>(c));
        ReducedWord w(rank_);
        w.codes_ = std::move(rev);
        return w;
    }

    // a..z are x_1..x_26, A..Z their inverses, "1" the identity
    std::string text() const {
        if (codes_.empty()) return "1";
        std::string out;
        out.reserve(codes_.size());
        for (char ch : codes_) {
            auto c = static_cast<detail::code_t>(ch);
            int idx = c > 0 ? c : -c;
            if (idx > 26) throw std::domain_error("text form is defined for ranks up to 26");
            out.push_back(static_cast<char>((c > 0 ? 'a' : 'A') + idx - 1));
        }
        return out;
    }

    static ReducedWord parse(std::string_view s, int rank) {
        check_rank(rank);
        if (s == "1") return ReducedWord(rank);
        if (s.empty()) throw std::invalid_argument("empty word text (the identity is written \"1\")");
        std::string codes;
        codes.reserve(s.size());
        for (char ch : s) {
            detail::code_t c;
            if (ch >= 'a' && ch <= 'z')
                c = static_cast<detail::code_t>(ch - 'a' + 1);
            else if (ch >= 'A' && ch <= 'Z')
                c = static_cast<detail::code_t>(-(ch - 'A' + 1));
            else
                throw std::invalid_argument("invalid character in word text");
            int idx = c > 0 ? c : -c;
            if (idx > rank) throw std::out_of_range("letter index out of range");
            if (!codes.empty() &&
                static_cast<detail::code_t>(codes.back()) == static_cast<detail::code_t>(-c))
                throw std::invalid_argument("word text is not freely reduced");
            codes.push_back(static_cast<char>(c));
        }
        ReducedWord w(rank);
        w.codes_ = std::move(codes);
        return w;
    }

    friend bool operator==(const ReducedWord& a, const ReducedWord& b) { return a.codes_ == b.codes_; }

    // shortlex over the letter order; rank is context, not part of the value
    friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
        return detail::shortlex_codes(a.codes_, b.codes_);
    }

  private:
    int rank_;
    std::string codes_;

    friend ReducedWord reduce(const std::vector<Letter>&, int);
    friend ReducedWord concat(const ReducedWord&, const ReducedWord&);
};

// Free reduction of an arbitrary word.
inline ReducedWord reduce(const std::vector<Letter>& word, int rank) {
    check_rank(rank);
    std::string codes;
    codes.reserve(word.size());
    for (const Letter& a : word) {
        if (a.index > rank) throw std::out_of_range("letter index out of range");
        detail::push_reduced(codes, detail::pack_letter(a));
    }
    ReducedWord w(rank);
    w.codes_ = std::move(codes);
    return w;
}

// Product in the free group; the result is reduced.
inline ReducedWord concat(const ReducedWord& u, const ReducedWord& v) {
    if (u.rank() != v.rank()) throw RankMismatchError();
    std::string codes = u.packed();
    codes.reserve(codes.size() + v.size());
    for (char c : v.packed()) detail::push_reduced(codes, static_cast<detail::code_t>(c));
    ReducedWord w(u.rank());
    w.codes_ = std::move(codes);
    return w;
}

// All |w|+1 prefixes, from the identity up to w itself.
inline std::vector<ReducedWord> prefixes(const ReducedWord& w) {
    std::vector<ReducedWord> out;
    out.reserve(w.size() + 1);
    for (std::size_t i = 0; i <= w.size(); ++i)
        out.push_back(ReducedWord::from_packed(w.rank(), w.packed().substr(0, i)));
    return out;
}

/// Letters from text; unlike ReducedWord::parse the input need not be reduced.
inline std::vector<Letter> parse_letters(std::string_view s, int rank) {
    check_rank(rank);
    std::vector<Letter> out;
    if (s == "1") return out;
    if (s.empty()) throw std::invalid_argument("empty word text (the identity is written \"1\")");
    out.reserve(s.size());
    for (char ch : s) {
        int idx;
        int sign;
        if (ch >= 'a' && ch <= 'z') {
            idx = ch - 'a' + 1;
            sign = +1;
        } else if (ch >= 'A' && ch <= 'Z') {
            idx = ch - 'A' + 1;
            sign = -1;
        } else {
            throw std::invalid_argument("invalid character in word text");
        }
        if (idx > rank) throw std::out_of_range("letter index out of range");
        out.emplace_back(idx, sign);
    }
    return out;
}

inline std::string letters_text(const std::vector<Letter>& word) {
    if (word.empty()) return "1";
    std::string out;
    out.reserve(word.size());
    for (const Letter& a : word) {
        if (a.index > 26) throw std::domain_error("text form is defined for ranks up to 26");
        out.push_back(static_cast<char>((a.sign > 0 ? 'a' : 'A') + a.index - 1));
    }
    return out;
}

// Freely reduced words of length t: 1 for t = 0, else (p+1)p^{t-1} with p = 2 rank - 1.
inline BigCount count_reduced_words(long rank, long t) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (t < 0) throw std::invalid_argument("word length must be >= 0");
    if (t == 0) return 1;
    BigCount p = 2 * rank - 1;
    BigCount out;
    mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(t - 1));
    return out * (p + 1);
}

}  // namespace fim
