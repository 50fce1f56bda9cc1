#include "fim/munn.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace fim;

namespace {

MunnTree ev(const char* s, int rank) { return MunnTree::eval(parse_letters(s, rank), rank); }

// all raw words over rank r up to the given length
void for_each_word(int rank, int max_len,
                   const std::function<void(const std::vector<Letter>&)>& fn) {
    std::vector<std::vector<Letter>> level = {{}};
    fn({});
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : level) {
            for (int i = 1; i <= rank; ++i) {
                for (int sign : {+1, -1}) {
                    auto nw = w;
                    nw.emplace_back(i, sign);
                    fn(nw);
                    next.push_back(std::move(nw));
                }
            }
        }
        level = std::move(next);
    }
}

}  // namespace

TEST_CASE("evaluation walks the word and keeps every vertex", "[munn]") {
    MunnTree m = ev("aA", 2);
    CHECK(m.text() == "{1,a}|1");
    CHECK(m.is_idempotent());
    CHECK(m.trunk_branch_counts() == std::pair<long, long>{0, 1});
    CHECK(m.length() == 2);

    MunnTree n = ev("aAb", 2);
    CHECK(n.text() == "{1,a,b}|b");
    CHECK_FALSE(n.is_idempotent());
    CHECK(n.trunk_branch_counts() == std::pair<long, long>{1, 1});
    CHECK(n.length() == 3);

    // backtracking keeps vertices: a b b^-1 a^-1 a visits 1, a, ab, a, 1, a
    MunnTree w = ev("abBAa", 2);
    CHECK(w.text() == "{1,a,ab}|a");
    CHECK(w.trunk_branch_counts() == std::pair<long, long>{1, 1});

    CHECK(ev("1", 2) == MunnTree::identity(2));
    CHECK(ev("ab", 2).trunk_branch_counts() == std::pair<long, long>{2, 0});
    CHECK_THROWS_AS(ev("c", 2), std::out_of_range);
}

TEST_CASE("evaluation is a homomorphism", "[munn]") {
    std::mt19937_64 rng(2001);
    for (int trial = 0; trial < 1000; ++trial) {
        int rank = 1 + trial % 3;
        auto wu = testutil::random_raw_word(rng, rank, 8);
        auto wv = testutil::random_raw_word(rng, rank, 8);
        auto cat = wu;
        cat.insert(cat.end(), wv.begin(), wv.end());
        REQUIRE(MunnTree::eval(cat, rank) == MunnTree::eval(wu, rank) * MunnTree::eval(wv, rank));
    }
}

TEST_CASE("multiplication translates and merges vertex sets", "[munn]") {
    MunnTree e = ev("aA", 2);
    CHECK(e * e == e);
    CHECK(multiply(ev("a", 2), ev("A", 2)) == e);
    CHECK((ev("a", 2) * ev("b", 2)).text() == "{1,a,ab}|ab");
    CHECK_THROWS_AS(multiply(ev("a", 2), ev("a", 3)), RankMismatchError);

    MunnTree id = MunnTree::identity(2);
    std::mt19937_64 rng(2002);
    for (int trial = 0; trial < 300; ++trial) {
        MunnTree m = MunnTree::eval(testutil::random_raw_word(rng, 2, 8), 2);
        REQUIRE(m * id == m);
        REQUIRE(id * m == m);
    }
}

TEST_CASE("inversion reverses the designated vertex and translates", "[munn]") {
    CHECK(invert(ev("a", 2)) == ev("A", 2));
    CHECK(invert(ev("ab", 2)) == ev("BA", 2));
    MunnTree e = ev("aA", 2);
    CHECK(invert(e) == e);

    std::mt19937_64 rng(2003);
    for (int trial = 0; trial < 1000; ++trial) {
        int rank = 1 + trial % 3;
        auto w = testutil::random_raw_word(rng, rank, 8);
        MunnTree m = MunnTree::eval(w, rank);
        std::vector<Letter> winv;
        for (auto it = w.rbegin(); it != w.rend(); ++it) winv.push_back(it->inverse());
        REQUIRE(invert(m) == MunnTree::eval(winv, rank));
        REQUIRE(m * invert(m) * m == m);
        REQUIRE(invert(invert(m)) == m);
    }
}

TEST_CASE("idempotents are exactly the elements fixed by squaring", "[munn]") {
    long idempotents = 0;
    std::set<std::string> seen;
    for_each_word(2, 6, [&](const std::vector<Letter>& w) {
        MunnTree m = MunnTree::eval(w, 2);
        REQUIRE(m.is_idempotent() == (m * m == m));
        if (seen.insert(m.canonical_key()).second && m.is_idempotent()) ++idempotents;
    });
    CHECK(idempotents > 1);

    std::mt19937_64 rng(2004);
    for (int trial = 0; trial < 500; ++trial) {
        MunnTree u = MunnTree::eval(testutil::random_raw_word(rng, 2, 8), 2);
        MunnTree v = MunnTree::eval(testutil::random_raw_word(rng, 2, 8), 2);
        MunnTree e = u * invert(u);
        MunnTree f = v * invert(v);
        REQUIRE(e.is_idempotent());
        REQUIRE(e * f == f * e);
    }
}

TEST_CASE("element length is the shortest representing word", "[munn]") {
    // the first word length at which an element appears equals its stated length
    std::map<std::string, long> first_seen;
    std::vector<std::vector<Letter>> level = {{}};
    for (long len = 0; len <= 7; ++len) {
        if (len > 0) {
            std::vector<std::vector<Letter>> next;
            for (const auto& w : level) {
                for (int i = 1; i <= 2; ++i) {
                    for (int sign : {+1, -1}) {
                        auto nw = w;
                        nw.emplace_back(i, sign);
                        next.push_back(std::move(nw));
                    }
                }
            }
            level = std::move(next);
        }
        for (const auto& w : level) {
            MunnTree m = MunnTree::eval(w, 2);
            auto [it, inserted] = first_seen.try_emplace(m.canonical_key(), len);
            if (inserted) REQUIRE(m.length() == len);
            REQUIRE((static_cast<long>(w.size()) - m.length()) % 2 == 0);
        }
    }
}

TEST_CASE("geodesic words are canonical and minimal", "[munn]") {
    MunnTree n = ev("aAb", 2);
    CHECK(letters_text(n.geodesic_word()) == "aAb");
    CHECK(ev("ab", 2).geodesic_word() == parse_letters("ab", 2));
    CHECK(MunnTree::identity(2).geodesic_word().empty());
    // branches at a trunk vertex come in letter order before the trunk step
    MunnTree m = ev("bBaAc", 3);
    CHECK(letters_text(m.geodesic_word()) == "aAbBc");

    for (int rank = 1; rank <= 3; ++rank) {
        std::set<std::string> seen;
        int max_len = rank == 3 ? 5 : 6;
        for_each_word(rank, max_len, [&](const std::vector<Letter>& w) {
            MunnTree m = MunnTree::eval(w, rank);
            if (!seen.insert(m.canonical_key()).second) return;
            auto geo = m.geodesic_word();
            REQUIRE(static_cast<long>(geo.size()) == m.length());
            REQUIRE(MunnTree::eval(geo, rank) == m);
        });
    }
}

TEST_CASE("canonical keys are injective and reversible", "[munn]") {
    CHECK(ev("aA", 2).canonical_key() == ev("aAaA", 2).canonical_key());
    CHECK(ev("ab", 2).canonical_key() != ev("ba", 2).canonical_key());

    std::mt19937_64 rng(2005);
    for (int trial = 0; trial < 500; ++trial) {
        int rank = 1 + trial % 3;
        MunnTree m = MunnTree::eval(testutil::random_raw_word(rng, rank, 8), rank);
        MunnTree back = MunnTree::from_canonical_key(m.canonical_key(), rank);
        REQUIRE(back == m);
        REQUIRE(back.canonical_key() == m.canonical_key());
    }
    CHECK_THROWS_AS(MunnTree::from_canonical_key("", 2), std::invalid_argument);
}

TEST_CASE("tree text round-trip", "[munn]") {
    CHECK(ev("aAb", 2).text() == "{1,a,b}|b");
    CHECK(MunnTree::parse("{1,a,b}|b", 2) == ev("aAb", 2));
    CHECK(MunnTree::parse("{1}|1", 2) == MunnTree::identity(2));
    CHECK_THROWS_AS(MunnTree::parse("{a}|a", 2), std::invalid_argument);  // identity missing
    CHECK_THROWS_AS(MunnTree::parse("no-braces", 2), std::invalid_argument);

    std::mt19937_64 rng(2006);
    for (int trial = 0; trial < 300; ++trial) {
        MunnTree m = MunnTree::eval(testutil::random_raw_word(rng, 3, 7), 3);
        REQUIRE(MunnTree::parse(m.text(), 3) == m);
    }
}

TEST_CASE("constructor validates the vertex set", "[munn]") {
    auto w = [](const char* s) { return ReducedWord::parse(s, 2); };
    CHECK_THROWS_AS(MunnTree(2, {w("a")}, w("a")), std::invalid_argument);
    CHECK_THROWS_AS(MunnTree(2, {w("1"), w("ab")}, w("1")), std::invalid_argument);
    CHECK_THROWS_AS(MunnTree(2, {w("1"), w("a")}, w("b")), std::invalid_argument);
    CHECK_THROWS_AS(MunnTree(2, {ReducedWord::parse("a", 3)}, w("1")), RankMismatchError);
    // duplicates collapse, order does not matter
    MunnTree m(2, {w("a"), w("1"), w("a"), w("ab")}, w("a"));
    CHECK(m.text() == "{1,a,ab}|a");
}

TEST_CASE("length is submultiplicative", "[munn]") {
    std::mt19937_64 rng(2007);
    for (int trial = 0; trial < 1000; ++trial) {
        int rank = 1 + trial % 3;
        MunnTree a = MunnTree::eval(testutil::random_raw_word(rng, rank, 8), rank);
        MunnTree b = MunnTree::eval(testutil::random_raw_word(rng, rank, 8), rank);
        REQUIRE((a * b).length() <= a.length() + b.length());
    }
}
