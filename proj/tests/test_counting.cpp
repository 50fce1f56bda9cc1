#include "fim/counting.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <string>
#include <vector>

using namespace fim;

TEST_CASE("binomial coefficients", "[counting]") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);

    // cross-check against the additive recurrence
    std::vector<std::vector<BigCount>> pascal(41);
    for (long n = 0; n <= 40; ++n) {
        pascal[n].assign(static_cast<std::size_t>(n) + 1, 1);
        for (long k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        for (long k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == pascal[n][k]);
    }
}

TEST_CASE("raising coefficients match both closed forms", "[counting]") {
    CHECK(fuss_catalan(1, 2, 2) == 3);
    CHECK(fuss_catalan(3, 4, 1) == 4);
    CHECK(fuss_catalan(5, 7, 0) == 1);
    CHECK_THROWS_AS(fuss_catalan(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(fuss_catalan(1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(fuss_catalan(1, 1, -1), std::invalid_argument);

    // q/(kp+q) C(kp+q, k) equals q/k C(kp+q-1, k-1) for k >= 1
    for (long p = 1; p <= 6; ++p) {
        for (long q = 1; q <= 6; ++q) {
            REQUIRE(fuss_catalan(p, q, 0) == 1);
            for (long k = 1; k <= 20; ++k) {
                BigCount alt = q * binomial(k * p + q - 1, k - 1);
                REQUIRE(alt % k == 0);
                REQUIRE(fuss_catalan(p, q, k) == alt / k);
            }
        }
    }
}

TEST_CASE("raising coefficients are convolution powers", "[counting]") {
    CHECK(p_catalan(2, 3) == 5);
    CHECK(p_catalan(2, 0) == 1);
    CHECK(p_catalan(3, 0) == 1);
    CHECK_THROWS_AS(p_catalan(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(p_catalan(2, -1), std::invalid_argument);

    for (long p = 1; p <= 4; ++p) {
        // single tree count agrees with q = 1
        for (long i = 0; i <= 8; ++i) {
            REQUIRE(p_catalan(p, i) == fuss_catalan(p, 1, i));
            // direct form C(pi, i) / ((p-1)i + 1)
            BigCount direct = binomial(p * i, i);
            REQUIRE(direct % ((p - 1) * i + 1) == 0);
            REQUIRE(p_catalan(p, i) == direct / ((p - 1) * i + 1));
        }
        // q-fold convolution of the single-tree sequence gives the q-forest count
        std::vector<BigCount> conv(7);
        for (long k = 0; k <= 6; ++k) conv[k] = p_catalan(p, k);
        for (long q = 2; q <= 4; ++q) {
            std::vector<BigCount> next(7, 0);
            for (long k = 0; k <= 6; ++k)
                for (long j = 0; j <= k; ++j) next[k] += conv[j] * p_catalan(p, k - j);
            conv = std::move(next);
            for (long k = 0; k <= 6; ++k) REQUIRE(conv[k] == fuss_catalan(p, q, k));
        }
    }
}

TEST_CASE("element counts by trunk and branch size", "[counting]") {
    CHECK(count_munn_trees(2, 0, 0) == 1);
    CHECK(count_munn_trees(2, 1, 0) == 4);
    CHECK(count_munn_trees(2, 0, 1) == 4);
    CHECK(count_munn_trees(2, 0, 2) == 18);
    CHECK(count_munn_trees(2, 2, 0) == 12);
    CHECK(count_munn_trees(2, 1, 1) == 24);
    CHECK(count_munn_trees(2, 3, 0) == 36);
    CHECK_THROWS_AS(count_munn_trees(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(count_munn_trees(2, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_munn_trees(2, 0, -1), std::invalid_argument);

    // one generator: 2(k+1) elements for t >= 1, k+1 idempotent shapes
    for (long t = 1; t <= 30; ++t)
        for (long k = 0; k <= 30; ++k) REQUIRE(count_munn_trees(1, t, k) == 2 * (k + 1));
    for (long k = 0; k <= 30; ++k) REQUIRE(count_munn_trees(1, 0, k) == k + 1);
}

TEST_CASE("sphere sizes", "[counting]") {
    const std::vector<long> rank1 = {1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42, 49};
    const std::vector<long> rank2 = {1, 4, 16, 60, 222, 816, 2980, 10880, 39611, 144264, 524772};
    const std::vector<long> rank3 = {1, 6, 36, 210, 1215, 7020, 40460, 233220, 1343370};
    for (std::size_t K = 0; K < rank1.size(); ++K) REQUIRE(sphere_size(1, static_cast<long>(K)) == rank1[K]);
    for (std::size_t K = 0; K < rank2.size(); ++K) REQUIRE(sphere_size(2, static_cast<long>(K)) == rank2[K]);
    for (std::size_t K = 0; K < rank3.size(); ++K) REQUIRE(sphere_size(3, static_cast<long>(K)) == rank3[K]);

    // one generator follows two interleaved quadratics
    for (long R = 0; R <= 100; ++R) {
        REQUIRE(sphere_size(1, 2 * R + 1) == R * R + 3 * R + 2);
        if (R >= 1) REQUIRE(sphere_size(1, 2 * R) == R * R + 2 * R + 1);
    }

    CHECK_THROWS_AS(sphere_size(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sphere_size(2, -1), std::invalid_argument);
}

TEST_CASE("idempotent sphere sizes", "[counting]") {
    const std::vector<long> evens = {1, 4, 18, 88, 455, 2448};
    for (std::size_t i = 0; i < evens.size(); ++i)
        REQUIRE(idempotent_sphere_size(2, 2 * static_cast<long>(i)) == evens[i]);
    for (long K = 1; K <= 21; K += 2) REQUIRE(idempotent_sphere_size(2, K) == 0);
    for (long K = 0; K <= 20; ++K)
        REQUIRE(idempotent_sphere_size(3, K) ==
                (K % 2 == 0 ? count_munn_trees(3, 0, K / 2) : BigCount(0)));
    CHECK_THROWS_AS(idempotent_sphere_size(0, 0), std::invalid_argument);
}

TEST_CASE("ball sizes accumulate spheres", "[counting]") {
    CHECK(ball_size(2, 2) == 21);
    CHECK(ball_size(1, 3) == 13);
    CHECK(ball_size(2, 0) == 1);
    for (long rank = 1; rank <= 3; ++rank) {
        BigCount acc = 0;
        for (long K = 0; K <= 10; ++K) {
            acc += sphere_size(rank, K);
            REQUIRE(ball_size(rank, K) == acc);
        }
    }
    CHECK_THROWS_AS(ball_size(2, -1), std::invalid_argument);
}

TEST_CASE("sphere sizes grow with the rank", "[counting]") {
    for (long rank = 2; rank <= 4; ++rank)
        for (long K = 1; K <= 8; ++K) {
            REQUIRE(sphere_size(rank, K) > sphere_size(rank - 1, K));
            REQUIRE(sphere_size(rank, K) > sphere_size(rank, K - 1));
        }
}

TEST_CASE("sphere table output", "[counting]") {
    SphereTable t = sphere_table(2, 3);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rank == 2);
    for (long K = 0; K <= 3; ++K) {
        CHECK(t.rows[K].K == K);
        CHECK(t.rows[K].sphere == sphere_size(2, K));
        CHECK(t.rows[K].idempotents == idempotent_sphere_size(2, K));
        CHECK(t.rows[K].ball == ball_size(2, K));
    }

    CHECK(t.to_csv() == "K,sphere,idempotents,ball\n0,1,1,1\n1,4,0,5\n2,16,4,21\n3,60,0,81\n");

    auto j = nlohmann::json::parse(t.to_json());
    CHECK(j["rank"] == 2);
    CHECK(j["max_k"] == 3);
    REQUIRE(j["rows"].size() == 4);
    CHECK(j["rows"][2]["K"] == 2);
    CHECK(j["rows"][2]["sphere"] == "16");
    CHECK(j["rows"][2]["idempotents"] == "4");
    CHECK(j["rows"][2]["ball"] == "21");

    // counts stay exact far beyond machine range
    SphereTable big = sphere_table(64, 40);
    auto jb = nlohmann::json::parse(big.to_json());
    std::string last = jb["rows"][40]["sphere"];
    CHECK(last.size() > 20);
    CHECK(BigCount(last) == sphere_size(64, 40));

    CHECK_THROWS_AS(sphere_table(2, -1), std::invalid_argument);
}
