#pragma once

#include "fim/words.hpp"

#include <climits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fim {

inline BigCount binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
    if (k < 0 || k > n) return 0;
    BigCount out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

// R_{p,q}(k) = q/(kp+q) * C(kp+q, k); multiply first, the division is exact
inline BigCount fuss_catalan(long p, long q, long k) {
    if (p < 1 || q < 1) throw std::invalid_argument("fuss_catalan: p and q must be >= 1");
    if (k < 0) throw std::invalid_argument("fuss_catalan: k must be >= 0");
    if (k != 0 && p > (LONG_MAX - q) / k) throw std::invalid_argument("fuss_catalan: arguments too large");
    long n = k * p + q;
    BigCount num = q * binomial(n, k);
    if (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(n)) == 0)
        throw std::logic_error("fuss_catalan: division is not exact");
    BigCount out;
    mpz_divexact_ui(out.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

// p-ary tree diagrams with i internal vertices
inline BigCount p_catalan(long p, long i) {
    if (p < 1) throw std::invalid_argument("p_catalan: p must be >= 1");
    if (i < 0) throw std::invalid_argument("p_catalan: i must be >= 0");
    return i == 0 ? BigCount(1) : fuss_catalan(p, p, i - 1);
}

// Elements with t trunk edges and k branch edges: trunk-word count times the
// Fuss-Catalan attachment count, q = 2p + (t-1)(p-1) for t >= 1 and p+1 for t = 0.
inline BigCount count_munn_trees(long rank, long t, long k) {
    if (rank < 1) throw std::invalid_argument("count_munn_trees: rank must be >= 1");
    if (t < 0 || k < 0) throw std::invalid_argument("count_munn_trees: t and k must be >= 0");
    if (rank > (LONG_MAX - 1) / 2) throw std::invalid_argument("count_munn_trees: rank too large");
    long p = 2 * rank - 1;
    if (t == 0) return fuss_catalan(p, p + 1, k);
    if (t > 1 && p > 1 && t - 1 > (LONG_MAX - 2 * p) / (p - 1))
        throw std::invalid_argument("count_munn_trees: t too large");
    return count_reduced_words(rank, t) * fuss_catalan(p, 2 * p + (t - 1) * (p - 1), k);
}

// Elements of length exactly K: sum over t + 2k = K, plus the idempotent
// term t = 0 when K is even.
inline BigCount sphere_size(long rank, long K) {
    if (rank < 1) throw std::invalid_argument("sphere_size: rank must be >= 1");
    if (K < 0) throw std::invalid_argument("sphere_size: K must be >= 0");
    BigCount total = 0;
    for (long t = (K % 2 == 0) ? 2 : 1; t <= K; t += 2)
        total += count_munn_trees(rank, t, (K - t) / 2);
    if (K % 2 == 0) total += count_munn_trees(rank, 0, K / 2);
    return total;
}

inline BigCount idempotent_sphere_size(long rank, long K) {
    if (rank < 1) throw std::invalid_argument("idempotent_sphere_size: rank must be >= 1");
    if (K < 0) throw std::invalid_argument("idempotent_sphere_size: K must be >= 0");
    if (K % 2 != 0) return 0;
    return count_munn_trees(rank, 0, K / 2);
}

inline BigCount ball_size(long rank, long K) {
    if (K < 0) throw std::invalid_argument("ball_size: K must be >= 0");
    BigCount total = 0;
    for (long j = 0; j <= K; ++j) total += sphere_size(rank, j);
    return total;
}

struct SphereRow {
    long K;
    BigCount sphere;
    BigCount idempotents;
    BigCount ball;
};

struct SphereTable {
    long rank;
    std::vector<SphereRow> rows;  // contiguous from K = 0; ball is the running sum

    std::string to_csv() const {
        std::ostringstream out;
        out << "K,sphere,idempotents,ball\n";
        for (const SphereRow& r : rows)
            out << r.K << ',' << r.sphere.get_str() << ',' << r.idempotents.get_str() << ','
                << r.ball.get_str() << '\n';
        return out.str();
    }

    // counts are decimal strings so arbitrary sizes survive JSON round-trips
    std::string to_json() const {
        std::ostringstream out;
        out << "{\"rank\":" << rank << ",\"max_k\":" << (rows.empty() ? -1 : rows.back().K)
            << ",\"rows\":[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const SphereRow& r = rows[i];
            if (i) out << ',';
            out << "{\"K\":" << r.K << ",\"sphere\":\"" << r.sphere.get_str()
                << "\",\"idempotents\":\"" << r.idempotents.get_str() << "\",\"ball\":\""
                << r.ball.get_str() << "\"}";
        }
        out << "]}";
        return out.str();
    }
};

inline SphereTable sphere_table(long rank, long K_max) {
    if (K_max < 0) throw std::invalid_argument("sphere_table: K_max must be >= 0");
    SphereTable table{rank, {}};
    table.rows.reserve(static_cast<std::size_t>(K_max) + 1);
    BigCount ball = 0;
    for (long K = 0; K <= K_max; ++K) {
        BigCount s = sphere_size(rank, K);
        ball += s;
        table.rows.push_back({K, std::move(s), idempotent_sphere_size(rank, K), ball});
    }
    return table;
}

}  // namespace fim
