#pragma once

#include "fim/counting.hpp"
#include "fim/intpoly.hpp"
#include "fim/real.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fim {

struct MonogenicGrowthError : std::domain_error {
    MonogenicGrowthError()
        : std::domain_error(
              "rank 1 grows polynomially (quadratic sphere sizes), so it has no growth polynomial") {}
};

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computed real together with a bound: the true value lies within +/- error_bound.
struct PrecisionReal {
    Real value;
    Real error_bound;
};

struct GrowthPolynomial {
    int p;              // odd, = 2 rank - 1
    IntPolynomial poly; // p^p y^{p-2} - (py - 1)^{p-1}
};

namespace detail {

inline int growth_rank_to_p(int rank) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (rank == 1) throw MonogenicGrowthError();
    if (rank > 2048) throw std::invalid_argument("rank beyond supported range (max 2048)");
    return 2 * rank - 1;
}

inline mpz_class zpow(long base, unsigned long e) {
    if (base < 0) throw std::invalid_argument("zpow: base must be >= 0");
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
    return out;
}

}  // namespace detail

inline GrowthPolynomial growth_poly(int rank) {
    int p = detail::growth_rank_to_p(rank);
    // (py-1)^{p-1} by the binomial theorem, negated and added to p^p y^{p-2}
    std::vector<mpz_class> c(static_cast<std::size_t>(p));
    for (int i = 0; i <= p - 1; ++i) {
        mpz_class term = binomial(p - 1, i) * detail::zpow(p, static_cast<unsigned long>(i));
        c[static_cast<std::size_t>(i)] = ((p - 1 - i) % 2 == 0) ? -term : term;
    }
    c[static_cast<std::size_t>(p - 2)] += detail::zpow(p, static_cast<unsigned long>(p));
    GrowthPolynomial g{p, IntPolynomial(std::move(c))};
    // shape and bracket signs are structural; fail loudly if ever violated
    if (g.poly.degree() != p - 1 ||
        g.poly.coeff(static_cast<std::size_t>(p - 1)) != -detail::zpow(p, static_cast<unsigned long>(p - 1)))
        throw std::logic_error("growth polynomial has unexpected shape");
    if (g.poly.sign_at(mpq_class(p)) <= 0 || g.poly.sign_at(mpq_class(p + 1)) >= 0)
        throw std::logic_error("growth polynomial endpoint signs are wrong");
    return g;
}

namespace detail {

// Sign of the logarithmic form p ln p + (p-2) ln y - (p-1) ln(py-1), which has
// the sign of the polynomial for y > 1/p because both polynomial terms are
// positive there. Returns 0 when rounding leaves the sign unclear.
inline int log_form_sign(int p, const mpq_class& y, mpfr_prec_t prec) {
    Real lp = ln(Real::of(static_cast<long>(p), prec));
    Real g = Real::of(static_cast<long>(p), prec) * lp +
             Real::of(static_cast<long>(p) - 2, prec) * ln(Real::of(y, prec)) -
             Real::of(static_cast<long>(p) - 1, prec) * ln(Real::of(mpq_class(p) * y - 1, prec));
    Real thr = Real::of(4L * p, prec) * lp * Real::pow2(-static_cast<long>(prec) + 8, prec);
    if (g.is_zero() || abs(g) < thr) return 0;
    return g.sign();
}

// certified bisection purely by exact integer signs; pre: sign(lo) > 0 > sign(hi)
inline void exact_bisect(const IntPolynomial& poly, mpq_class& lo, mpq_class& hi,
                         const mpq_class& width) {
    while (hi - lo > width) {
        mpq_class mid = (lo + hi) / 2;
        int s = poly.sign_at(mid);
        if (s == 0) {
            lo = mid;
            hi = mid;
            return;
        }
        (s > 0 ? lo : hi) = mid;
    }
}

}  // namespace detail

// Largest real root of the growth polynomial, bracketed in (p, p+1). The
// search runs on the logarithmic form; the final bracket is certified by
// exact integer sign evaluation at both rational endpoints.
struct CertifiedGrowthRate {
    PrecisionReal rate;
    mpq_class bracket_lo;  // sign_at(bracket_lo) > 0 > sign_at(bracket_hi), or lo == hi on the root
    mpq_class bracket_hi;
};

inline CertifiedGrowthRate growth_rate_certified(int rank, int digits) {
    if (digits < 1) throw std::invalid_argument("digits must be >= 1");
    if (digits > 10000)
        throw PrecisionError("requested digits exceed the precision budget (max 10000)");
    GrowthPolynomial g = growth_poly(rank);
    int p = g.p;
    mpfr_prec_t prec = working_precision(digits, p);
    mpq_class width(mpz_class(1), detail::zpow(10, static_cast<unsigned long>(digits)));
    mpq_class target = width / 2;
    mpq_class lo(p), hi(p + 1);
    while (hi - lo > target) {
        mpq_class mid = (lo + hi) / 2;
        int s = detail::log_form_sign(p, mid, prec);
        if (s == 0) s = g.poly.sign_at(mid);
        if (s == 0) {
            lo = mid;
            hi = mid;
            break;
        }
        (s > 0 ? lo : hi) = mid;
    }
    // exact certification; on any disagreement redo the search with exact signs only
    if (lo != hi && (g.poly.sign_at(lo) <= 0 || g.poly.sign_at(hi) >= 0)) {
        lo = p;
        hi = p + 1;
        detail::exact_bisect(g.poly, lo, hi, target);
    }
    Real value = Real::of(mpq_class((lo + hi) / 2), prec);
    Real err = Real::of(mpq_class((hi - lo) / 2), prec) +
               abs(value) * Real::pow2(-static_cast<long>(prec) + 2, prec);
    return {{value, err}, lo, hi};
}

inline PrecisionReal growth_rate(int rank, int digits) {
    return growth_rate_certified(rank, digits).rate;
}

// sqrt(p^p / (p-1)^{p-1}): exponential growth rate of the idempotent counts
inline PrecisionReal idempotent_growth_rate(int rank, int digits = 20) {
    if (digits < 1) throw std::invalid_argument("digits must be >= 1");
    if (digits > 10000)
        throw PrecisionError("requested digits exceed the precision budget (max 10000)");
    int p = detail::growth_rank_to_p(rank);
    mpfr_prec_t prec = working_precision(digits, p);
    Real ratio = Real::of(detail::zpow(p, static_cast<unsigned long>(p)), prec) /
                 Real::of(detail::zpow(p - 1, static_cast<unsigned long>(p - 1)), prec);
    Real value = sqrt(ratio);
    return {value, value * Real::pow2(-static_cast<long>(prec) + 3, prec)};
}

// h(x) = (x ln p + A ln A - B ln B) / (x+2) with A = p + x(p-1), B = (p-1)(x+1);
// exp h(0) is the idempotent rate and exp h tends to p as x grows.
inline PrecisionReal h(const Real& x, int rank) {
    int p = detail::growth_rank_to_p(rank);
    if (x.sign() < 0) throw std::invalid_argument("h is defined for x >= 0");
    mpfr_prec_t prec = std::max<mpfr_prec_t>(x.prec(), 96);
    Real rp = Real::of(static_cast<long>(p), prec);
    Real rp1 = Real::of(static_cast<long>(p) - 1, prec);
    Real A = rp + x * rp1;
    Real B = rp1 * (x + Real::of(1L, prec));
    Real t1 = x * ln(rp);
    Real t2 = A * ln(A);
    Real t3 = B * ln(B);
    Real den = x + Real::of(2L, prec);
    Real value = (t1 + t2 - t3) / den;
    Real scale = (abs(t1) + abs(t2) + abs(t3)) / den + abs(value);
    return {value, scale * Real::pow2(-static_cast<long>(prec) + 6, prec)};
}

inline PrecisionReal h(double x, int rank, int digits = 20) {
    int p = detail::growth_rank_to_p(rank);
    return h(Real::of(x, working_precision(digits, p)), rank);
}

inline PrecisionReal exp_of(const PrecisionReal& a) {
    Real value = exp(a.value);
    Real err = value * a.error_bound * Real::of(2L, a.value.prec()) +
               value * Real::pow2(-static_cast<long>(a.value.prec()) + 4, a.value.prec());
    return {value, err};
}

struct HMax {
    PrecisionReal x_star;
    PrecisionReal value;  // exp h(x_star)
};

// Unique maximizer of h on [0, 10p]: W(x) = (x+2)^2 h'(x) is strictly
// decreasing with W(0) > 0 > W(10p), so bisection on its sign converges.
inline HMax maximize_h(int rank, double tol) {
    int p = detail::growth_rank_to_p(rank);
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (tol < 1e-200) throw PrecisionError("tolerance below the supported budget");
    long digits = static_cast<long>(std::ceil(-std::log10(tol))) + 8;
    if (digits < 12) digits = 12;
    mpfr_prec_t prec = working_precision(digits, p);
    auto W = [&](const Real& x) {
        Real rp = Real::of(static_cast<long>(p), prec);
        Real rp1 = Real::of(static_cast<long>(p) - 1, prec);
        Real A = rp + x * rp1;
        Real B = rp1 * (x + Real::of(1L, prec));
        return Real::of(2L, prec) * ln(rp) + Real::of(static_cast<long>(p) - 2, prec) * ln(A) -
               Real::of(static_cast<long>(p) - 1, prec) * ln(B);
    };
    Real lo = Real::of(0L, prec);
    Real hi = Real::of(10L * p, prec);
    if (W(lo).sign() <= 0 || W(hi).sign() >= 0)
        throw PrecisionError("stationarity bracket failed at working precision");
    // |x̂-x*| needs tol and, through curvature, exp h needs width^2 < tol
    double wd = std::min(tol, std::sqrt(tol / (p + 1.0)));
    Real wtarget = Real::of(wd, prec);
    Real half = Real::of(0.5, prec);
    int iter = 0;
    while (wtarget < hi - lo) {
        if (++iter > 4096) throw PrecisionError("tolerance not reached within the iteration budget");
        Real mid = (lo + hi) * half;
        int s = W(mid).sign();
        if (s == 0) {
            lo = mid;
            hi = mid;
            break;
        }
        (s > 0 ? lo : hi) = mid;
    }
    Real xhat = (lo + hi) * half;
    Real halfwidth = (hi - lo) * half;
    PrecisionReal hx = h(xhat, rank);
    PrecisionReal val = exp_of(hx);
    // curvature slack: |h''| < 1/2 near the maximum gives |Δ exp h| <= exp h * width^2
    val.error_bound = val.error_bound + val.value * (hi - lo) * (hi - lo);
    if (!(Real::of(static_cast<long>(p), prec) < val.value))
        throw std::logic_error("maximum of exp h must exceed p");
    return {{xhat, halfwidth}, val};
}

// second-order envelope of the growth rate for large rank
inline double asymptotic_growth(int rank) {
    detail::growth_rank_to_p(rank);
    return 2.0 * rank - 3.0 / (4.0 * rank);
}

// At rank 5 the growth polynomial factors; verify the identity exactly.
inline bool check_rank5_factorization() {
    GrowthPolynomial g = growth_poly(5);  // p = 9
    // known factors written in u = py, substituted back with u = 9y
    const long sextic_u[] = {1, -9, 36, -83, 117, -90, 1};
    std::vector<mpz_class> quad = {1, 9, 81};
    std::vector<mpz_class> sextic(7);
    for (int i = 0; i <= 6; ++i)
        sextic[static_cast<std::size_t>(i)] =
            sextic_u[i] * detail::zpow(9, static_cast<unsigned long>(i));
    IntPolynomial product = IntPolynomial(std::move(quad)) * IntPolynomial(std::move(sextic));
    return -product == g.poly;
}

struct IrreducibilityResult {
    enum class Kind { Irreducible, ReducibleWitness, Unknown };
    Kind kind = Kind::Unknown;
    unsigned long prime = 0;  // certifying prime when Irreducible
    IntPolynomial witness;    // exact rational-coefficient-free divisor when ReducibleWitness
};

namespace detail {

inline bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline unsigned long fp_powmod_ul(unsigned long base, unsigned long e, unsigned long m) {
    unsigned long r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

// polynomials over F_ell as ascending coefficient vectors without leading zeros;
// ell stays below 2^20 so products fit comfortably in 64 bits
using FpPoly = std::vector<unsigned long>;

inline void fp_normalize(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// a*b mod (f, ell); f monic
inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, unsigned long ell) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned long> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % ell;
    }
    std::size_t n = f.size() - 1;
    while (prod.size() > n) {
        unsigned long top = prod.back();
        prod.pop_back();
        if (top == 0) continue;
        std::size_t base = prod.size() - n;
        for (std::size_t j = 0; j < n; ++j)
            prod[base + j] = (prod[base + j] + ell - (top * f[j]) % ell) % ell;
    }
    fp_normalize(prod);
    return prod;
}

inline FpPoly fp_powmod(FpPoly base, unsigned long e, const FpPoly& f, unsigned long ell) {
    FpPoly result{1 % ell};
    fp_normalize(result);
    while (e) {
        if (e & 1) result = fp_mulmod(result, base, f, ell);
        base = fp_mulmod(base, base, f, ell);
        e >>= 1;
    }
    return result;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, unsigned long ell) {
    fp_normalize(a);
    fp_normalize(b);
    while (!b.empty()) {
        unsigned long binv = fp_powmod_ul(b.back(), ell - 2, ell);
        while (a.size() >= b.size() && !a.empty()) {
            unsigned long factor = (a.back() * binv) % ell;
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + ell - (factor * b[j]) % ell) % ell;
            fp_normalize(a);
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin criterion: f (monic, degree n) is irreducible over F_ell iff
// x^{ell^n} = x mod f and gcd(x^{ell^{n/e}} - x, f) = 1 for every prime e | n.
inline bool fp_irreducible(const FpPoly& f, unsigned long ell) {
    std::size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    std::vector<std::size_t> checkpoints;
    {
        std::size_t m = n;
        for (std::size_t e = 2; e * e <= m; ++e) {
            if (m % e) continue;
            checkpoints.push_back(n / e);
            while (m % e == 0) m /= e;
        }
        if (m > 1) checkpoints.push_back(n / m);
        std::sort(checkpoints.begin(), checkpoints.end());
    }
    const FpPoly x{0, 1};
    FpPoly g = x;  // invariant: g = x^{ell^reached} mod f
    std::size_t reached = 0;
    std::size_t ci = 0;
    while (reached < n) {
        g = fp_powmod(std::move(g), ell, f, ell);
        ++reached;
        if (ci < checkpoints.size() && reached == checkpoints[ci]) {
            ++ci;
            FpPoly diff = g;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = (diff[1] + ell - 1) % ell;
            fp_normalize(diff);
            if (diff.empty()) return false;  // f divides x^{ell^m} - x outright
            FpPoly gc = fp_gcd(diff, f, ell);
            if (gc.size() != 1) return false;
        }
    }
    return g == x;
}

// reduction of an integer polynomial mod ell; nullopt when the degree drops
inline std::optional<FpPoly> reduce_mod_prime(const IntPolynomial& poly, unsigned long ell) {
    FpPoly f(poly.coeffs().size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = mpz_fdiv_ui(poly.coeffs()[i].get_mpz_t(), ell);
    if (f.empty() || f.back() == 0) return std::nullopt;
    unsigned long inv = fp_powmod_ul(f.back(), ell - 2, ell);
    for (auto& c : f) c = (c * inv) % ell;
    return f;
}

}  // namespace detail

// Irreducibility over the rationals. A prime ell preserving the degree with
// the reduction irreducible mod ell certifies irreducibility (the polynomial
// is primitive up to sign, constant term -1). Rank 5 returns its known exact
// divisor instead; anything else without a certifying prime in budget is Unknown.
inline IrreducibilityResult irreducibility_certificate(int rank, unsigned long prime_budget = 1000) {
    if (prime_budget < 2 || prime_budget > (1UL << 20))
        throw std::invalid_argument("prime budget must be in [2, 2^20]");
    GrowthPolynomial g = growth_poly(rank);
    if (rank == 5) {
        IntPolynomial witness(std::vector<mpz_class>{1, 9, 81});
        if (!g.poly.divide_exact(witness))
            throw std::logic_error("known witness factor must divide the rank-5 polynomial");
        return {IrreducibilityResult::Kind::ReducibleWitness, 0, witness};
    }
    for (unsigned long ell = 2; ell <= prime_budget; ell = (ell == 2 ? 3 : ell + 2)) {
        if (!detail::is_prime_ul(ell)) continue;
        auto f = detail::reduce_mod_prime(g.poly, ell);
        if (!f) continue;
        if (detail::fp_irreducible(*f, ell))
            return {IrreducibilityResult::Kind::Irreducible, ell, IntPolynomial()};
    }
    return {IrreducibilityResult::Kind::Unknown, 0, IntPolynomial()};
}

}  // namespace fim
