#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fim {

// Dense univariate polynomial with exact integer coefficients, stored in
// ascending degree; the zero polynomial has no coefficients and degree -1.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { normalize(); }

    static IntPolynomial monomial(const mpz_class& coefficient, std::size_t degree) {
        std::vector<mpz_class> c(degree + 1);
        c[degree] = coefficient;
        return IntPolynomial(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    const mpz_class& coeff(std::size_t i) const {
        static const mpz_class zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator-(const IntPolynomial& a) {
        std::vector<mpz_class> c(a.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(c));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    mpz_class eval_z(const mpz_class& x) const {
        mpz_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // exact sign at a rational point via the homogenized Horner scheme
    int sign_at(const mpq_class& x) const {
        if (c_.empty()) return 0;
        mpq_class xc = x;
        xc.canonicalize();
        const mpz_class& a = xc.get_num();
        const mpz_class& b = xc.get_den();  // > 0 after canonicalization
        mpz_class acc = c_.back();
        mpz_class bp = 1;
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            bp *= b;
            acc = acc * a + c_[i] * bp;
        }
        return sgn(acc);
    }

    // quotient when the divisor divides exactly over the integers, else nullopt
    std::optional<IntPolynomial> divide_exact(const IntPolynomial& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
        if (is_zero()) return IntPolynomial();
        if (degree() < d.degree()) return std::nullopt;
        std::vector<mpz_class> rem = c_;
        std::vector<mpz_class> quot(static_cast<std::size_t>(degree() - d.degree()) + 1);
        const mpz_class& lead = d.c_.back();
        for (std::size_t qi = quot.size(); qi-- > 0;) {
            mpz_class& top = rem[qi + d.c_.size() - 1];
            if (top == 0) continue;
            if (mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()) == 0) return std::nullopt;
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[qi + j] -= q * d.c_[j];
            quot[qi] = std::move(q);
        }
        for (const mpz_class& r : rem)
            if (r != 0) return std::nullopt;
        return IntPolynomial(std::move(quot));
    }

    // e.g. "-9y^2 + 33y - 1"
    std::string pretty(std::string_view var = "y") const {
        if (c_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            mpz_class mag = abs(c_[i]);
            if (first) {
                if (c_[i] < 0) out << '-';
                first = false;
            } else {
                out << (c_[i] < 0 ? " - " : " + ");
            }
            if (i == 0 || mag != 1) out << mag.get_str();
            if (i > 0) {
                out << var;
                if (i > 1) out << '^' << i;
            }
        }
        return out.str();
    }

    // coefficients from the leading term down, space separated
    std::string coeffs_descending() const {
        if (c_.empty()) return "0";
        std::ostringstream out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            out << c_[i].get_str();
            if (i) out << ' ';
        }
        return out.str();
    }

  private:
    std::vector<mpz_class> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

}  // namespace fim
