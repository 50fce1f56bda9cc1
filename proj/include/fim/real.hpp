#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>

namespace fim {

// Arbitrary-precision binary float; thin RAII wrapper over MPFR, all
// operations round to nearest at the wider operand precision.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, clamp_prec(prec));
        mpfr_set_ui(v_, 0, MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static Real of(double v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    static Real of(const mpz_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const mpq_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    // 2^e, exact
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string fixed(int decimals) const { return format("%.*Rf", decimals); }
    std::string sci(int decimals) const { return format("%.*Re", decimals); }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) {
        if (mpfr_zero_p(b.v_)) throw std::domain_error("division by zero");
        return binop(a, b, mpfr_div);
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend Real ln(const Real& a) {
        if (mpfr_sgn(a.v_) <= 0) throw std::domain_error("ln requires a positive argument");
        Real r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        if (mpfr_sgn(a.v_) < 0) throw std::domain_error("sqrt requires a nonnegative argument");
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
        int c = mpfr_cmp(a.v_, b.v_);
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

  private:
    mpfr_t v_;

    static mpfr_prec_t clamp_prec(mpfr_prec_t prec) {
        if (prec < MPFR_PREC_MIN) return MPFR_PREC_MIN;
        if (prec > 1'000'000) throw std::invalid_argument("precision beyond supported budget");
        return prec;
    }

    using binfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(const Real& a, const Real& b, binfn f) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    std::string format(const char* fmt, int decimals) const {
        char* buf = nullptr;
        if (mpfr_asprintf(&buf, fmt, decimals, v_) < 0 || !buf)
            throw std::runtime_error("mpfr formatting failed");
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }
};

// Working precision in bits for a decimal-digit request, with guard digits
// that grow with the polynomial parameter p.
inline mpfr_prec_t working_precision(long digits, long p) {
    long pd = 0;
    for (long v = p; v > 0; v /= 10) ++pd;
    long total = digits + 2 * pd + 10;
    return static_cast<mpfr_prec_t>(total * 3322 / 1000 + 32);
}

}  // namespace fim
