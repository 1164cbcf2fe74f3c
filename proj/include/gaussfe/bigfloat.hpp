// bigfloat.hpp
//
// Thin RAII value type over MPFR with explicit per-value precision, plus a
// complex companion built from two BigFloats. Every operation rounds to
// nearest-even; binary operations produce a result carrying the larger of
// the operand precisions unless an explicit precision is requested.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace gaussfe {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline constexpr long kDefaultPrecision = 128;
inline constexpr long kMinPrecision = 53;

class BigFloat {
public:
    BigFloat() { mpfr_init2(v_, kDefaultPrecision); mpfr_set_zero(v_, +1); }
    explicit BigFloat(long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, +1); }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, kMinPrecision);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long n, long prec = kDefaultPrecision) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static BigFloat from_double(double d, long prec = kDefaultPrecision) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static BigFloat from_int(const BigInt& n, long prec = kDefaultPrecision) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_rational(const BigRational& q, long prec = kDefaultPrecision) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    long precision() const { return mpfr_get_prec(v_); }
    BigFloat round_to(long prec) const {
        BigFloat r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    BigInt floor_int() const {
        BigInt n;
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(v_));
        mpfr_floor(t, v_);
        mpfr_get_z(n.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return n;
    }
    // Exact value as a dyadic rational. Requires a finite value.
    BigRational to_exact_rational() const;

    // Arithmetic. Result precision = max of operand precisions.
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(mpfr_add, a, b); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(mpfr_sub, a, b); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(mpfr_mul, a, b); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(mpfr_div, a, b); }
    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator*(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) { return un(mpfr_sqrt, a); }
    friend BigFloat log(const BigFloat& a) { return un(mpfr_log, a); }
    friend BigFloat exp(const BigFloat& a) { return un(mpfr_exp, a); }
    friend BigFloat sin(const BigFloat& a) { return un(mpfr_sin, a); }
    friend BigFloat cos(const BigFloat& a) { return un(mpfr_cos, a); }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) { return bin(mpfr_atan2, y, x); }
    friend BigFloat pow(const BigFloat& a, const BigFloat& b) { return bin(mpfr_pow, a, b); }
    friend BigFloat powi(const BigFloat& a, long n) {
        BigFloat r(a.precision());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }

    // 2^e as a BigFloat (exact for any e in range).
    static BigFloat pow2(long e, long prec = kMinPrecision) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    // Decimal string with enough digits to identify the value at its precision.
    std::string to_string() const;
    // Decimal string with exactly `digits` significant digits.
    std::string to_string(int digits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    static long clamp(long p) { return p < kMinPrecision ? kMinPrecision : p; }
    template <typename F>
    static BigFloat bin(F f, const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    template <typename F>
    static BigFloat un(F f, const BigFloat& a) {
        BigFloat r(a.precision());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

// Cached process-wide constants, returned at the requested precision.
BigFloat const_pi(long prec = kDefaultPrecision);
BigFloat const_euler_gamma(long prec = kDefaultPrecision);  // Euler–Mascheroni γ
BigFloat const_log_2pi(long prec = kDefaultPrecision);
BigFloat const_golden_ratio(long prec = kDefaultPrecision);  // (1+√5)/2

// Fibonacci with F(1) = F(2) = 1.
BigInt fibonacci(unsigned long k);

// sin(2π·frac) and cos(2π·frac) for frac in [0,1), with quadrant reduction so
// that frac = 0, 1/4, 1/2, 3/4 hit exact values (±1, ±0) with no pi rounding.
BigFloat sin_2pi_frac(const BigRational& frac, long prec);
BigFloat cos_2pi_frac(const BigRational& frac, long prec);

struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    explicit BigComplex(long prec) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    static BigComplex real(BigFloat r) {
        BigComplex z;
        z.im = BigFloat(r.precision());
        z.re = std::move(r);
        return z;
    }
    static BigComplex from_doubles(double r, double i, long prec = kDefaultPrecision) {
        return {BigFloat::from_double(r, prec), BigFloat::from_double(i, prec)};
    }

    bool is_real() const { return im.is_zero(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    long precision() const { return std::max(re.precision(), im.precision()); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }

    friend BigFloat abs(const BigComplex& z) {
        BigFloat r(z.precision());
        // hypot avoids overflow and keeps correct rounding
        mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
        return r;
    }

    // Integer power by binary exponentiation; exact sign flips for θ = ±1.
    friend BigComplex powi(BigComplex base, unsigned long n) {
        BigComplex acc = BigComplex::real(BigFloat::from_long(1, base.precision()));
        while (n) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }
};

// b^s = exp(s·log b) for real b > 0 with the principal (real) logarithm.
// For real s this reduces to a single mpfr_pow.
BigComplex pow_complex(const BigFloat& base, const BigComplex& s);

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

}  // namespace gaussfe
