#include "gaussfe/bigfloat.hpp"

#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gaussfe {

BigRational BigFloat::to_exact_rational() const {
    if (!is_finite()) throw std::domain_error("BigFloat::to_exact_rational: value not finite");
    if (is_zero()) return BigRational(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    BigRational q(m);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= BigRational(p2);
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= BigRational(p2);
    }
    q.canonicalize();
    return q;
}

std::string BigFloat::to_string() const {
    // ceil(P * log10(2)) + 2 digits pins the value down at its own precision
    int digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 2;
    return to_string(digits);
}

std::string BigFloat::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (is_zero()) return "0";
    char* s = nullptr;
    // %.*Rg gives shortest-of-fixed/scientific with deterministic output
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(); }

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
    os << z.re.to_string();
    if (!z.im.is_zero()) {
        os << (z.im.is_negative() ? " - " : " + ") << abs(z.im).to_string() << "i";
    }
    return os;
}

namespace {

// One cached value per constant; recomputed only when more bits are needed.
struct ConstCache {
    std::mutex mu;
    BigFloat value{kMinPrecision};
    long bits = 0;
};

template <typename Fill>
BigFloat cached_const(ConstCache& c, long prec, Fill fill) {
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.bits < prec) {
        BigFloat v(prec + 16);
        fill(v);
        c.value = v;
        c.bits = prec + 16;
    }
    return c.value.round_to(prec);
}

}  // namespace

BigFloat const_pi(long prec) {
    static ConstCache c;
    return cached_const(c, prec, [](BigFloat& v) { mpfr_const_pi(v.raw(), MPFR_RNDN); });
}

BigFloat const_euler_gamma(long prec) {
    static ConstCache c;
    return cached_const(c, prec, [](BigFloat& v) { mpfr_const_euler(v.raw(), MPFR_RNDN); });
}

BigFloat const_log_2pi(long prec) {
    static ConstCache c;
    return cached_const(c, prec, [](BigFloat& v) {
        mpfr_const_pi(v.raw(), MPFR_RNDN);
        mpfr_mul_ui(v.raw(), v.raw(), 2, MPFR_RNDN);
        mpfr_log(v.raw(), v.raw(), MPFR_RNDN);
    });
}

BigFloat const_golden_ratio(long prec) {
    static ConstCache c;
    return cached_const(c, prec, [](BigFloat& v) {
        mpfr_sqrt_ui(v.raw(), 5, MPFR_RNDN);
        mpfr_add_ui(v.raw(), v.raw(), 1, MPFR_RNDN);
        mpfr_div_2ui(v.raw(), v.raw(), 1, MPFR_RNDN);
    });
}

BigInt fibonacci(unsigned long k) {
    BigInt f;
    mpz_fib_ui(f.get_mpz_t(), k);
    return f;
}

namespace {

// Reduce frac in [0,1) to (sign, use_cos, t) with t in [0,1/8] so that
// sin(2π frac) = sign * (use_cos ? cos(2π t) : sin(2π t)).
BigFloat sincos_2pi(const BigRational& frac, long prec, bool want_cos) {
    BigRational f = frac;
    f.canonicalize();
    // shift by a quarter turn: cos(2πf) = sin(2π(f + 1/4))
    if (want_cos) {
        f += BigRational(1, 4);
        if (f >= 1) f -= 1;
    }
    int sign = 1;
    if (f >= BigRational(1, 2)) {  // sin(2π(f)) = -sin(2π(f - 1/2))
        f -= BigRational(1, 2);
        sign = -1;
    }
    if (f > BigRational(1, 4)) f = BigRational(1, 2) - f;  // mirror about 1/4
    // now f in [0, 1/4]
    if (f == 0) return BigFloat(prec);  // exact zero
    bool use_cos = false;
    if (f > BigRational(1, 8)) {  // sin(2πf) = cos(2π(1/4 − f))
        f = BigRational(1, 4) - f;
        use_cos = true;
    }
    BigFloat angle = const_pi(prec + 8) * BigFloat::from_rational(2 * f, prec + 8);
    BigFloat r = use_cos ? cos(angle) : sin(angle);
    r = r.round_to(prec);
    return sign < 0 ? -r : r;
}

}  // namespace

BigFloat sin_2pi_frac(const BigRational& frac, long prec) { return sincos_2pi(frac, prec, false); }
BigFloat cos_2pi_frac(const BigRational& frac, long prec) { return sincos_2pi(frac, prec, true); }

BigComplex pow_complex(const BigFloat& base, const BigComplex& s) {
    if (base.sign() <= 0) throw std::domain_error("pow_complex: base must be positive");
    long prec = std::max(base.precision(), s.precision());
    if (s.im.is_zero()) {
        BigFloat r(prec);
        mpfr_pow(r.raw(), base.raw(), s.re.raw(), MPFR_RNDN);
        return BigComplex::real(std::move(r));
    }
    BigFloat lb = log(base.round_to(prec + 16));
    BigFloat a = s.re * lb;        // real part of s·log b
    BigFloat t = s.im * lb;        // imaginary part of s·log b
    BigFloat m = exp(a);
    return {(m * cos(t)).round_to(prec), (m * sin(t)).round_to(prec)};
}

}  // namespace gaussfe
