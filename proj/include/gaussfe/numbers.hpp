// numbers.hpp
//
// The exact number tower: big rationals (GMP), quadratic irrationals
// (a + b·√d)/c in canonical form, high-precision floats (MPFR), and the
// ExactReal tagged union everything downstream computes on.
//
// All values are immutable after construction and safe to share across
// threads.
#pragma once

#include "gaussfe/bigfloat.hpp"
#include "gaussfe/errors.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace gaussfe {

// (a + b·√d)/c with b ≠ 0, d squarefree > 1, c > 0, gcd(a,b,c) = 1.
// Closed under the operations the Gauss map needs: x ± r, r·x, 1/x, with
// r rational, all staying inside Q(√d).
class QuadIrrational {
public:
    QuadIrrational(BigInt a, BigInt b, BigInt d, BigInt c);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& d() const { return d_; }
    const BigInt& c() const { return c_; }

    int sign() const;
    BigInt floor() const;  // exact, by integer bracketing of b·√d
    QuadIrrational invert() const;
    QuadIrrational add_rational(const BigRational& r) const;
    QuadIrrational mul_rational(const BigRational& r) const;  // r ≠ 0
    QuadIrrational negate() const;

    // Exact comparison with a rational (sign of this − r).
    int compare(const BigRational& r) const;
    // Exact comparison with another quadratic irrational (any d).
    int compare(const QuadIrrational& o) const;

    bool operator==(const QuadIrrational& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_ && c_ == o.c_;
    }

    // Correctly rounded to `prec` bits (Ziv's strategy: retry with guard bits
    // until the rounding is unambiguous).
    BigFloat to_float(long prec) const;

    std::string to_string() const;  // "(a+b*sqrt(d))/c", canonical

private:
    BigInt a_, b_, d_, c_;
};

// Squarefree decomposition helper: writes n = s²·f with f squarefree and
// returns (s, f). Requires n > 0. Trial division up to an internal bound,
// then perfect-square extraction of the cofactor; cofactors with a square
// prime factor beyond the bound are rejected with domain_error.
std::pair<BigInt, BigInt> extract_square_part(const BigInt& n);

class ExactReal {
public:
    enum class Kind { Rational, Quadratic, Float };

    ExactReal() : v_(BigRational(0)) {}
    ExactReal(BigRational q) : v_(std::move(q)) { std::get<BigRational>(v_).canonicalize(); }
    ExactReal(QuadIrrational q) : v_(std::move(q)) {}
    ExactReal(BigFloat f) : v_(std::move(f)) {}
    static ExactReal from_long(long n) { return ExactReal(BigRational(n)); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_rational() const { return kind() == Kind::Rational; }
    bool is_quadratic() const { return kind() == Kind::Quadratic; }
    bool is_float() const { return kind() == Kind::Float; }

    const BigRational& rational() const { return std::get<BigRational>(v_); }
    const QuadIrrational& quadratic() const { return std::get<QuadIrrational>(v_); }
    const BigFloat& flt() const { return std::get<BigFloat>(v_); }

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;

    // Exact total order across kinds (floats participate as the dyadic
    // rationals they are; quadratic-vs-quadratic with distinct d resolved by
    // refinement, which terminates because such values are never equal).
    int compare(const ExactReal& o) const;
    int compare_rational(const BigRational& r) const;
    bool operator==(const ExactReal& o) const { return compare(o) == 0; }
    bool operator<(const ExactReal& o) const { return compare(o) < 0; }

    std::string to_string() const;  // canonical, round-trips through parse

    friend ExactReal operator+(const ExactReal& a, const BigRational& r);
    friend ExactReal operator-(const ExactReal& a, const BigRational& r);
    friend ExactReal operator*(const ExactReal& a, const BigRational& r);

private:
    std::variant<BigRational, QuadIrrational, BigFloat> v_;
};

// x = ⌊x⌋ + {x}: returns (⌊x⌋, {x}) with 0 ≤ {x} < 1, exact for rational and
// quadratic kinds, exact for floats too (a float is a dyadic rational).
std::pair<BigInt, ExactReal> floor_frac(const ExactReal& x);

// Exact reciprocal within the same kind. Throws domain_error on x = 0.
ExactReal invert(const ExactReal& x);

// Correctly rounded P-bit value (error ≤ ½ ulp). P ≥ 53.
BigFloat to_float(const ExactReal& x, long prec = kDefaultPrecision);

// Parses "p/q", "(a+b*sqrt(d))/c" (the b* may be omitted, signs allowed),
// plain integers, and decimal literals with an optional "@P" precision
// suffix. Rational and quadratic forms round-trip bit-exactly through
// to_string().
ExactReal parse_exact_real(const std::string& text);

}  // namespace gaussfe
