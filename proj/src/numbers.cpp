#include "gaussfe/numbers.hpp"

#include <cctype>
#include <sstream>

namespace gaussfe {

namespace {

// sign of B·√d − K for squarefree d > 1 (so B·√d is irrational unless B = 0,
// and ties against integers cannot occur with B ≠ 0).
int cmp_sqrt_term(const BigInt& B, const BigInt& d, const BigInt& K) {
    int sb = sgn(B), sk = sgn(K);
    if (sb == 0) return -sk;
    if (sb > 0 && sk <= 0) return +1;
    if (sb < 0 && sk >= 0) return -1;
    BigInt lhs = B * B * d;
    BigInt rhs = K * K;
    int c = cmp(lhs, rhs);
    return sb > 0 ? c : -c;
}

// sign of A + B·√d (d squarefree > 1).
int sign_of_quadratic_form(const BigInt& A, const BigInt& B, const BigInt& d) {
    return cmp_sqrt_term(B, d, -A);
}

BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace

std::pair<BigInt, BigInt> extract_square_part(const BigInt& n) {
    if (n <= 0) throw domain_error("extract_square_part: argument must be positive");
    BigInt m = n, s = 1, sqfree = 1;
    // remove every factor f while f^3 <= m; the remainder then has no prime
    // factor up to its cube root, so it is 1, p, p·q, or p^2, and the last
    // case is caught by the perfect-square test
    const long kTrialBound = 100000;
    for (long f = 2; BigInt(f) * f * f <= m; ++f) {
        if (f > kTrialBound)
            throw domain_error("extract_square_part: value too large to certify squarefree");
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(f))) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(f))) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(f));
                ++e;
            }
            BigInt fp;
            mpz_ui_pow_ui(fp.get_mpz_t(), static_cast<unsigned long>(f), e / 2);
            s *= fp;
            if (e & 1) sqfree *= f;
        }
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        s *= isqrt(m);
    } else {
        sqfree *= m;
    }
    return {s, sqfree};
}

QuadIrrational::QuadIrrational(BigInt a, BigInt b, BigInt d, BigInt c)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {
    if (sgn(c_) == 0) throw domain_error("QuadIrrational: zero denominator");
    if (sgn(b_) == 0) throw domain_error("QuadIrrational: rational value (b = 0)");
    if (d_ <= 1) throw domain_error("QuadIrrational: d must exceed 1");
    auto [s, f] = extract_square_part(d_);
    if (f == 1) throw domain_error("QuadIrrational: d is a perfect square (rational value)");
    b_ *= s;
    d_ = f;
    if (sgn(c_) < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    BigInt g = gcd(gcd(a_, b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

int QuadIrrational::sign() const { return sign_of_quadratic_form(a_, b_, d_); }

BigInt QuadIrrational::floor() const {
    // floor(b·√d) first: b²d is never a perfect square, so brackets are strict
    BigInt t = isqrt(b_ * b_ * d_);
    BigInt fl_bsq = sgn(b_) >= 0 ? t : -t - 1;
    // initial guess, then fix up with exact comparisons
    BigInt n;
    mpz_fdiv_q(n.get_mpz_t(), BigInt(a_ + fl_bsq).get_mpz_t(), c_.get_mpz_t());
    // want: n·c ≤ a + b√d < (n+1)·c  ⟺  b√d ≥ n·c − a and b√d < (n+1)·c − a
    while (cmp_sqrt_term(b_, d_, n * c_ - a_) < 0) n -= 1;
    while (cmp_sqrt_term(b_, d_, (n + 1) * c_ - a_) >= 0) n += 1;
    return n;
}

QuadIrrational QuadIrrational::invert() const {
    // c/(a + b√d) = c(a − b√d)/(a² − b²d)
    BigInt norm = a_ * a_ - b_ * b_ * d_;
    return QuadIrrational(c_ * a_, -c_ * b_, d_, norm);
}

QuadIrrational QuadIrrational::add_rational(const BigRational& r) const {
    const BigInt& p = r.get_num();
    const BigInt& q = r.get_den();
    return QuadIrrational(a_ * q + p * c_, b_ * q, d_, c_ * q);
}

QuadIrrational QuadIrrational::mul_rational(const BigRational& r) const {
    if (sgn(r) == 0) throw domain_error("QuadIrrational::mul_rational: zero multiplier");
    const BigInt& p = r.get_num();
    const BigInt& q = r.get_den();
    return QuadIrrational(a_ * p, b_ * p, d_, c_ * q);
}

QuadIrrational QuadIrrational::negate() const { return QuadIrrational(-a_, -b_, d_, c_); }

int QuadIrrational::compare(const BigRational& r) const {
    // sign of (a + b√d)/c − p/q with c, q > 0
    const BigInt& p = r.get_num();
    const BigInt& q = r.get_den();
    return sign_of_quadratic_form(a_ * q - p * c_, b_ * q, d_);
}

int QuadIrrational::compare(const QuadIrrational& o) const {
    if (d_ == o.d_) {
        // difference stays in Q(√d)
        return sign_of_quadratic_form(a_ * o.c_ - o.a_ * c_, b_ * o.c_ - o.b_ * c_, d_);
    }
    // distinct squarefree d: values are never equal (1, √d, √d' are
    // Q-independent), so float refinement terminates
    for (long prec = 96;; prec *= 2) {
        BigFloat x = to_float(prec), y = o.to_float(prec);
        BigFloat gap = abs(x - y);
        BigFloat bound = (abs(x) + abs(y) + 1) * BigFloat::pow2(4 - prec);
        if (gap > bound) return cmp(x, y);
        if (prec > 1 << 20)
            throw undecidable_error("QuadIrrational::compare: refinement exhausted");
    }
}

BigFloat QuadIrrational::to_float(long prec) const {
    if (prec < kMinPrecision) throw domain_error("to_float: precision below 53 bits");
    // Ziv rounding loop: evaluate with guard bits until the target rounding
    // is unambiguous. a + b√d can cancel catastrophically (deep-orbit β
    // values), so the usable-bit count must subtract the exponent drop.
    for (long w = prec + 32;;) {
        mpfr_t s, num;
        mpfr_init2(s, w);
        mpfr_init2(num, w);
        mpfr_set_z(s, d_.get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(s, s, MPFR_RNDN);
        mpfr_mul_z(s, s, b_.get_mpz_t(), MPFR_RNDN);
        long e_terms = mpfr_get_exp(s);
        if (sgn(a_) != 0)
            e_terms = std::max(e_terms,
                               static_cast<long>(mpz_sizeinbase(a_.get_mpz_t(), 2)));
        mpfr_add_z(num, s, a_.get_mpz_t(), MPFR_RNDN);
        long cancelled = mpfr_zero_p(num) ? w : std::max(0L, e_terms - mpfr_get_exp(num));
        mpfr_div_z(num, num, c_.get_mpz_t(), MPFR_RNDN);
        long good_bits = w - 3 - cancelled;
        if (good_bits >= prec + 2 && mpfr_can_round(num, good_bits, MPFR_RNDN, MPFR_RNDN, prec)) {
            BigFloat r(prec);
            mpfr_set(r.raw(), num, MPFR_RNDN);
            mpfr_clear(s);
            mpfr_clear(num);
            return r;
        }
        mpfr_clear(s);
        mpfr_clear(num);
        w += cancelled + 32;
        if (w > prec + (1L << 24)) throw domain_error("QuadIrrational::to_float: no convergence");
    }
}

std::string QuadIrrational::to_string() const {
    std::ostringstream os;
    BigInt abs_b = abs(b_);
    os << "(" << a_.get_str() << (sgn(b_) < 0 ? "-" : "+") << abs_b.get_str() << "*sqrt("
       << d_.get_str() << "))/" << c_.get_str();
    return os.str();
}

int ExactReal::sign() const {
    switch (kind()) {
        case Kind::Rational: return sgn(rational());
        case Kind::Quadratic: return quadratic().sign();
        case Kind::Float: return flt().sign();
    }
    return 0;
}

bool ExactReal::is_integer() const {
    switch (kind()) {
        case Kind::Rational: return rational().get_den() == 1;
        case Kind::Quadratic: return false;
        case Kind::Float: return flt().is_integer();
    }
    return false;
}

int ExactReal::compare_rational(const BigRational& r) const {
    switch (kind()) {
        case Kind::Rational: return cmp(rational(), r);
        case Kind::Quadratic: return quadratic().compare(r);
        case Kind::Float: return cmp(flt().to_exact_rational(), r);
    }
    return 0;
}

int ExactReal::compare(const ExactReal& o) const {
    if (o.is_quadratic()) {
        if (is_quadratic()) return quadratic().compare(o.quadratic());
        // this is rational-valued (exact), flip the quadratic comparison
        BigRational me = is_rational() ? rational() : flt().to_exact_rational();
        return -o.quadratic().compare(me);
    }
    BigRational other = o.is_rational() ? o.rational() : o.flt().to_exact_rational();
    return compare_rational(other);
}

std::string ExactReal::to_string() const {
    switch (kind()) {
        case Kind::Rational: {
            const BigRational& q = rational();
            if (q.get_den() == 1) return q.get_num().get_str();
            return q.get_num().get_str() + "/" + q.get_den().get_str();
        }
        case Kind::Quadratic: return quadratic().to_string();
        case Kind::Float: return flt().to_string() + "@" + std::to_string(flt().precision());
    }
    return {};
}

ExactReal operator+(const ExactReal& a, const BigRational& r) {
    switch (a.kind()) {
        case ExactReal::Kind::Rational: return ExactReal(BigRational(a.rational() + r));
        case ExactReal::Kind::Quadratic: return ExactReal(a.quadratic().add_rational(r));
        case ExactReal::Kind::Float: return ExactReal(a.flt() + BigFloat::from_rational(r, a.flt().precision()));
    }
    return a;
}

ExactReal operator-(const ExactReal& a, const BigRational& r) { return a + BigRational(-r); }

ExactReal operator*(const ExactReal& a, const BigRational& r) {
    switch (a.kind()) {
        case ExactReal::Kind::Rational: return ExactReal(BigRational(a.rational() * r));
        case ExactReal::Kind::Quadratic:
            if (sgn(r) == 0) return ExactReal(BigRational(0));
            return ExactReal(a.quadratic().mul_rational(r));
        case ExactReal::Kind::Float: return ExactReal(a.flt() * BigFloat::from_rational(r, a.flt().precision()));
    }
    return a;
}

std::pair<BigInt, ExactReal> floor_frac(const ExactReal& x) {
    switch (x.kind()) {
        case ExactReal::Kind::Rational: {
            BigInt n, rem;
            mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), x.rational().get_num().get_mpz_t(),
                        x.rational().get_den().get_mpz_t());
            BigRational frac(rem, x.rational().get_den());
            frac.canonicalize();
            return {n, ExactReal(frac)};
        }
        case ExactReal::Kind::Quadratic: {
            BigInt n = x.quadratic().floor();
            return {n, ExactReal(x.quadratic().add_rational(BigRational(-n)))};
        }
        case ExactReal::Kind::Float: {
            // a float is a dyadic rational; x − ⌊x⌋ fits in the same width
            BigInt n = x.flt().floor_int();
            BigFloat frac = x.flt() - BigFloat::from_int(n, x.flt().precision());
            return {n, ExactReal(frac)};
        }
    }
    return {BigInt(0), x};
}

ExactReal invert(const ExactReal& x) {
    if (x.sign() == 0) throw domain_error("invert: division by zero");
    switch (x.kind()) {
        case ExactReal::Kind::Rational: {
            BigRational r = 1 / x.rational();
            r.canonicalize();
            return ExactReal(r);
        }
        case ExactReal::Kind::Quadratic: return ExactReal(x.quadratic().invert());
        case ExactReal::Kind::Float: {
            BigFloat one = BigFloat::from_long(1, x.flt().precision());
            return ExactReal(one / x.flt());
        }
    }
    return x;
}

BigFloat to_float(const ExactReal& x, long prec) {
    if (prec < kMinPrecision) throw domain_error("to_float: precision below 53 bits");
    switch (x.kind()) {
        case ExactReal::Kind::Rational: return BigFloat::from_rational(x.rational(), prec);
        case ExactReal::Kind::Quadratic: return x.quadratic().to_float(prec);
        case ExactReal::Kind::Float: return x.flt().round_to(prec);
    }
    return BigFloat(prec);
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::string(w).size();
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    BigInt parse_uint() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw parse_error("expected integer in \"" + s + "\" at position " + std::to_string(start));
        return BigInt(s.substr(start, i - start));
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

bool looks_like_decimal(const std::string& t) {
    bool has_digit = false;
    for (size_t j = 0; j < t.size(); ++j) {
        char c = t[j];
        if (std::isdigit(static_cast<unsigned char>(c))) has_digit = true;
        if (c == '.' || c == '@') return has_digit || c == '.';
        if ((c == 'e' || c == 'E') && has_digit) return true;
        if (c == 's' || c == '(' || c == '/') return false;
    }
    return false;
}

ExactReal make_quadratic(BigInt a, BigInt b, const BigInt& d_raw, BigInt c) {
    if (sgn(c) == 0) throw parse_error("zero denominator");
    if (sgn(b) == 0 || d_raw == 0) {
        BigRational r(a, c);
        r.canonicalize();
        return ExactReal(r);
    }
    if (d_raw < 0) throw parse_error("sqrt of negative integer");
    auto [sq, f] = extract_square_part(d_raw);
    b *= sq;
    if (f == 1) {
        BigRational r(a + b, c);
        r.canonicalize();
        return ExactReal(r);
    }
    return ExactReal(QuadIrrational(std::move(a), std::move(b), f, std::move(c)));
}

ExactReal parse_decimal(const std::string& text) {
    std::string body = text;
    long prec = kDefaultPrecision;
    if (auto at = text.find('@'); at != std::string::npos) {
        body = text.substr(0, at);
        try {
            prec = std::stol(text.substr(at + 1));
        } catch (...) {
            throw parse_error("bad precision suffix in \"" + text + "\"");
        }
        if (prec < kMinPrecision) throw parse_error("precision suffix below 53");
    }
    BigFloat v(prec);
    // trim spaces for mpfr_set_str
    std::string trimmed;
    for (char c : body)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty() || mpfr_set_str(v.raw(), trimmed.c_str(), 10, MPFR_RNDN) != 0)
        throw parse_error("bad decimal literal \"" + text + "\"");
    return ExactReal(v);
}

}  // namespace

ExactReal parse_exact_real(const std::string& text) {
    if (looks_like_decimal(text)) return parse_decimal(text);

    Parser p(text);
    bool parens = p.eat('(');
    BigInt a = 0, b = 0, d = 0;

    // term list: [sign] (uint [* sqrt(uint)] | sqrt(uint))
    bool first = true;
    while (true) {
        p.skip_ws();
        int sign = 1;
        if (p.eat('-')) sign = -1;
        else if (p.eat('+')) sign = 1;
        else if (!first) break;

        if (p.eat_word("sqrt")) {
            if (!p.eat('(')) throw parse_error("expected ( after sqrt in \"" + text + "\"");
            BigInt dd = p.parse_uint();
            if (!p.eat(')')) throw parse_error("expected ) in \"" + text + "\"");
            if (d != 0 && d != dd) throw parse_error("mixed radicands in \"" + text + "\"");
            d = dd;
            b += sign;
        } else {
            BigInt n = p.parse_uint();
            if (p.eat('*')) {
                if (!p.eat_word("sqrt") || !p.eat('('))
                    throw parse_error("expected sqrt( after * in \"" + text + "\"");
                BigInt dd = p.parse_uint();
                if (!p.eat(')')) throw parse_error("expected ) in \"" + text + "\"");
                if (d != 0 && d != dd) throw parse_error("mixed radicands in \"" + text + "\"");
                d = dd;
                b += sign * n;
            } else {
                a += sign * n;
            }
        }
        first = false;
        p.skip_ws();
        if (p.i >= p.s.size() || (p.s[p.i] != '+' && p.s[p.i] != '-')) break;
    }
    if (parens && !p.eat(')')) throw parse_error("missing ) in \"" + text + "\"");

    BigInt c = 1;
    if (p.eat('/')) {
        bool neg = p.eat('-');
        c = p.parse_uint();
        if (neg) c = -c;
    }
    if (!p.done()) throw parse_error("trailing characters in \"" + text + "\"");
    return make_quadratic(std::move(a), std::move(b), d, std::move(c));
}

}  // namespace gaussfe
