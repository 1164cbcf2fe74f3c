#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussfe/numbers.hpp"

#include <random>
#include <string>

using namespace gaussfe;

namespace {

ExactReal golden_conj() { return parse_exact_real("(-1+1*sqrt(5))/2"); }  // (√5−1)/2

// Integer square-root oracle: first `digits` decimal digits of (−1+√5)/2
// after the decimal point, via ⌊√(5·10^(2k))⌋ with two guard digits.
std::string golden_digits_oracle(int digits) {
    unsigned long k = static_cast<unsigned long>(digits) + 2;
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, k);
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), BigInt(5 * pow10 * pow10).get_mpz_t());
    BigInt x = (s - pow10) / 2;
    return x.get_str().substr(0, static_cast<size_t>(digits));
}

}  // namespace

TEST_CASE("floor_frac on rationals") {
    auto [n, f] = floor_frac(parse_exact_real("7/3"));
    CHECK(n == 2);
    CHECK(f.rational() == BigRational(1, 3));

    auto [n2, f2] = floor_frac(parse_exact_real("-1/2"));
    CHECK(n2 == -1);
    CHECK(f2.rational() == BigRational(1, 2));

    auto [n3, f3] = floor_frac(ExactReal(BigRational(4)));
    CHECK(n3 == 4);
    CHECK(f3.sign() == 0);
}

TEST_CASE("floor_frac on quadratic irrationals") {
    // 1 < (1+√5)/2 < 2 because 1 < √5 < 3
    ExactReal phi = parse_exact_real("(1+1*sqrt(5))/2");
    auto [n, f] = floor_frac(phi);
    CHECK(n == 1);
    CHECK(f == golden_conj());

    // negative side: −φ has floor −2
    ExactReal neg_phi = parse_exact_real("(-1-1*sqrt(5))/2");
    auto [n2, f2] = floor_frac(neg_phi);
    CHECK(n2 == -2);
    CHECK(f2.compare_rational(BigRational(0)) > 0);
    CHECK(f2.compare_rational(BigRational(1)) < 0);
}

TEST_CASE("invert") {
    CHECK(invert(parse_exact_real("2/5")).rational() == BigRational(5, 2));

    // (−1+√5)/2 → (1+√5)/2, and the product with the original is exactly one
    ExactReal x = golden_conj();
    ExactReal inv = invert(x);
    CHECK(inv == parse_exact_real("(1+1*sqrt(5))/2"));

    ExactReal quarter(BigFloat::from_double(0.25));
    CHECK(invert(quarter).flt().to_double() == 4.0);

    CHECK_THROWS_AS(invert(ExactReal(BigRational(0))), domain_error);
}

TEST_CASE("invert is an involution on quadratics") {
    std::mt19937_64 rng(12345);
    int built = 0;
    while (built < 200) {
        long a = static_cast<long>(rng() % 41) - 20;
        long b = static_cast<long>(rng() % 41) - 20;
        long d = static_cast<long>(rng() % 60) + 2;
        long c = static_cast<long>(rng() % 30) + 1;
        if (b == 0) continue;
        ExactReal x;
        try {
            x = parse_exact_real("(" + std::to_string(a) + (b < 0 ? "-" : "+") +
                                 std::to_string(std::abs(b)) + "*sqrt(" + std::to_string(d) +
                                 "))/" + std::to_string(c));
        } catch (const domain_error&) {
            continue;  // degenerated to rational (square d)
        }
        if (!x.is_quadratic() || x.sign() == 0) continue;
        ++built;
        ExactReal back = invert(invert(x));
        REQUIRE(back.is_quadratic());
        CHECK(back == x);
        CHECK(back.quadratic() == x.quadratic());  // canonical-form equality
    }
}

TEST_CASE("to_float is correctly rounded and monotone in precision") {
    BigFloat third = to_float(ExactReal(BigRational(1, 3)), 128);
    CHECK(third.precision() == 128);

    BigFloat zero = to_float(ExactReal(BigRational(0)), 64);
    CHECK(zero.is_zero());

    ExactReal g = golden_conj();
    for (long P : {64L, 128L, 192L}) {
        BigFloat lo = to_float(g, P);
        BigFloat hi = to_float(g, 2 * P);
        CHECK(abs(hi - lo) <= BigFloat::pow2(1 - P));
    }
}

TEST_CASE("golden ratio digits match the integer square-root oracle") {
    // frozen from golden_digits_oracle(38)
    const std::string expect = "61803398874989484820458683436563811772";
    CHECK(golden_digits_oracle(38) == expect);
    BigFloat v = to_float(golden_conj(), 160);
    std::string got = v.to_string(40);
    REQUIRE(got.substr(0, 2) == "0.");
    CHECK(got.substr(2, 30) == expect.substr(0, 30));
}

TEST_CASE("rational ops agree with an integer-arithmetic oracle") {
    std::mt19937_64 rng(999);
    for (int i = 0; i < 2000; ++i) {
        long den = static_cast<long>(rng() % 9999) + 1;
        long num = static_cast<long>(rng() % 20001) - 10000;
        BigRational x(num, den);
        x.canonicalize();
        auto [fl, fr] = floor_frac(ExactReal(x));
        // oracle: floor division on (num, den)
        long fo = static_cast<long>(std::floor(static_cast<double>(num) / den));
        // double floor can be off by one near integers: fix with exact check
        while (BigRational(fo + 1) <= x) ++fo;
        while (BigRational(fo) > x) --fo;
        CHECK(fl == fo);
        CHECK(fr.rational() == x - fo);
        if (sgn(x) != 0) {
            CHECK(invert(ExactReal(x)).rational() == 1 / x);
        }
    }
}

TEST_CASE("kind preservation under Gauss steps") {
    ExactReal x = golden_conj();
    for (int i = 0; i < 12; ++i) {
        ExactReal inv = invert(x);
        auto [n, f] = floor_frac(inv);
        (void)n;
        REQUIRE(f.is_quadratic());
        x = f;
    }
}

TEST_CASE("parsing round-trips") {
    for (const char* s : {"7/3", "-1/2", "0", "4", "(-1+1*sqrt(5))/2", "(3-2*sqrt(7))/5",
                          "(0+1*sqrt(2))/1"}) {
        ExactReal x = parse_exact_real(s);
        ExactReal y = parse_exact_real(x.to_string());
        CHECK(x == y);
        CHECK(x.to_string() == y.to_string());
    }
    // decimal with precision suffix
    ExactReal d = parse_exact_real("0.25@96");
    CHECK(d.is_float());
    CHECK(d.flt().precision() == 96);
    CHECK(d.flt().to_double() == 0.25);

    // loose quadratic spellings normalize
    CHECK(parse_exact_real("sqrt(2)-1") == parse_exact_real("(-1+1*sqrt(2))/1"));
    CHECK(parse_exact_real("(1+sqrt(5))/2") == parse_exact_real("(1+1*sqrt(5))/2"));
    // square radicands collapse to rationals
    CHECK(parse_exact_real("(1+sqrt(4))/3").rational() == BigRational(1));
    CHECK(parse_exact_real("sqrt(8)") == parse_exact_real("2*sqrt(2)"));

    CHECK_THROWS_AS(parse_exact_real("1/"), parse_error);
    CHECK_THROWS_AS(parse_exact_real("sqrt(-3)"), parse_error);
    CHECK_THROWS_AS(parse_exact_real("bogus"), parse_error);
}

TEST_CASE("cross-kind comparisons are exact") {
    ExactReal g = golden_conj();
    CHECK(g.compare_rational(BigRational(6, 10)) > 0);
    CHECK(g.compare_rational(BigRational(62, 100)) < 0);
    // dyadic float vs rational
    ExactReal h(BigFloat::from_double(0.5));
    CHECK(h.compare(ExactReal(BigRational(1, 2))) == 0);
    // √2 vs √3 (distinct fields, resolved by refinement)
    CHECK(parse_exact_real("sqrt(2)").compare(parse_exact_real("sqrt(3)")) < 0);
    // 1+√2 vs √3+... equality across distinct d is impossible
    CHECK(parse_exact_real("(0+2*sqrt(2))/2").compare(parse_exact_real("sqrt(2)")) == 0);
}

TEST_CASE("extract_square_part certifies squarefree parts") {
    auto [s1, f1] = extract_square_part(BigInt(8));
    CHECK(s1 == 2);
    CHECK(f1 == 2);
    auto [s2, f2] = extract_square_part(BigInt(242));  // 2·11²
    CHECK(s2 == 11);
    CHECK(f2 == 2);
    auto [s3, f3] = extract_square_part(BigInt(1));
    CHECK(s3 == 1);
    CHECK(f3 == 1);
    auto [s4, f4] = extract_square_part(BigInt(360));  // 2³·3²·5
    CHECK(s4 == 6);
    CHECK(f4 == 10);
}
