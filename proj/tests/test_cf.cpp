#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussfe/cf.hpp"

#include <random>

using namespace gaussfe;

namespace {

ExactReal golden_conj() { return parse_exact_real("(-1+1*sqrt(5))/2"); }

// Independent Euclid oracle for the quotient list of p/q.
std::vector<long> euclid_oracle(long p, long q) {
    std::vector<long> out;
    long u = q, v = p;
    while (v != 0) {
        out.push_back(u / v);
        long r = u % v;
        u = v;
        v = r;
    }
    return out;
}

BigRational rat(long n, long d) {
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("expand 2/5 matches the Euclid oracle") {
    CFState st = CFState::expand(ExactReal(rat(2, 5)), 100);
    REQUIRE(st.depth().has_value());
    CHECK(*st.depth() == 2);
    REQUIRE(st.steps() == 2);
    CHECK(st.a(1) == 2);
    CHECK(st.a(2) == 2);
    CHECK(st.p(1) == 1);
    CHECK(st.q(1) == 2);
    CHECK(st.p(2) == 2);
    CHECK(st.q(2) == 5);
    CHECK(st.alpha(1).rational() == rat(1, 2));
    CHECK(st.alpha(2).sign() == 0);
    CHECK(st.beta(0).rational() == rat(2, 5));
    CHECK(st.beta(1).rational() == rat(1, 5));

    auto oracle = euclid_oracle(2, 5);
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0] == 2);
    CHECK(oracle[1] == 2);
}

TEST_CASE("expand 0 has depth 0") {
    CFState st = CFState::expand(ExactReal(BigRational(0)), 10);
    CHECK(*st.depth() == 0);
    CHECK(st.steps() == 0);
    CHECK(st.alpha(0).sign() == 0);
    CHECK(st.beta(-1).rational() == BigRational(1));
}

TEST_CASE("golden conjugate: quotients all one, alpha fixed point") {
    ExactReal g = golden_conj();
    CFState st = CFState::expand(g, 16);
    CHECK(!st.depth().has_value());
    for (long k = 1; k <= 16; ++k) CHECK(st.a(k) == 1);
    for (long k = 0; k <= 16; ++k) CHECK(st.alpha(k) == g);
    // convergents are Fibonacci ratios: q_k = F_{k+1}
    for (long k = 1; k <= 16; ++k) {
        CHECK(st.p(k) == fibonacci(static_cast<unsigned long>(k)));
        CHECK(st.q(k) == fibonacci(static_cast<unsigned long>(k + 1)));
    }
    // β_k = x^{k+1}: compare in float at high precision
    BigFloat xf = to_float(g, 256);
    BigFloat pw = BigFloat::from_long(1, 256);
    for (long k = 0; k <= 16; ++k) {
        pw = pw * xf;
        CHECK(abs(to_float(st.beta(k), 256) - pw) <= BigFloat::pow2(-230));
    }
}

TEST_CASE("depth") {
    for (long k = 2; k <= 12; ++k) CHECK(*depth(ExactReal(rat(1, k))) == 1);
    // 3/7 = [0;2,3]: the Euclid oracle gives depth 2
    CHECK(euclid_oracle(3, 7).size() == 2);
    CHECK(*depth(ExactReal(rat(3, 7))) == 2);
    CHECK(!depth(golden_conj()).has_value());
    CHECK_THROWS_AS(depth(ExactReal(BigFloat::from_double(0.375, 53))), undecidable_error);
    // depth(α(x)) = depth(x) − 1
    for (long p : {3L, 5L, 7L, 11L}) {
        ExactReal x(rat(p, 17));
        auto dx = depth(x);
        auto [n, frac] = floor_frac(invert(x));
        (void)n;
        CHECK(*depth(frac) == *dx - 1);
    }
}

TEST_CASE("value_of") {
    CHECK(value_of({BigInt(2), BigInt(2)}) == rat(2, 5));
    for (long k = 2; k <= 10; ++k) CHECK(value_of({BigInt(k)}) == rat(1, k));
    // [1,1,1,1,1] = F_5/F_6 = 5/8
    CHECK(value_of({BigInt(1), BigInt(1), BigInt(1), BigInt(1), BigInt(1)}) == rat(5, 8));
}

TEST_CASE("expand(value_of(b)) round-trips normalized quotient lists") {
    // all normalized lists (parts ≥ 1, last ≥ 2) with Σb ≤ 22
    long checked = 0;
    std::vector<BigInt> word;
    auto rec = [&](auto&& self, long budget) -> void {
        for (long b = 1; b <= budget; ++b) {
            word.push_back(BigInt(b));
            if (b >= 2) {
                BigRational v = value_of(word);
                CFState st = CFState::expand(ExactReal(v), 1 << 20);
                REQUIRE(st.quotients().size() == word.size());
                for (size_t i = 0; i < word.size(); ++i) REQUIRE(st.quotients()[i] == word[i]);
                ++checked;
            }
            self(self, budget - b);
            word.pop_back();
        }
    };
    rec(rec, 18);
    CHECK(checked > 30000);
}

TEST_CASE("cells") {
    Cell c2 = cell({BigInt(2)});
    CHECK(c2.lo() == rat(1, 3));
    CHECK(c2.hi() == rat(1, 2));

    Cell c0 = cell({});
    CHECK(c0.lo() == BigRational(0));
    CHECK(c0.hi() == BigRational(1));

    Cell c11 = cell({BigInt(1), BigInt(1)});
    CHECK(c11.lo() == rat(1, 2));
    CHECK(c11.hi() == rat(2, 3));
}

TEST_CASE("cell_of") {
    Cell c = cell_of(golden_conj(), 2);
    CHECK(c.lo() == rat(1, 2));
    CHECK(c.hi() == rat(2, 3));
    CHECK(c.contains(golden_conj()));

    Cell c2 = cell_of(ExactReal(rat(2, 5)), 1);
    CHECK(c2.lo() == rat(1, 3));
    CHECK(c2.hi() == rat(1, 2));

    CHECK_THROWS_AS(cell_of(ExactReal(rat(2, 5)), 2), depth_error);
}

TEST_CASE("neighbor_cells") {
    // r = 1/2, K = 1 odd: left cell is (1/3, 1/2), right cell is (1/2, 1)
    NeighborCells nc = neighbor_cells(rat(1, 2));
    CHECK(nc.left.lo() == rat(1, 3));
    CHECK(nc.left.hi() == rat(1, 2));
    CHECK(nc.right.lo() == rat(1, 2));
    CHECK(nc.right.hi() == BigRational(1));

    // r = 2/5, K = 2 even: right (2/5, 3/7), left (1/3, 2/5)
    NeighborCells nc2 = neighbor_cells(rat(2, 5));
    CHECK(nc2.right.lo() == rat(2, 5));
    CHECK(nc2.right.hi() == rat(3, 7));
    CHECK(nc2.left.lo() == rat(1, 3));
    CHECK(nc2.left.hi() == rat(2, 5));

    // r = 1/3, K = 1: far endpoints 1/2 and 1/4
    NeighborCells nc3 = neighbor_cells(rat(1, 3));
    CHECK(nc3.right.hi() == rat(1, 2));
    CHECK(nc3.left.lo() == rat(1, 4));
}

TEST_CASE("beta bounds") {
    CFState golden = CFState::expand(golden_conj(), 8);
    CHECK(beta_bounds_check(golden, 3));
    CHECK(golden.q(4) == 5);  // F_5

    CFState r25 = CFState::expand(ExactReal(rat(2, 5)), 8);
    CHECK(beta_bounds_check(r25, 0));
    CHECK(beta_bounds_check(r25, -1));
    CHECK(beta_bounds_check(golden, -1));
}

TEST_CASE("rho lower bound") {
    CFState golden = CFState::expand(golden_conj(), 24);
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(rho_lower_bound(golden, 1.0) >= phi - 1e-12);
    CHECK(rho_lower_bound(golden, 1.0) <= phi + 1e-6);
    CHECK(rho_lower_bound(golden, 0.0) >= 1.0);

    CFState r = CFState::expand(ExactReal(rat(355, 452)), 5);
    CHECK(rho_lower_bound(r, 2.0) >= phi * phi - 1e-9);
}

TEST_CASE("determinant identity and equations (3),(4') hold exactly") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        long qq = static_cast<long>(rng() % 3000) + 2;
        long pp = static_cast<long>(rng() % (qq - 1)) + 1;
        BigRational xr = rat(pp, qq);  // reduced form
        const BigInt& q = xr.get_den();
        CFState st = CFState::expand(ExactReal(xr), 1 << 20);
        long K = *st.depth();
        for (long j = 0; j <= K; ++j) {
            BigInt det = st.p(j) * st.q(j - 1) - st.p(j - 1) * st.q(j);
            CHECK(det == (j % 2 == 0 ? BigInt(-1) : BigInt(1)));  // (−1)^{j+1}
        }
        const BigRational& x = st.x().rational();
        for (long k = 1; k <= K; ++k) {
            // Eq. (3): α_k = −(p_k − x q_k)/(p_{k−1} − x q_{k−1})
            BigRational num = BigRational(st.p(k)) - x * st.q(k);
            BigRational den = BigRational(st.p(k - 1)) - x * st.q(k - 1);
            CHECK(st.alpha(k).rational() == -num / den);
        }
        for (long k = 0; k + 1 <= K; ++k) {
            // Eq. (4'): β_k = 1/(q_{k+1} + α_{k+1} q_k)
            BigRational rhs = 1 / (BigRational(st.q(k + 1)) + st.alpha(k + 1).rational() * st.q(k));
            CHECK(st.beta_rational(k) == rhs);
        }
        // β_{K−1} = 1/q
        CHECK(st.beta_rational(K - 1) == BigRational(1, q));
    }
}

TEST_CASE("float inputs: exhaustion rule and exact dyadic expansion") {
    // 0.375 = 3/8 expands exactly
    CFState st = CFState::expand(ExactReal(BigFloat::from_double(0.375)), 10);
    REQUIRE(st.steps() == 3);  // 3/8 = [0;2,1,2]
    CHECK(st.a(1) == 2);
    CHECK(st.a(2) == 1);
    CHECK(st.a(3) == 2);

    // a 53-bit float that runs out of reliable bits deep in the expansion
    BigFloat v = BigFloat::from_double(0.6180339887498949, 53);
    CHECK_THROWS_AS(CFState::expand(ExactReal(v), 1000), precision_exhausted);
}

TEST_CASE("quotient-prefix states (divergence witnesses)") {
    // a_{k+1} = 2^{q_k} schedule
    std::vector<BigInt> quot;
    quot.push_back(BigInt(2));
    for (int i = 0; i < 3; ++i) {
        // q of the current prefix
        BigInt p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
        for (const BigInt& b : quot) {
            BigInt pn = b * p_cur + p_prev, qn = b * q_cur + q_prev;
            p_prev = p_cur;
            p_cur = pn;
            q_prev = q_cur;
            q_cur = qn;
        }
        BigInt next;
        mpz_ui_pow_ui(next.get_mpz_t(), 2, q_cur.get_ui());
        quot.push_back(next);
    }
    CFState st = CFState::from_quotient_prefix(quot);
    CHECK(st.completion() == CFState::Completion::quotient_prefix);
    CHECK(!st.depth().has_value());
    CHECK(st.q(1) == 2);
    CHECK(st.q(2) == 9);      // 4·2 + 1
    CHECK(st.q(3) == 4610);   // 512·9 + 2
    CHECK(st.a(4) == (BigInt(1) << 4610));
    // β decreasing, alphas in (0,1)
    for (long k = 0; k < st.steps(); ++k) {
        CHECK(st.alpha(k).compare_rational(BigRational(0)) > 0);
        CHECK(st.alpha(k).compare_rational(BigRational(1)) < 0);
        CHECK(to_float(st.beta(k), 64) < to_float(st.beta(k - 1), 64));
    }
}

TEST_CASE("csv emitter") {
    CFState st = CFState::expand(ExactReal(rat(2, 5)), 10);
    std::ostringstream os;
    emit_expansion_csv(st, os, 64);
    std::string s = os.str();
    CHECK(s.substr(0, 30) == "k,a_k,p_k,q_k,alpha_k,beta_k\r\n");
    CHECK(s.find("1,2,1,2,0.5,") != std::string::npos);
    CHECK(s.find("2,2,2,5,0,0") != std::string::npos);  // α_2 = β_2 = 0 at depth 2
}
