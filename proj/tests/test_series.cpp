#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussfe/wilton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace gaussfe;

namespace {

ExactReal rat(long n, long d) {
    BigRational r(n, d);
    r.canonicalize();
    return ExactReal(r);
}

ExactReal golden() { return parse_exact_real("(-1+1*sqrt(5))/2"); }

BigFloat log_of(long prec, const ExactReal& x) { return log(to_float(x, prec)); }

// g(x) = x: a bounded continuous probe function with declared endpoints.
SeriesFunction identity_g(long prec) {
    SeriesFunction g;
    g.label = "x";
    g.at_zero = BigComplex(prec);
    g.at_one = BigComplex::real(BigFloat::from_long(1, prec));
    g.sup_norm = 1.0;
    g.eval = [](const ExactReal& x, long p, double) -> GValue {
        return {BigComplex::real(to_float(x, p)), std::ldexp(1.0, -static_cast<int>(p - 2))};
    };
    return g;
}

SeriesParams identity_params(long prec, long theta_sign) {
    SeriesParams p;
    p.theta = BigComplex::real(BigFloat::from_long(theta_sign, prec));
    p.s = BigComplex::real(BigFloat::from_long(1, prec));
    p.g = identity_g(prec);
    return p;
}

}  // namespace

TEST_CASE("fibonacci majorant constant") {
    // Σ 1/F_{i+1} = 1/1 + 1/1 + 1/2 + 1/3 + 1/5 + ... (reciprocal Fibonacci
    // constant plus the doubled leading 1) ≈ 3.3598856662
    CHECK(fib_majorant_constant(1.0, 1.0) == doctest::Approx(3.3598856662432).epsilon(1e-9));
    CHECK(std::isinf(fib_majorant_constant(1.7, 1.0)));
    CHECK(fib_majorant_constant(1.0, 2.0) < fib_majorant_constant(1.0, 1.0));
}

TEST_CASE("wilton at rationals: W(1/k) = log k") {
    for (long k = 2; k <= 30; ++k) {
        EvalResult r = wilton(rat(1, k));
        CHECK(r.status == EvalStatus::exact_finite);
        CHECK(r.terms_used == 1);
        BigFloat expect = log(BigFloat::from_long(k, 128));
        CHECK(abs(r.value.re - expect).to_double() < 1e-30);
    }
}

TEST_CASE("wilton conventions: zero and periodicity") {
    CHECK(wilton(ExactReal(BigRational(0))).value.is_zero());
    EvalResult a = wilton(rat(2, 5));
    EvalResult b = wilton(rat(7, 5));   // 2/5 + 1
    EvalResult c = wilton(rat(-3, 5));  // 2/5 − 1
    CHECK(abs(a.value.re - b.value.re).to_double() < 1e-35);
    CHECK(abs(a.value.re - c.value.re).to_double() < 1e-35);
}

TEST_CASE("wilton two-term rational: W(2/5) = log(5/2) - (2/5) log 2") {
    EvalResult r = wilton(rat(2, 5));
    BigFloat expect = log_of(128, rat(5, 2)) - log_of(128, rat(2, 1)) * 2 / 5;
    CHECK(abs(r.value.re - expect).to_double() < 1e-35);
    CHECK(r.terms_used == 2);
}

TEST_CASE("wilton at the golden point: fixed point of the functional equation") {
    // W(x) = log(1/x)/(1+x); frozen from the closed-form oracle below,
    // cross-checked against direct term-by-term summation at 200 bits:
    // 0.29740526367520332486...
    EvalResult r = wilton(golden(), 300, 1e-33);
    BigFloat x = to_float(golden(), 160);
    BigFloat expect = -log(x) / (x + 1);
    CHECK(abs(r.value.re - expect).to_double() < 1e-30);
    CHECK(r.value.re.to_string(11).substr(0, 12) == "0.2974052636");
    CHECK(r.status == EvalStatus::converged);
}

TEST_CASE("brjuno values") {
    EvalResult r7 = brjuno(rat(1, 7));
    CHECK(abs(r7.value.re - log(BigFloat::from_long(7, 128))).to_double() < 1e-30);

    // Φ(2/5) = log(5/2) + (2/5) log 2
    EvalResult r25 = brjuno(rat(2, 5));
    BigFloat expect25 = log_of(128, rat(5, 2)) + log_of(128, rat(2, 1)) * 2 / 5;
    CHECK(abs(r25.value.re - expect25).to_double() < 1e-35);

    // Φ(golden) = log(1/x)/(1−x), verified against direct summation
    EvalResult rg = brjuno(golden(), 300, 1e-33);
    BigFloat x = to_float(golden(), 160);
    BigFloat expect = -log(x) / (BigFloat::from_long(1, 160) - x);
    CHECK(abs(rg.value.re - expect).to_double() < 1e-28);
}

TEST_CASE("phi2 values") {
    // single-term rational: Φ₂(1/2) = v(1/2) = ½log²2 + (γ − log 2π) log 2
    EvalResult r = phi2(rat(1, 2));
    BigFloat l2 = log_of(128, rat(2, 1));
    BigFloat expect = l2 * l2 / 2 + (const_euler_gamma(128) - const_log_2pi(128)) * l2;
    CHECK(abs(r.value.re - expect).to_double() < 1e-33);
    CHECK(!r.note.empty());  // rational inputs are flagged

    CHECK(phi2(ExactReal(BigRational(0))).value.is_zero());

    // Φ₂(golden) = v(x)/(1−x)
    EvalResult rg = phi2(golden(), 300, 1e-30);
    BigFloat x = to_float(golden(), 160);
    BigFloat L = -log(x);
    BigFloat v = L * L / 2 + (const_euler_gamma(160) - const_log_2pi(160)) * L;
    BigFloat expect_g = v / (BigFloat::from_long(1, 160) - x);
    CHECK(abs(rg.value.re - expect_g).to_double() < 1e-26);
}

TEST_CASE("finite-sum consistency against a from-scratch Euclid orbit oracle") {
    SeriesParams wp = wilton_params(128);
    for (long q = 2; q <= 60; ++q) {
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            EvalResult r = S_g(rat(p, q), wp, 1 << 20, 1e-30);
            // oracle: recompute α_j, β_j from scratch by plain rational Euclid
            BigFloat acc(160);
            BigRational alpha(p, q), beta(1);
            int sign = 1;
            while (sgn(alpha) != 0) {
                BigFloat term = (-log(BigFloat::from_rational(alpha, 160))) *
                                BigFloat::from_rational(beta, 160);
                acc += sign > 0 ? term : -term;
                beta *= alpha;
                beta.canonicalize();
                BigRational inv = 1 / alpha;
                BigInt fl;
                mpz_fdiv_q(fl.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
                alpha = inv - BigRational(fl);
                alpha.canonicalize();
                sign = -sign;
            }
            CHECK(abs(r.value.re - acc).to_double() < 1e-30);
        }
    }
}

TEST_CASE("exact functional equation residuals") {
    SeriesParams wp = wilton_params(128);
    // rational: both sides are finite sums
    ResidualReport rr = exact_fe_residual(rat(2, 5), wp, 1 << 20, 1e-30);
    CHECK(abs(rr.residual).to_double() < 1e-35);

    // x = 1/2: S_g(1/2) = g(1/2), α = 0
    ResidualReport rh = exact_fe_residual(rat(1, 2), wp, 1 << 20, 1e-30);
    CHECK(abs(rh.residual).to_double() < 1e-35);

    // golden point at P = 128, tol 1e-30: residual below 1e-25
    ResidualReport rg = exact_fe_residual(golden(), wp, 300, 1e-30);
    CHECK(abs(rg.residual).to_double() < 1e-25);
    CHECK(abs(rg.residual).to_double() < 10 * rg.combined_error);
}

TEST_CASE("iterated remainder") {
    SeriesParams wp = wilton_params(128);
    // k = 0: empty head
    IteratedRemainder r0 = iterated_remainder(golden(), wp, 0, 1e-30);
    CHECK(r0.head.is_zero());
    CHECK(abs(r0.scale.re - BigFloat::from_long(1, 64)).to_double() == 0);
    CHECK(r0.tail_arg == golden());

    // k = depth for rational x: head is the whole sum, tail_arg = 0
    IteratedRemainder rk = iterated_remainder(rat(2, 5), wp, 2, 1e-30);
    EvalResult full = wilton(rat(2, 5));
    CHECK(abs(rk.head.re - full.value.re).to_double() < 1e-35);
    CHECK(rk.tail_arg.sign() == 0);
    CHECK_THROWS_AS(iterated_remainder(rat(2, 5), wp, 3, 1e-30), depth_error);

    // golden, k = 2: head = log(1/x)(1−x), scale = x², tail_arg = x
    IteratedRemainder r2 = iterated_remainder(golden(), wp, 2, 1e-30);
    BigFloat x = to_float(golden(), 160);
    CHECK(abs(r2.head.re - (-log(x)) * (BigFloat::from_long(1, 160) - x)).to_double() < 1e-35);
    CHECK(abs(r2.scale.re - x * x).to_double() < 1e-35);
    CHECK(r2.tail_arg == golden());

    // reassembly: S_g(x) = head + scale·S_g(α_k(x)) for several k
    for (long k : {1L, 3L, 7L, 12L}) {
        IteratedRemainder ir = iterated_remainder(golden(), wp, k, 1e-30);
        EvalResult tail = S_g(ir.tail_arg, wp, 300, 1e-33);
        EvalResult whole = S_g(golden(), wp, 300, 1e-33);
        BigComplex recon = ir.head + ir.scale * tail.value;
        double budget = ir.head_error + tail.abs_error_estimate + whole.abs_error_estimate + 1e-32;
        CHECK(abs(recon - whole.value).to_double() < 10 * budget);
    }
}

TEST_CASE("limits at rationals: parity and endpoint formulas") {
    // Wilton params: g(0) undeclared → error
    CHECK_THROWS_AS(limits_at_rational(BigRational(1, 2), wilton_params(128), 1e-20),
                    domain_error);

    // bounded g(x) = x, θ = −1: compare declared limits with in-cell approach
    SeriesParams ip = identity_params(128, -1);
    JumpData jd = limits_at_rational(BigRational(1, 2), ip, 1e-25);
    CHECK(jd.K == 1);
    // K odd: right limit = S_g(r) + q^{−s}θ(g(1)+θg(0)) = S_g(r) − 1/2
    CHECK(abs(jd.right - (jd.value_at - BigComplex::real(BigFloat::from_rational(BigRational(1, 2), 128)))).to_double() < 1e-30);
    CHECK(abs(jd.left - jd.value_at).to_double() < 1e-30);

    // numeric approach within each neighbor cell
    for (long i : {64L, 256L, 1024L}) {
        EvalResult from_right = S_g(value_of({BigInt(1), BigInt(1), BigInt(i)}), ip, 64, 1e-30);
        EvalResult from_left = S_g(value_of({BigInt(2), BigInt(i)}), ip, 64, 1e-30);
        CHECK(abs(from_right.value - jd.right).to_double() < 4.0 / static_cast<double>(i));
        CHECK(abs(from_left.value - jd.left).to_double() < 4.0 / static_cast<double>(i));
    }

    // θ = 0 degenerates to g(r) on both sides (single-term series)
    SeriesParams zp = identity_params(128, 0);
    JumpData j0 = limits_at_rational(BigRational(2, 5), zp, 1e-25);
    CHECK(abs(j0.left - j0.right).to_double() < 1e-30);
    CHECK(abs(j0.left.re - BigFloat::from_rational(BigRational(2, 5), 128)).to_double() < 1e-30);

    // endpoint limits
    auto [at0, at1] = endpoint_limits(ip);
    CHECK(at0.is_zero());                       // g(0)
    CHECK(abs(at1.re.to_double() - 1.0) == 0);  // g(1) + θg(0) = 1
}

TEST_CASE("convergence probe") {
    SeriesParams wp = wilton_params(128);
    ProbeResult golden_probe = convergence_probe(golden(), wp, 200, 1e-20);
    CHECK(golden_probe.status == EvalStatus::converged);

    CHECK_THROWS_AS(convergence_probe(rat(2, 5), wp, 100, 1e-20), domain_error);

    // 2^{q_k} witness: terms stay near log 2 — suspected divergence (Brjuno θ=+1)
    std::vector<BigInt> quot{BigInt(2)};
    for (int i = 0; i < 3; ++i) {
        BigRational v = value_of(quot);
        BigInt next;
        mpz_ui_pow_ui(next.get_mpz_t(), 2, v.get_den().get_ui());
        quot.push_back(next);
    }
    CFState wit = CFState::from_quotient_prefix(quot);
    ProbeResult div_probe = convergence_probe_over(wit, brjuno_params(128), 100, 1e-20);
    CHECK(div_probe.status == EvalStatus::divergent_suspected);
}

TEST_CASE("criterion traces") {
    CriterionTrace g = wilton_criterion(golden(), 40);
    CHECK(g.verdict == CriterionVerdict::converging);
    // golden: log q_{k+1}/q_k = log F_{k+2}/F_{k+1}
    CHECK(g.terms[3].magnitude.to_double() ==
          doctest::Approx(std::log(5.0) / 3.0).epsilon(1e-12));
    CHECK(g.terms[1].sign == -1);

    CriterionTrace s = brjuno_criterion(parse_exact_real("sqrt(2)-1"), 40);
    CHECK(s.verdict == CriterionVerdict::converging);
    for (auto& t : s.terms) CHECK(t.sign == 1);

    // a_k = k prefix: converging
    std::vector<BigInt> ek;
    for (long k = 1; k <= 25; ++k) ek.push_back(BigInt(k));
    CriterionTrace e = criterion_over(CFState::from_quotient_prefix(ek), CriterionKind::brjuno, 25);
    CHECK(e.verdict == CriterionVerdict::converging);

    // 2^{q_k} witness: diverging-suspected, terms ≈ log 2 scale
    std::vector<BigInt> quot{BigInt(2)};
    for (int i = 0; i < 3; ++i) {
        BigRational v = value_of(quot);
        BigInt next;
        mpz_ui_pow_ui(next.get_mpz_t(), 2, v.get_den().get_ui());
        quot.push_back(next);
    }
    CriterionTrace w =
        criterion_over(CFState::from_quotient_prefix(quot), CriterionKind::wilton, 10);
    CHECK(w.verdict == CriterionVerdict::diverging_suspected);
    for (auto& t : w.terms) CHECK(t.magnitude.to_double() > 0.4);

    // k_max = 0: empty, exhausted
    CriterionTrace z = wilton_criterion(golden(), 0);
    CHECK(z.terms.empty());
    CHECK(z.verdict == CriterionVerdict::exhausted);

    // inequality (6) bridge, termwise: |β_{k−1}log(1/α_k) − log(q_{k+1})/q_k|
    // within [−log(2q_k)/q_k, log2/q_k]
    CFState st = CFState::expand(golden(), 20);
    SeriesParams bp = brjuno_params(128);
    for (long k = 0; k < 18; ++k) {
        BigFloat series_term = to_float(st.beta(k - 1), 160) * (-log(to_float(st.alpha(k), 160)));
        BigFloat crit_term = log(BigFloat::from_int(st.q(k + 1), 160)) /
                             BigFloat::from_int(st.q(k), 160);
        BigFloat diff = series_term - crit_term;
        BigFloat qk = BigFloat::from_int(st.q(k), 160);
        CHECK(diff <= log(BigFloat::from_long(2, 160)) / qk + BigFloat::pow2(-100));
        CHECK(diff >= -log(qk * 2) / qk - BigFloat::pow2(-100));
    }
    (void)bp;
}

TEST_CASE("trace csv") {
    std::vector<SeriesTracePoint> trace;
    S_g(rat(2, 5), wilton_params(64), 10, 1e-20, &trace);
    REQUIRE(trace.size() == 2);
    std::ostringstream os;
    emit_series_trace_csv(trace, os, 64);
    std::string s = os.str();
    CHECK(s.rfind("j,term_real,term_imag,partial_real,partial_imag,beta_jm1\r\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

TEST_CASE("format with error radius") {
    EvalResult r = wilton(golden(), 300, 1e-30);
    std::string s = format_with_error(r);
    CHECK(s.find("0.29740526") == 0);
    CHECK(s.find("±") != std::string::npos);
}

TEST_CASE("normal-convergence majorant dominates partial tails") {
    // bounded g (sup = 1), θ = −1, σ = 1: |S − S_j| ≤ |θ|^{j+1}β_j^σ·C(θ,σ)
    SeriesParams ip = identity_params(128, -1);
    const double C = fib_majorant_constant(1.0, 1.0);
    ExactReal x = parse_exact_real("sqrt(2)-1");
    EvalResult full = S_g(x, ip, 200, 1e-32);
    CFState st = CFState::expand(x, 40);
    for (long j : {4L, 9L, 14L}) {
        EvalResult partial = S_g(x, ip, j + 1, 1e-40);
        double bound = std::pow(to_float(st.beta(j), 64).to_double(), 1.0) * C;
        CHECK(abs(full.value - partial.value).to_double() <= bound + 1e-25);
    }
}
