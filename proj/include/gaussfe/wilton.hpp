// wilton.hpp
//
// The concrete series of the Gauss-map family: Wilton 𝒲 (θ=−1), Brjuno Φ
// (θ=+1), the log² variant Φ₂, and the q_k-based convergence criteria that
// characterize their convergence sets.
#pragma once

#include "gaussfe/series.hpp"

namespace gaussfe {

// g(x) = log(1/x), with g(1) = 0 declared and g(0) undeclared (unbounded).
SeriesFunction log_reciprocal_g(long prec = kDefaultPrecision);
// v(x) = ½log²(1/x) + (γ − log 2π)·log(1/x)
SeriesFunction phi2_g(long prec = kDefaultPrecision);

SeriesParams wilton_params(long prec = kDefaultPrecision);  // θ = −1, s = 1, a = 1
SeriesParams brjuno_params(long prec = kDefaultPrecision);  // θ = +1, s = 1, a = 1
SeriesParams phi2_params(long prec = kDefaultPrecision);    // θ = +1, s = 1, g = v

// 𝒲(x) = Σ (−1)^k β_{k−1} log(1/α_k); any real x, reduced mod 1; exact
// finite sum at rationals (𝒲(1/k) = log k).
EvalResult wilton(const ExactReal& x, long k_max = 256, double tol = 1e-30,
                  long prec = kDefaultPrecision);
// Φ(x): same with θ = +1 (Brjuno function).
EvalResult brjuno(const ExactReal& x, long k_max = 256, double tol = 1e-30,
                  long prec = kDefaultPrecision);
// Φ₂(x) = Σ β_{k−1} v(α_k). Rational inputs yield the (well-defined) finite
// sum, flagged in the note: the ψ₂ criterion concerns irrationals only.
EvalResult phi2(const ExactReal& x, long k_max = 256, double tol = 1e-30,
                long prec = kDefaultPrecision);

enum class CriterionKind {
    wilton,  // Σ (−1)^k log(q_{k+1})/q_k
    brjuno,  // Σ log(q_{k+1})/q_k
    log2,    // Σ log²(q_{k+1})/q_k
};

enum class CriterionVerdict { converging, diverging_suspected, exhausted };

const char* to_string(CriterionVerdict v);

struct CriterionTerm {
    long k = 0;
    BigFloat magnitude;  // log^m(q_{k+1})/q_k
    int sign = 1;        // (−1)^k for the Wilton kind, else +1
};

struct CriterionTrace {
    CriterionKind kind = CriterionKind::wilton;
    std::vector<CriterionTerm> terms;
    std::vector<BigFloat> partials;
    CriterionVerdict verdict = CriterionVerdict::exhausted;
};

// Exact-convergent criterion terms with a heuristic verdict; never a proof.
CriterionTrace criterion_over(const CFState& st, CriterionKind kind, long k_max,
                              long prec = kDefaultPrecision);
CriterionTrace wilton_criterion(const ExactReal& x, long k_max, long prec = kDefaultPrecision);
CriterionTrace brjuno_criterion(const ExactReal& x, long k_max, long prec = kDefaultPrecision);

// "value ± error" rendering used by the CLI, e.g. "0.2974067019 ± 3e-25".
std::string format_with_error(const EvalResult& r, int digits = -1);

}  // namespace gaussfe
