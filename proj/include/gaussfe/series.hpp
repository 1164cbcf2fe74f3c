// series.hpp
//
// The generic series 𝒮_g(x) = Σ_j θ^j β_{j−1}(x)^s g(α_j(x)), its exact
// functional equation 𝒮_g(x) − θx^s 𝒮_g(α(x)) = g(x), iterated remainder
// form, one-sided limits at rationals, and a convergence probe.
//
// Conventions: 𝒮_g(0) = 0; for rational x of depth K the sum stops at j < K.
#pragma once

#include "gaussfe/cf.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gaussfe {

struct GValue {
    BigComplex value;
    double abs_error = 0;
};

// Source function g: (0,1) → C, evaluated on exact arguments, with optional
// declared endpoint values and sup norm (used for rigorous tail bounds).
struct SeriesFunction {
    std::function<GValue(const ExactReal& x, long prec, double tol)> eval;
    std::optional<BigComplex> at_zero;
    std::optional<BigComplex> at_one;
    std::optional<double> sup_norm;
    std::string label;
};

struct SeriesParams {
    BigComplex theta;
    BigComplex s;
    double a = 1.0;  // AFE cutoff exponent; unused by 𝒮_g itself
    SeriesFunction g;

    double sigma() const { return s.re.to_double(); }
    double abs_theta() const { return abs(theta).to_double(); }
    // Eq-"t205" region: σ > 0 and |θ| < ((1+√5)/2)^σ
    bool normal_convergence_claimed() const;
};

enum class EvalStatus { exact_finite, converged, truncated, divergent_suspected };

const char* to_string(EvalStatus s);

struct EvalResult {
    BigComplex value;
    double abs_error_estimate = 0;
    EvalStatus status = EvalStatus::truncated;
    long terms_used = 0;
    std::string note;
};

struct SeriesTracePoint {
    long j = 0;
    BigComplex term;
    BigComplex partial;
    ExactReal beta_prev;  // β_{j−1}
};

// Σ_{i≥0} |θ|^i F_{i+1}^{−σ}: the Fibonacci majorant constant of the normal
// convergence bound. Returns +inf when |θ| ≥ φ^σ.
double fib_majorant_constant(double abs_theta, double sigma);

// Evaluate 𝒮_g at x ∈ [0,1): exact finite sum for rationals; truncated sum
// with tail control otherwise (k_max wins over tol).
EvalResult S_g(const ExactReal& x, const SeriesParams& params, long k_max, double tol,
               std::vector<SeriesTracePoint>* trace = nullptr);

// Same, over a prebuilt expansion (quotient-prefix fixtures included).
EvalResult S_g_over(const CFState& st, const SeriesParams& params, long k_max, double tol,
                    std::vector<SeriesTracePoint>* trace = nullptr);

struct ResidualReport {
    BigComplex residual;
    double combined_error = 0;
};

// 𝒮_g(x) − θ x^s 𝒮_g(α(x)) − g(x); zero up to the combined error.
ResidualReport exact_fe_residual(const ExactReal& x, const SeriesParams& params, long k_max,
                                 double tol);

struct IteratedRemainder {
    BigComplex head;     // Σ_{j<k} θ^j β_{j−1}^s g(α_j)
    BigComplex scale;    // θ^k β_{k−1}^s
    ExactReal tail_arg;  // α_k(x)
    double head_error = 0;
};

// Eq.-(14) decomposition 𝒮_g(x) = head + scale·𝒮_g(α_k(x)). Requires
// k ≤ depth(x).
IteratedRemainder iterated_remainder(const ExactReal& x, const SeriesParams& params, long k,
                                     double tol);

struct JumpData {
    BigComplex left;      // limit from the left cell
    BigComplex right;     // limit from the right cell
    BigComplex jump;      // right − left
    BigComplex value_at;  // 𝒮_g(r) (finite sum)
    long K = 0;
    BigInt q;
    double abs_error_estimate = 0;
};

// One-sided limits at a rational r ∈ (0,1) by the parity rule:
// the two values 𝒮_g(r) + q^{−s}θ^K g(0) and 𝒮_g(r) + q^{−s}θ^K(g(1)+θg(0))
// are (right, left) in this order iff K is even. Requires declared g(0),
// g(1) and the normal-convergence region.
JumpData limits_at_rational(const BigRational& r, const SeriesParams& params, double tol);

// Endpoint limits of 𝒮_g: g(0) as x→0⁺ and g(1)+θg(0) as x→1⁻.
std::pair<BigComplex, BigComplex> endpoint_limits(const SeriesParams& params);

struct ProbeResult {
    EvalStatus status = EvalStatus::truncated;
    std::vector<SeriesTracePoint> trace;
};

// Partial-sum trace with a heuristic verdict (never a proof): Cauchy-window
// test for convergence, non-vanishing-terms test for suspected divergence.
// Rejects rational x (their sums are exact-finite).
ProbeResult convergence_probe(const ExactReal& x, const SeriesParams& params, long k_max,
                              double tol);
ProbeResult convergence_probe_over(const CFState& st, const SeriesParams& params, long k_max,
                                   double tol);

// CSV: j,term_real,term_imag,partial_real,partial_imag,beta_jm1
void emit_series_trace_csv(const std::vector<SeriesTracePoint>& trace, std::ostream& os,
                           long prec = kDefaultPrecision);

}  // namespace gaussfe
