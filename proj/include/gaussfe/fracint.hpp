// fracint.hpp
//
// Piecewise-exact integrals of fractional-part products against dt/t².
// On every interval between consecutive breakpoints (integers n and
// λ-multiples m/λ) the integrand {t}{λt}/t² equals (t−n)(λt−m)/t², which
// integrates in closed form; breakpoints are ordered exactly for rational,
// quadratic, and float λ (a float is the dyadic rational it stores).
//
// Infinite upper limits are handled by an Euler–Maclaurin tail from an
// integer cutoff T:
//   - for rational λ = p/q the periodic mean of {t}{λt} and the mean of its
//     centered antiderivative are computed exactly over one period, leaving
//     a remainder bounded by 2·sup|H₂|/T³ with sup|H₂| an exact per-period
//     bound;
//   - otherwise the cross term ∫ B₁(t)B₁(λt)/t² is bounded via
//     Cauchy–Schwarz by ~1/(12T), and the single-sawtooth parts are expanded
//     to O(T⁻³).
#pragma once

#include "gaussfe/numbers.hpp"

#include <optional>

namespace gaussfe {
namespace fracint {

struct Report {
    BigFloat value;
    double T_used = 0;          // finite cutoff (equals b for finite ranges)
    double tail_estimate = 0;   // bound on |error| (truncation + rounding)
    long pieces = 0;            // closed-form segments evaluated
};

struct Options {
    long prec = kDefaultPrecision;
    long piece_cap = 6'000'000;   // hard budget on closed-form segments
    double t_cap = 1e9;           // hard cap on the cutoff T
    long periodic_q_cap = 200'000;  // largest p+q given the exact periodic tail
    bool best_effort = false;     // if true, report instead of throwing at caps
};

// ∫_a^b {t}{λt}/t² dt with 0 ≤ a ≤ b, b = nullopt meaning ∞. λ ≥ 0.
// λ = 1 yields ∫ {t}²/t². Throws tolerance_error when tol is unreachable
// within the caps (unless best_effort).
Report product_over_t2(const ExactReal& lambda, const ExactReal& a,
                       const std::optional<ExactReal>& b, double tol, const Options& opt = {});

// ∫_a^b {t}/t² dt with 0 ≤ a ≤ b, b = nullopt meaning ∞.
Report frac_over_t2(const ExactReal& a, const std::optional<ExactReal>& b, double tol,
                    const Options& opt = {});

namespace detail {

// Exact per-period statistics of h(t) = {t}{(p/q)t} on [0, q]:
//   mu       = (1/q)∫ h           (equals 1/4 + 1/(12 p q))
//   mu_H     = (1/q)∫ H, H(t) = ∫_0^t (h − mu)
//   sup_H2   = bound for sup |∫_0^t (H − mu_H)| over the period
struct PeriodStats {
    BigRational mu;
    BigRational mu_H;
    BigRational sup_H2;
};
PeriodStats period_stats(const BigRational& lambda);

}  // namespace detail

}  // namespace fracint
}  // namespace gaussfe
