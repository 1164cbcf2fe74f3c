// autocorr.hpp
//
// The multiplicative autocorrelation A(λ) = ∫₀^∞ {t}{λt} dt/t², the
// correction function F(x) = ((x+1)/2)A(1) − A(x) − (x/2)log x, and the
// bounded 1-periodic function G = 𝒮_F (θ = −1, s = 1) with its functional
// equation G(x) = F(x) − x·G(α(x)) and jump A(1)/q at every rational p/q.
#pragma once

#include "gaussfe/fracint.hpp"
#include "gaussfe/series.hpp"

#include <unordered_map>

namespace gaussfe {

struct QuadratureReport {
    BigFloat value;
    double T_used = 0;
    double tail_estimate = 0;
    long pieces = 0;
};

struct AutocorrOptions {
    long prec = kDefaultPrecision;
    double tol = 1e-12;      // quadrature tolerance per A-evaluation
    long piece_cap = 6'000'000;
    double t_cap = 1e9;
    bool best_effort = false;
};

// A(λ) for λ ≥ 0; λ > 1 reduces through A(λ) = λ·A(1/λ).
QuadratureReport autocorr_A(const ExactReal& lambda, double tol, const AutocorrOptions& opt = {});

struct FValue {
    BigFloat value;
    double abs_error = 0;
};

// One-shot F evaluation (see AutocorrContext for the memoized form).
FValue F_of(const ExactReal& x, double tol, const AutocorrOptions& opt = {});

// Shared evaluation state: caches A(1) and memoizes F on the exact
// representation of its argument. Confined to one evaluation context; not
// thread-safe (give each worker its own).
class AutocorrContext {
public:
    explicit AutocorrContext(AutocorrOptions opt = {});

    const AutocorrOptions& options() const { return opt_; }
    BigFloat A1();
    double A1_error();

    FValue F(const ExactReal& x);              // at the context tolerance
    FValue F(const ExactReal& x, double tol);  // memo upgraded on demand

    // g-handle for the series engine: g = F with g(0) = A(1)/2, g(1) = 0,
    // sup-norm A(1)/2 (F takes its maximum at 0 on [0,1]; checked by the
    // boundedness suite).
    SeriesParams G_params();

    long f_evals() const { return f_evals_; }
    long f_hits() const { return f_hits_; }

private:
    AutocorrOptions opt_;
    std::optional<BigFloat> a1_;
    double a1_err_ = 0;
    std::unordered_map<std::string, FValue> f_memo_;
    long f_evals_ = 0;
    long f_hits_ = 0;
};

// G(x) = 𝒮_F({x}), extended 1-periodically; exact finite sum at rationals.
EvalResult G_of(const ExactReal& x, AutocorrContext& ctx, long k_max = 256, double tol = 1e-10);
EvalResult G_of(const ExactReal& x, long k_max = 256, double tol = 1e-10,
                const AutocorrOptions& opt = {});

// One-sided limits at rational r: G(r) ± A(1)/(2q) assigned by the parity of
// the depth K; midpoint normalization (left+right)/2 = G(r) is exact in the
// formulas and re-verified numerically by the acceptance suite.
JumpData G_jumps(const BigRational& r, AutocorrContext& ctx, double tol = 1e-12);

// Approach points x_i = [0; a_1..a_K, i] inside the neighbor cell of r on
// the given side (the cell 𝔠(a_1..a_K) lies right of r iff K is even; the
// other side comes from the word a_K → (a_K − 1, 1)).
ExactReal cell_approach_point(const BigRational& r, bool from_right, long i);

// CSV sweep: x,G,err rows over the given points.
void emit_G_sweep_csv(const std::vector<ExactReal>& xs, AutocorrContext& ctx, std::ostream& os,
                      long k_max = 256, double tol = 1e-8);

}  // namespace gaussfe
