// cf.hpp
//
// Continued-fraction expansion on ExactReal: partial quotients, convergents,
// Gauss iterates α_k, products β_k, depth, and the cell structure on (0,1).
//
// Conventions (all expansions are of numbers in [0,1), b_0 = 0 throughout):
//   - rational expansions are normalized with last quotient ≥ 2;
//   - 0 has depth 0, irrational kinds have infinite depth;
//   - β_{-1} = 1 and β_k = α_0·α_1···α_k = |p_k − x·q_k|.
#pragma once

#include "gaussfe/numbers.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace gaussfe {

class CFState {
public:
    enum class Completion {
        full,                 // every quotient of a rational input is present
        kmax_reached,         // truncated by the step budget
        quotient_prefix,      // explicit prefix of an infinite expansion
    };

    // Number of computed quotients a_1..a_m.
    long steps() const { return static_cast<long>(quotients_.size()); }

    // Finite depth K when known; nullopt means infinite (irrational kinds
    // and quotient-prefix states).
    std::optional<long> depth() const { return depth_; }
    Completion completion() const { return completion_; }

    const ExactReal& x() const { return x_; }
    const std::vector<BigInt>& quotients() const { return quotients_; }

    const BigInt& a(long k) const { return quotients_.at(k - 1); }           // 1 ≤ k ≤ steps
    const ExactReal& alpha(long k) const { return alphas_.at(k); }           // 0 ≤ k ≤ steps
    const ExactReal& beta(long k) const { return betas_.at(k + 1); }         // −1 ≤ k ≤ steps
    const BigInt& p(long j) const { return p_.at(j + 1); }                   // −1 ≤ j ≤ steps
    const BigInt& q(long j) const { return q_.at(j + 1); }                   // −1 ≤ j ≤ steps

    // β_k as an exact rational; valid whenever x is rational-valued.
    BigRational beta_rational(long k) const;

    static CFState expand(const ExactReal& x, long k_max);
    static CFState from_quotient_prefix(const std::vector<BigInt>& quotients);

private:
    ExactReal x_;
    std::vector<BigInt> quotients_;
    std::vector<BigInt> p_, q_;          // offset by one: p_[0] = p_{-1}
    std::vector<ExactReal> alphas_;      // α_0..α_m
    std::vector<ExactReal> betas_;       // β_{-1}..β_m, offset by one
    std::optional<long> depth_;
    Completion completion_ = Completion::full;

    friend CFState expand_impl(const ExactReal&, long, bool);
};

// Depth of x in [0,1): K for rationals, nullopt (infinite) for quadratic
// irrationals. BigFloat inputs raise undecidable_error: a float value alone
// cannot reveal the depth of the real it stands for.
std::optional<long> depth(const ExactReal& x);

// [0; b_1, ..., b_k] in lowest terms (all b_i ≥ 1).
BigRational value_of(const std::vector<BigInt>& quotients);

struct Cell {
    std::vector<BigInt> quotients;  // b_1..b_k (empty for the depth-0 cell)
    BigRational endpoint_pk;        // [0; b_1..b_k] = p_k/q_k
    BigRational endpoint_mediant;   // [0; b_1..b_{k-1}, b_k+1] = (p_k+p_{k-1})/(q_k+q_{k-1})
    long depth = 0;

    // Endpoints in ascending order ((p_k/q_k, mediant) iff depth is even).
    const BigRational& lo() const { return depth % 2 == 0 ? endpoint_pk : endpoint_mediant; }
    const BigRational& hi() const { return depth % 2 == 0 ? endpoint_mediant : endpoint_pk; }

    bool contains(const ExactReal& x) const;
};

// The (open) cell of depth k with the given quotients; the depth-0 cell is
// (0,1).
Cell cell(const std::vector<BigInt>& quotients);

// The unique depth-K cell containing x. Requires depth(x) > K.
Cell cell_of(const ExactReal& x, long K);

// The two contiguous depth-K cells with endpoint r = p/q of depth K, labeled
// by side.
struct NeighborCells {
    Cell left;   // lies left of r
    Cell right;  // lies right of r
};
NeighborCells neighbor_cells(const BigRational& r);

// Eq-(5)-style bracket: 1/(q_{k+1}+q_k) ≤ β_k ≤ 1/q_{k+1} ≤ 1/F_{k+2}.
// Requires k+1 computed steps; k ≥ −1.
bool beta_bounds_check(const CFState& state, long k);

// Lower bound for the radius of convergence of Σ β_{k-1}^s z^k:
// max(((1+√5)/2)^σ, empirical 1/limsup β_{k-1}^{σ/k}). Requires σ ≥ 0.
double rho_lower_bound(const CFState& state, double sigma_re_s);

// CSV (RFC 4180): k,a_k,p_k,q_k,alpha_k,beta_k with α, β printed at
// `prec` bits.
void emit_expansion_csv(const CFState& state, std::ostream& os, long prec = kDefaultPrecision);

}  // namespace gaussfe
