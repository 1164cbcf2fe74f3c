#include "gaussfe/cf.hpp"

#include <cmath>
#include <ostream>

namespace gaussfe {

namespace {

void check_unit_interval(const ExactReal& x) {
    if (x.sign() < 0 || x.compare_rational(BigRational(1)) >= 0)
        throw domain_error("expand: x must lie in [0,1)");
}

// Euclid quotients of v/u for 0 < v < u, normalized (last quotient ≥ 2 falls
// out of the algorithm), together with the remainder chain.
void euclid_quotients(const BigInt& u0, const BigInt& v0, std::vector<BigInt>& quotients,
                      std::vector<BigInt>& remainders) {
    BigInt u = u0, v = v0;
    remainders.push_back(u);  // r_{-1} = denominator
    remainders.push_back(v);  // r_0 = numerator
    while (sgn(v) != 0) {
        BigInt a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
        quotients.push_back(a);
        remainders.push_back(r);
        u = v;
        v = r;
    }
}

}  // namespace

BigRational CFState::beta_rational(long k) const {
    const ExactReal& b = beta(k);
    if (b.is_rational()) return b.rational();
    if (b.is_float()) return b.flt().to_exact_rational();
    throw domain_error("beta_rational: beta is not rational-valued");
}

CFState CFState::expand(const ExactReal& x, long k_max) {
    if (k_max < 0) throw domain_error("expand: k_max must be nonnegative");
    check_unit_interval(x);

    CFState st;
    st.x_ = x;
    st.p_ = {BigInt(1), BigInt(0)};  // p_{-1} = 1, p_0 = 0  (b_0 = 0)
    st.q_ = {BigInt(0), BigInt(1)};  // q_{-1} = 0, q_0 = 1
    st.alphas_.push_back(x);
    st.betas_.push_back(ExactReal(BigRational(1)));  // β_{-1}
    st.betas_.push_back(x);                          // β_0 = α_0

    if (x.sign() == 0) {
        st.depth_ = 0;  // α_0 = β_0 = 0; no quotients
        st.completion_ = Completion::full;
        return st;
    }

    if (x.is_quadratic()) {
        // exact Gauss iteration; Lagrange periodicity keeps coefficients tame
        ExactReal alpha = x;
        for (long k = 1; k <= k_max; ++k) {
            ExactReal inv = invert(alpha);
            auto [ak, next] = floor_frac(inv);
            st.quotients_.push_back(ak);
            st.p_.push_back(ak * st.p_[k] + st.p_[k - 1]);
            st.q_.push_back(ak * st.q_[k] + st.q_[k - 1]);
            st.alphas_.push_back(next);
            // β_k = (−1)^{k−1}(p_k − x q_k), linear in x: exact and cheap
            ExactReal pk_minus_xqk = x * BigRational(-st.q_.back()) + BigRational(st.p_.back());
            st.betas_.push_back(k % 2 == 0 ? pk_minus_xqk * BigRational(-1) : pk_minus_xqk);
            alpha = next;
        }
        st.depth_ = std::nullopt;
        st.completion_ = Completion::kmax_reached;
        return st;
    }

    // rational and float kinds expand by Euclid on the exact fraction
    BigRational r = x.is_rational() ? x.rational() : x.flt().to_exact_rational();
    const bool is_float_kind = x.is_float();
    const long float_prec = is_float_kind ? x.flt().precision() : 0;

    std::vector<BigInt> quot, rem;
    euclid_quotients(r.get_den(), r.get_num(), quot, rem);
    const long K = static_cast<long>(quot.size());
    st.depth_ = K;

    // reliability cutoff for float inputs: once the residual β_{k−1} =
    // |p_{k−1} − x·q_{k−1}| drops below 2^(−P/2), the input's own rounding
    // could flip the next quotient
    BigRational guard(0);
    if (is_float_kind) guard = BigRational(1, BigInt(1) << static_cast<unsigned long>(float_prec / 2));

    long take = std::min(K, k_max);
    const BigInt& den = rem[0];
    for (long k = 1; k <= take; ++k) {
        if (is_float_kind) {
            BigRational beta_prev(rem[k], den);
            beta_prev.canonicalize();
            if (beta_prev < guard)
                throw precision_exhausted("expand: quotient a_" + std::to_string(k) +
                                          " unreliable at precision " + std::to_string(float_prec));
        }
        const BigInt& ak = quot[k - 1];
        st.quotients_.push_back(ak);
        st.p_.push_back(ak * st.p_[k] + st.p_[k - 1]);
        st.q_.push_back(ak * st.q_[k] + st.q_[k - 1]);
        BigRational alpha_k(rem[k + 1], rem[k]);
        alpha_k.canonicalize();
        st.alphas_.push_back(ExactReal(alpha_k));
        BigRational beta_k(rem[k + 1], den);  // β_k = r_k / q, telescoping product
        beta_k.canonicalize();
        st.betas_.push_back(ExactReal(beta_k));
    }
    st.completion_ = take == K ? Completion::full : Completion::kmax_reached;
    return st;
}

CFState CFState::from_quotient_prefix(const std::vector<BigInt>& quotients) {
    if (quotients.empty()) throw domain_error("from_quotient_prefix: need at least one quotient");
    for (const BigInt& b : quotients)
        if (b < 1) throw domain_error("from_quotient_prefix: quotients must be >= 1");

    CFState st;
    const long m = static_cast<long>(quotients.size());
    st.quotients_ = quotients;
    st.p_ = {BigInt(1), BigInt(0)};
    st.q_ = {BigInt(0), BigInt(1)};
    for (long k = 1; k <= m; ++k) {
        st.p_.push_back(quotients[k - 1] * st.p_[k] + st.p_[k - 1]);
        st.q_.push_back(quotients[k - 1] * st.q_[k] + st.q_[k - 1]);
    }
    // tails α_k = [0; a_{k+1}, ..., a_m], built backwards; the state carries
    // the exact truncation value, flagged as a prefix of an infinite word
    std::vector<BigRational> tail(m + 1);
    tail[m] = BigRational(0);
    for (long k = m - 1; k >= 0; --k) {
        BigRational t = BigRational(quotients[k]) + tail[k + 1];
        tail[k] = 1 / t;
        tail[k].canonicalize();
    }
    st.x_ = ExactReal(tail[0]);
    st.alphas_.reserve(m + 1);
    for (long k = 0; k <= m; ++k) st.alphas_.push_back(ExactReal(tail[k]));
    st.betas_.push_back(ExactReal(BigRational(1)));
    BigRational prod(1);
    for (long k = 0; k <= m; ++k) {
        prod *= tail[k];
        prod.canonicalize();
        st.betas_.push_back(ExactReal(prod));
    }
    st.depth_ = std::nullopt;
    st.completion_ = Completion::quotient_prefix;
    return st;
}

std::optional<long> depth(const ExactReal& x) {
    if (x.sign() < 0 || x.compare_rational(BigRational(1)) >= 0)
        throw domain_error("depth: x must lie in [0,1)");
    switch (x.kind()) {
        case ExactReal::Kind::Rational: {
            if (sgn(x.rational()) == 0) return 0;
            std::vector<BigInt> quot, rem;
            euclid_quotients(x.rational().get_den(), x.rational().get_num(), quot, rem);
            return static_cast<long>(quot.size());
        }
        case ExactReal::Kind::Quadratic: return std::nullopt;
        case ExactReal::Kind::Float:
            throw undecidable_error("depth: undecidable for float inputs");
    }
    return std::nullopt;
}

BigRational value_of(const std::vector<BigInt>& quotients) {
    BigInt p_prev = 1, p_cur = 0;  // p_{-1}, p_0
    BigInt q_prev = 0, q_cur = 1;
    for (const BigInt& b : quotients) {
        if (b < 1) throw domain_error("value_of: quotients must be >= 1");
        BigInt p_next = b * p_cur + p_prev;
        BigInt q_next = b * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    BigRational r(p_cur, q_cur);
    r.canonicalize();
    return r;
}

bool Cell::contains(const ExactReal& x) const {
    return x.compare_rational(lo()) > 0 && x.compare_rational(hi()) < 0;
}

Cell cell(const std::vector<BigInt>& quotients) {
    Cell c;
    c.quotients = quotients;
    c.depth = static_cast<long>(quotients.size());
    BigInt p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
    for (const BigInt& b : quotients) {
        if (b < 1) throw domain_error("cell: quotients must be >= 1");
        BigInt p_next = b * p_cur + p_prev;
        BigInt q_next = b * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    c.endpoint_pk = BigRational(p_cur, q_cur);
    c.endpoint_pk.canonicalize();
    c.endpoint_mediant = BigRational(p_cur + p_prev, q_cur + q_prev);
    c.endpoint_mediant.canonicalize();
    if (!(c.lo() < c.hi())) throw domain_error("cell: degenerate interval");
    return c;
}

Cell cell_of(const ExactReal& x, long K) {
    if (K < 0) throw domain_error("cell_of: K must be nonnegative");
    auto d = depth(x);
    if (d && *d <= K)
        throw depth_error("cell_of: depth(x) = " + std::to_string(*d) +
                          " does not exceed K = " + std::to_string(K));
    CFState st = CFState::expand(x, K);
    std::vector<BigInt> quot(st.quotients().begin(), st.quotients().begin() + K);
    Cell c = cell(quot);
    if (!c.contains(x)) throw domain_error("cell_of: membership check failed");
    return c;
}

NeighborCells neighbor_cells(const BigRational& r) {
    if (sgn(r) <= 0 || r >= 1) throw domain_error("neighbor_cells: r must lie in (0,1)");
    CFState st = CFState::expand(ExactReal(r), 1 << 20);
    const long K = *st.depth();

    // 𝔠(a_1..a_K): endpoints r and (p+p_{K−1})/(q+q_{K−1}); right of r
    // exactly when K is even.
    Cell c_plus = cell(st.quotients());
    // 𝔠(a_1..a_K−1): endpoints (p−p_{K−1})/(q−q_{K−1}) and r (a trailing
    // quotient 1 is a legitimate cell word).
    std::vector<BigInt> below = st.quotients();
    below.back() -= 1;
    Cell c_minus = cell(below);

    if (K % 2 == 0) return {std::move(c_minus), std::move(c_plus)};
    return {std::move(c_plus), std::move(c_minus)};
}

bool beta_bounds_check(const CFState& state, long k) {
    if (k < -1 || k + 1 > state.steps())
        throw depth_error("beta_bounds_check: need k+1 computed steps");
    const ExactReal& beta = state.beta(k);
    BigRational lower(1, state.q(k + 1) + state.q(k));
    BigRational upper(1, state.q(k + 1));
    lower.canonicalize();
    upper.canonicalize();
    BigRational fib_bound(1, fibonacci(static_cast<unsigned long>(k + 2)));
    fib_bound.canonicalize();
    return beta.compare_rational(lower) >= 0 && beta.compare_rational(upper) <= 0 &&
           upper <= fib_bound;
}

double rho_lower_bound(const CFState& state, double sigma) {
    if (sigma < 0) throw domain_error("rho_lower_bound: Re(s) must be >= 0");
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    double best = std::pow(phi, sigma);
    long m = state.steps();
    if (m >= 2 && sigma > 0) {
        // 1/limsup β_{k-1}^{σ/k}, sampled at the deepest available index
        double lb = to_float(state.beta(m - 1), 64).to_double();
        if (lb > 0) {
            double est = std::pow(lb, -sigma / static_cast<double>(m));
            if (est > best) best = est;
        }
    }
    return best;
}

void emit_expansion_csv(const CFState& state, std::ostream& os, long prec) {
    os << "k,a_k,p_k,q_k,alpha_k,beta_k\r\n";
    for (long k = 1; k <= state.steps(); ++k) {
        os << k << ',' << state.a(k).get_str() << ',' << state.p(k).get_str() << ','
           << state.q(k).get_str() << ',' << to_float(state.alpha(k), prec).to_string() << ','
           << to_float(state.beta(k), prec).to_string() << "\r\n";
    }
}

}  // namespace gaussfe
