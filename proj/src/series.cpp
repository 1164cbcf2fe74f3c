#include "gaussfe/series.hpp"

#include <cmath>
#include <ostream>

namespace gaussfe {

namespace {

constexpr double kPhi = 1.6180339887498948482;

void check_unit_interval_halfopen(const ExactReal& x, const char* who) {
    if (x.sign() < 0 || x.compare_rational(BigRational(1)) >= 0)
        throw domain_error(std::string(who) + ": x must lie in [0,1)");
}

}  // namespace

const char* to_string(EvalStatus s) {
    switch (s) {
        case EvalStatus::exact_finite: return "exact-finite";
        case EvalStatus::converged: return "converged";
        case EvalStatus::truncated: return "truncated";
        case EvalStatus::divergent_suspected: return "divergent-suspected";
    }
    return "?";
}

bool SeriesParams::normal_convergence_claimed() const {
    double sig = sigma();
    return sig > 0 && abs_theta() < std::pow(kPhi, sig);
}

double fib_majorant_constant(double abs_theta, double sigma) {
    if (!(sigma > 0) || abs_theta >= std::pow(kPhi, sigma))
        return std::numeric_limits<double>::infinity();
    double sum = 0, pw = 1;
    double fa = 1, fb = 1;  // F_1, F_2
    for (int i = 0; i < 100000; ++i) {
        double fi1 = (i == 0) ? fa : fb;  // F_{i+1}
        double term = pw * std::pow(fi1, -sigma);
        sum += term;
        if (term < 1e-18 * sum) break;
        pw *= abs_theta;
        if (i > 0) {
            double fn = fa + fb;
            fa = fb;
            fb = fn;
        }
    }
    return sum;
}

namespace {

struct Engine {
    const SeriesParams& params;
    long wprec;
    double tol;
    std::vector<SeriesTracePoint>* trace;

    BigComplex sum;
    double err = 0;
    long terms = 0;
    double max_abs_partial = 0;

    BigComplex theta_pow;  // θ^j

    Engine(const SeriesParams& p, long prec, double tol_, std::vector<SeriesTracePoint>* tr)
        : params(p), wprec(prec + 24), tol(tol_), trace(tr), sum(wprec),
          theta_pow(BigComplex::real(BigFloat::from_long(1, prec + 24))) {}

    // adds term j with β_{j−1} = beta_prev; returns |term|
    double add_term(long j, const ExactReal& beta_prev, const ExactReal& alpha_j) {
        BigFloat beta_f = to_float(beta_prev, wprec);
        BigComplex beta_pow = pow_complex(beta_f, params.s);
        GValue gv = params.g.eval(alpha_j, wprec, tol);
        BigComplex term = theta_pow * beta_pow * gv.value;
        sum += term;
        double scale = abs(theta_pow * beta_pow).to_double();
        err += gv.abs_error * scale;
        terms = j + 1;
        max_abs_partial = std::max(max_abs_partial, abs(sum).to_double());
        if (trace) trace->push_back({j, term, sum, beta_prev});
        theta_pow = theta_pow * params.theta;
        return abs(term).to_double();
    }

    double rounding_slop() const {
        return (static_cast<double>(terms) + 4) * std::ldexp(1.0, -static_cast<int>(wprec - 6)) *
               std::max(1.0, max_abs_partial);
    }
};

// number of series terms available from a state: j < K for fully expanded
// rationals, j < steps otherwise
long available_terms(const CFState& st) {
    if (st.depth() && st.completion() == CFState::Completion::full) return *st.depth();
    return st.steps();
}

}  // namespace

EvalResult S_g_over(const CFState& st, const SeriesParams& params, long k_max, double tol,
                    std::vector<SeriesTracePoint>* trace) {
    const bool rational_finite =
        st.depth().has_value() && st.completion() == CFState::Completion::full;
    const long avail = std::min(available_terms(st), k_max);
    const long prec = std::max(kDefaultPrecision, params.theta.precision());

    EvalResult res;
    if (st.x().sign() == 0) {
        res.value = BigComplex(prec);
        res.status = EvalStatus::exact_finite;
        return res;  // 𝒮_g(0) = 0 by convention
    }

    Engine eng(params, prec, tol, trace);
    const double sigma = params.sigma();
    const double abs_theta = params.abs_theta();
    const double fib_const =
        params.g.sup_norm ? fib_majorant_constant(abs_theta, sigma) : 0.0;

    double tail_bound = std::numeric_limits<double>::infinity();
    double last_terms[3] = {std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity()};
    bool tail_met = false;
    long j = 0;
    for (; j < avail; ++j) {
        double tsz = eng.add_term(j, st.beta(j - 1), st.alpha(j));
        last_terms[j % 3] = tsz;
        if (!rational_finite) {
            if (params.g.sup_norm && std::isfinite(fib_const)) {
                // rigorous: Σ_{i≥j+1} |θ|^i β_{i−1}^σ sup|g| ≤
                //           |θ|^{j+1} β_j^σ · sup|g| · C(θ,σ)
                double beta_next = to_float(st.beta(j), 64).to_double();
                tail_bound = std::pow(abs_theta, j + 1) * std::pow(beta_next, sigma) *
                             *params.g.sup_norm * fib_const;
            } else {
                // last-term heuristic
                tail_bound = 10.0 * std::max({last_terms[0], last_terms[1], last_terms[2]});
            }
            if (tail_bound < tol && j >= 2) {
                tail_met = true;
                ++j;
                break;
            }
        }
    }
    res.value = eng.sum.re.precision() > prec
                    ? BigComplex{eng.sum.re.round_to(prec), eng.sum.im.round_to(prec)}
                    : eng.sum;
    res.terms_used = eng.terms;
    res.abs_error_estimate = eng.err + eng.rounding_slop();
    if (rational_finite && avail == available_terms(st)) {
        res.status = EvalStatus::exact_finite;
    } else if (tail_met) {
        res.status = EvalStatus::converged;
        res.abs_error_estimate += tail_bound;
    } else {
        res.status = EvalStatus::truncated;
        if (std::isfinite(tail_bound)) res.abs_error_estimate += tail_bound;
    }
    return res;
}

EvalResult S_g(const ExactReal& x, const SeriesParams& params, long k_max, double tol,
               std::vector<SeriesTracePoint>* trace) {
    check_unit_interval_halfopen(x, "S_g");
    if (x.sign() == 0) {
        EvalResult res;
        res.value = BigComplex(kDefaultPrecision);
        res.status = EvalStatus::exact_finite;
        return res;
    }
    CFState st = CFState::expand(x, k_max);
    return S_g_over(st, params, k_max, tol, trace);
}

ResidualReport exact_fe_residual(const ExactReal& x, const SeriesParams& params, long k_max,
                                 double tol) {
    if (x.sign() <= 0 || x.compare_rational(BigRational(1)) >= 0)
        throw domain_error("exact_fe_residual: x must lie in (0,1)");
    EvalResult lhs = S_g(x, params, k_max, tol);
    ExactReal ax = floor_frac(invert(x)).second;
    EvalResult rhs = S_g(ax, params, k_max, tol);
    long prec = lhs.value.precision();
    BigFloat xf = to_float(x, prec + 24);
    BigComplex x_pow = pow_complex(xf, params.s);
    GValue gx = params.g.eval(x, prec + 24, tol);
    BigComplex residual = lhs.value - params.theta * x_pow * rhs.value - gx.value;
    double combined = lhs.abs_error_estimate +
                      abs(params.theta * x_pow).to_double() * rhs.abs_error_estimate +
                      gx.abs_error + std::ldexp(std::max(1.0, abs(lhs.value).to_double()), -static_cast<int>(prec - 6));
    return {residual, combined};
}

IteratedRemainder iterated_remainder(const ExactReal& x, const SeriesParams& params, long k,
                                     double tol) {
    check_unit_interval_halfopen(x, "iterated_remainder");
    if (k < 0) throw domain_error("iterated_remainder: k must be >= 0");
    auto d = depth(x);
    if (d && k > *d)
        throw depth_error("iterated_remainder: k exceeds depth(x) = " + std::to_string(*d));

    const long prec = kDefaultPrecision;
    IteratedRemainder out;
    if (k == 0) {
        out.head = BigComplex(prec);
        out.scale = BigComplex::real(BigFloat::from_long(1, prec));
        out.tail_arg = x;
        return out;
    }
    CFState st = CFState::expand(x, k);
    Engine eng(params, prec, tol, nullptr);
    for (long j = 0; j < k; ++j) eng.add_term(j, st.beta(j - 1), st.alpha(j));
    out.head = eng.sum;
    out.head_error = eng.err + eng.rounding_slop();
    BigFloat beta_f = to_float(st.beta(k - 1), prec + 24);
    out.scale = powi(params.theta, static_cast<unsigned long>(k)) * pow_complex(beta_f, params.s);
    out.tail_arg = st.alpha(k);
    return out;
}

std::pair<BigComplex, BigComplex> endpoint_limits(const SeriesParams& params) {
    if (!params.g.at_zero || !params.g.at_one)
        throw domain_error("endpoint_limits: g(0) and g(1) must be declared");
    BigComplex at0 = *params.g.at_zero;
    BigComplex at1 = *params.g.at_one + params.theta * *params.g.at_zero;
    return {at0, at1};
}

JumpData limits_at_rational(const BigRational& r, const SeriesParams& params, double tol) {
    if (sgn(r) <= 0 || r >= 1) throw domain_error("limits_at_rational: r must lie in (0,1)");
    if (!params.g.at_zero || !params.g.at_one)
        throw domain_error("limits_at_rational: g(0) and g(1) must be declared");
    if (!params.normal_convergence_claimed())
        throw domain_error("limits_at_rational: requires sigma > 0 and |theta| < phi^sigma");

    EvalResult at_r = S_g(ExactReal(r), params, 1 << 20, tol);
    JumpData jd;
    jd.value_at = at_r.value;
    jd.K = *depth(ExactReal(r));
    jd.q = r.get_den();
    long prec = at_r.value.precision();
    BigComplex q_pow = pow_complex(BigFloat::from_int(jd.q, prec + 24), -params.s);
    BigComplex theta_K = powi(params.theta, static_cast<unsigned long>(jd.K));
    BigComplex side_a = at_r.value + q_pow * theta_K * *params.g.at_zero;
    BigComplex side_b =
        at_r.value + q_pow * theta_K * (*params.g.at_one + params.theta * *params.g.at_zero);
    if (jd.K % 2 == 0) {
        jd.right = side_a;
        jd.left = side_b;
    } else {
        jd.right = side_b;
        jd.left = side_a;
    }
    jd.jump = jd.right - jd.left;
    jd.abs_error_estimate = 2 * at_r.abs_error_estimate;
    return jd;
}

ProbeResult convergence_probe_over(const CFState& st, const SeriesParams& params, long k_max,
                                   double tol) {
    ProbeResult pr;
    EvalResult res = S_g_over(st, params, k_max, tol, &pr.trace);
    if (res.status == EvalStatus::exact_finite)
        throw domain_error("convergence_probe: x is rational; the sum is exact-finite");
    if (res.status == EvalStatus::converged) {
        pr.status = EvalStatus::converged;
        return pr;
    }
    // heuristic divergence scan over the last window: terms not vanishing or
    // partial sums blowing up
    const size_t n = pr.trace.size();
    if (n >= 4) {
        const size_t W = std::max<size_t>(2, std::min<size_t>(6, n / 2));
        double recent = std::numeric_limits<double>::infinity();
        double older = 0;
        for (size_t i = n - W; i < n; ++i)
            recent = std::min(recent, abs(pr.trace[i].term).to_double());
        for (size_t i = n - 2 * W; i < n - W; ++i)
            older = std::max(older, abs(pr.trace[i].term).to_double());
        double partial_scale = std::max(1.0, abs(pr.trace.back().partial).to_double());
        bool not_vanishing =
            recent > std::max(100 * tol, 1e-9 * partial_scale) && recent > 0.25 * older;
        bool blow_up = abs(pr.trace.back().partial).to_double() > 1e9;
        if (not_vanishing || blow_up) {
            pr.status = EvalStatus::divergent_suspected;
            return pr;
        }
    }
    pr.status = EvalStatus::truncated;
    return pr;
}

ProbeResult convergence_probe(const ExactReal& x, const SeriesParams& params, long k_max,
                              double tol) {
    check_unit_interval_halfopen(x, "convergence_probe");
    if (x.is_rational())
        throw domain_error("convergence_probe: x is rational; the sum is exact-finite");
    CFState st = CFState::expand(x, k_max);
    return convergence_probe_over(st, params, k_max, tol);
}

void emit_series_trace_csv(const std::vector<SeriesTracePoint>& trace, std::ostream& os,
                           long prec) {
    os << "j,term_real,term_imag,partial_real,partial_imag,beta_jm1\r\n";
    for (const auto& t : trace) {
        os << t.j << ',' << t.term.re.round_to(prec).to_string() << ','
           << t.term.im.round_to(prec).to_string() << ',' << t.partial.re.round_to(prec).to_string()
           << ',' << t.partial.im.round_to(prec).to_string() << ','
           << to_float(t.beta_prev, prec).to_string() << "\r\n";
    }
}

}  // namespace gaussfe
