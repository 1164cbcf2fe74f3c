#include "gaussfe/wilton.hpp"

#include <cmath>
#include <sstream>

namespace gaussfe {

namespace {

double ulp_error(const BigFloat& v, long prec) {
    return (std::fabs(v.to_double()) + 1) * std::ldexp(1.0, -static_cast<int>(prec - 2));
}

}  // namespace

SeriesFunction log_reciprocal_g(long prec) {
    SeriesFunction g;
    g.label = "log(1/x)";
    g.at_one = BigComplex(prec);  // log(1/1) = 0
    g.eval = [](const ExactReal& x, long p, double) -> GValue {
        // log(1/α) as −log(α): α exact, one rounding
        BigFloat v = -log(to_float(x, p));
        return {BigComplex::real(v), ulp_error(v, p)};
    };
    return g;
}

SeriesFunction phi2_g(long prec) {
    SeriesFunction g;
    g.label = "log^2/2 + (gamma-log2pi)*log";
    g.at_one = BigComplex(prec);  // v(1) = 0
    g.eval = [](const ExactReal& x, long p, double) -> GValue {
        BigFloat L = -log(to_float(x, p));
        BigFloat c = const_euler_gamma(p) - const_log_2pi(p);
        BigFloat v = L * L / 2 + c * L;
        return {BigComplex::real(v), 4 * ulp_error(v, p) + ulp_error(L, p)};
    };
    return g;
}

namespace {

SeriesParams make_params(long prec, long theta_sign, SeriesFunction g) {
    SeriesParams p;
    p.theta = BigComplex::real(BigFloat::from_long(theta_sign, prec));
    p.s = BigComplex::real(BigFloat::from_long(1, prec));
    p.a = 1.0;
    p.g = std::move(g);
    return p;
}

EvalResult eval_reduced(const ExactReal& x, const SeriesParams& params, long k_max, double tol) {
    ExactReal frac = floor_frac(x).second;  // periodic extension
    return S_g(frac, params, k_max, tol);
}

}  // namespace

SeriesParams wilton_params(long prec) { return make_params(prec, -1, log_reciprocal_g(prec)); }
SeriesParams brjuno_params(long prec) { return make_params(prec, +1, log_reciprocal_g(prec)); }
SeriesParams phi2_params(long prec) { return make_params(prec, +1, phi2_g(prec)); }

EvalResult wilton(const ExactReal& x, long k_max, double tol, long prec) {
    return eval_reduced(x, wilton_params(prec), k_max, tol);
}

EvalResult brjuno(const ExactReal& x, long k_max, double tol, long prec) {
    return eval_reduced(x, brjuno_params(prec), k_max, tol);
}

EvalResult phi2(const ExactReal& x, long k_max, double tol, long prec) {
    ExactReal frac = floor_frac(x).second;
    EvalResult r = S_g(frac, phi2_params(prec), k_max, tol);
    if (r.status == EvalStatus::exact_finite && frac.sign() != 0)
        r.note = "rational input: finite sum computed, but the psi2 criterion concerns irrationals";
    return r;
}

const char* to_string(CriterionVerdict v) {
    switch (v) {
        case CriterionVerdict::converging: return "converging";
        case CriterionVerdict::diverging_suspected: return "diverging-suspected";
        case CriterionVerdict::exhausted: return "exhausted";
    }
    return "?";
}

CriterionTrace criterion_over(const CFState& st, CriterionKind kind, long k_max, long prec) {
    CriterionTrace tr;
    tr.kind = kind;
    const long wprec = prec + 16;
    BigFloat partial(wprec);
    // term k needs q_{k+1}: k ranges over 0 .. steps−1
    long avail = std::min(k_max, st.steps());
    for (long k = 0; k < avail; ++k) {
        BigFloat lq = log(BigFloat::from_int(st.q(k + 1), wprec));
        if (kind == CriterionKind::log2) lq = lq * lq;
        BigFloat mag = lq / BigFloat::from_int(st.q(k), wprec);
        int sign = (kind == CriterionKind::wilton && k % 2 == 1) ? -1 : 1;
        partial += sign < 0 ? -mag : mag;
        tr.terms.push_back({k, mag.round_to(prec), sign});
        tr.partials.push_back(partial.round_to(prec));
    }

    // verdict heuristics on term magnitudes
    const size_t n = tr.terms.size();
    if (n < 3) {
        tr.verdict = CriterionVerdict::exhausted;
        return tr;
    }
    auto mag = [&](size_t i) { return tr.terms[i].magnitude.to_double(); };
    double max_mag = 0;
    for (size_t i = 0; i < n; ++i) max_mag = std::max(max_mag, mag(i));
    size_t w = std::max<size_t>(2, std::min<size_t>(6, n / 2));
    double recent_min = std::numeric_limits<double>::infinity();
    double recent_max = 0;
    for (size_t i = n - w; i < n; ++i) {
        recent_min = std::min(recent_min, mag(i));
        recent_max = std::max(recent_max, mag(i));
    }
    if (recent_min > 0.05) {
        tr.verdict = CriterionVerdict::diverging_suspected;
    } else if (recent_max < 1e-3 && recent_max < 0.1 * max_mag) {
        tr.verdict = CriterionVerdict::converging;
    } else {
        tr.verdict = CriterionVerdict::exhausted;
    }
    return tr;
}

namespace {

CriterionTrace criterion_of(const ExactReal& x, CriterionKind kind, long k_max, long prec) {
    if (x.is_rational())
        throw domain_error("criterion: x must be of irrational kind");
    CFState st = CFState::expand(x, k_max);
    return criterion_over(st, kind, k_max, prec);
}

}  // namespace

CriterionTrace wilton_criterion(const ExactReal& x, long k_max, long prec) {
    return criterion_of(x, CriterionKind::wilton, k_max, prec);
}

CriterionTrace brjuno_criterion(const ExactReal& x, long k_max, long prec) {
    return criterion_of(x, CriterionKind::brjuno, k_max, prec);
}

std::string format_with_error(const EvalResult& r, int digits) {
    std::ostringstream os;
    if (digits <= 0) {
        double e = r.abs_error_estimate;
        if (e <= 0) e = std::ldexp(1.0, -static_cast<int>(r.value.precision()));
        double scale = std::max(std::fabs(r.value.re.to_double()), 1e-300);
        digits = std::max(1, static_cast<int>(std::floor(std::log10(scale / e))));
        digits = std::min(digits, static_cast<int>(r.value.precision() * 0.30103));
    }
    os << r.value.re.to_string(digits);
    if (!r.value.im.is_zero()) os << (r.value.im.is_negative() ? " - " : " + ")
                                  << abs(r.value.im).to_string(digits) << "i";
    if (r.status != EvalStatus::exact_finite || r.abs_error_estimate > 0) {
        std::ostringstream e;
        e.precision(1);
        e << std::scientific << std::max(r.abs_error_estimate, 0.0);
        os << " ± " << e.str();
    }
    return os.str();
}

}  // namespace gaussfe
