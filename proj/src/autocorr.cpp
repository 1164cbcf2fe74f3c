#include "gaussfe/autocorr.hpp"

#include <cmath>
#include <ostream>

namespace gaussfe {

namespace {

fracint::Options to_fracint(const AutocorrOptions& opt) {
    fracint::Options f;
    f.prec = opt.prec;
    f.piece_cap = opt.piece_cap;
    f.t_cap = opt.t_cap;
    f.best_effort = opt.best_effort;
    return f;
}

ExactReal zero_er() { return ExactReal(BigRational(0)); }

// smallest quadrature tolerance reachable for A(λ) within the caps (λ ≤ 1
// after reduction); exact-periodic denominators can go essentially as deep
// as wanted, the crude tail is limited by its 1/(12T) cross-term bound
double tol_floor(const ExactReal& lambda, const AutocorrOptions& opt) {
    BigRational as_rat;
    bool rational = true;
    if (lambda.is_rational()) {
        as_rat = lambda.rational();
    } else if (lambda.is_float()) {
        as_rat = lambda.flt().to_exact_rational();
    } else {
        rational = false;
    }
    if (rational && as_rat.get_num() + as_rat.get_den() <= 200000) return 0;
    double lam = to_float(lambda, 64).to_double();
    double t_max = std::min(opt.t_cap, static_cast<double>(opt.piece_cap) / (1.0 + lam) * 0.9);
    return 1.3 / (9.6 * t_max);
}

}  // namespace

QuadratureReport autocorr_A(const ExactReal& lambda, double tol, const AutocorrOptions& opt) {
    if (lambda.sign() < 0) throw domain_error("autocorr_A: lambda must be >= 0");
    QuadratureReport rep;
    rep.value = BigFloat(opt.prec);
    if (lambda.sign() == 0) return rep;  // A(0) = 0

    if (lambda.compare_rational(BigRational(1)) > 0) {
        // A(λ) = λ·A(1/λ)
        ExactReal inv = invert(lambda);
        double lam_d = to_float(lambda, 64).to_double();
        fracint::Report inner =
            fracint::product_over_t2(inv, zero_er(), std::nullopt, tol / (1.05 * lam_d),
                                     to_fracint(opt));
        BigFloat lam_f = to_float(lambda, opt.prec + 16);
        rep.value = (lam_f * inner.value).round_to(opt.prec);
        rep.T_used = inner.T_used;
        rep.pieces = inner.pieces;
        rep.tail_estimate = inner.tail_estimate * lam_d * 1.01 +
                            std::ldexp(std::fabs(rep.value.to_double()) + 1, -static_cast<int>(opt.prec - 4));
        return rep;
    }

    fracint::Report r = fracint::product_over_t2(lambda, zero_er(), std::nullopt, tol,
                                                 to_fracint(opt));
    rep.value = r.value;
    rep.T_used = r.T_used;
    rep.pieces = r.pieces;
    rep.tail_estimate = r.tail_estimate;
    return rep;
}

AutocorrContext::AutocorrContext(AutocorrOptions opt) : opt_(opt) {}

BigFloat AutocorrContext::A1() {
    if (!a1_) {
        QuadratureReport r = autocorr_A(ExactReal(BigRational(1)), std::min(opt_.tol, 1e-13), opt_);
        a1_ = r.value;
        a1_err_ = r.tail_estimate;
    }
    return *a1_;
}

double AutocorrContext::A1_error() {
    A1();
    return a1_err_;
}

FValue AutocorrContext::F(const ExactReal& x) { return F(x, opt_.tol); }

FValue AutocorrContext::F(const ExactReal& x, double tol) {
    if (x.sign() < 0) throw domain_error("F: x must be >= 0");
    ++f_evals_;
    std::string key = x.to_string();
    auto it = f_memo_.find(key);
    if (it != f_memo_.end() && it->second.abs_error <= tol * 1.05) {
        ++f_hits_;
        return it->second;
    }

    const long prec = opt_.prec;
    FValue out;
    if (x.sign() == 0) {
        out.value = (A1() / 2).round_to(prec);
        out.abs_error = a1_err_;
        f_memo_[key] = out;
        return out;
    }

    // F(x) = ((x+1)/2)A(1) − A(x) − (x/2)·log x
    double x_d = to_float(x, 64).to_double();
    double eff = std::max(tol, tol_floor(x.compare_rational(BigRational(1)) > 0 ? invert(x) : x,
                                         opt_));
    AutocorrOptions aopt = opt_;
    QuadratureReport ax = autocorr_A(x, eff, aopt);
    BigFloat xf = to_float(x, prec + 16);
    BigFloat one = BigFloat::from_long(1, prec + 16);
    BigFloat f = (xf + one) / 2 * A1() - ax.value - xf / 2 * log(xf);
    out.value = f.round_to(prec);
    out.abs_error = (x_d + 1) / 2 * a1_err_ + ax.tail_estimate +
                    std::ldexp(std::fabs(out.value.to_double()) + 1, -static_cast<int>(prec - 6));
    f_memo_[key] = out;
    return out;
}

SeriesParams AutocorrContext::G_params() {
    SeriesParams p;
    const long prec = opt_.prec;
    p.theta = BigComplex::real(BigFloat::from_long(-1, prec));
    p.s = BigComplex::real(BigFloat::from_long(1, prec));
    p.a = 1.0;
    p.g.label = "F";
    p.g.at_zero = BigComplex::real(A1() / 2);
    p.g.at_one = BigComplex(prec);
    // F decreases from A(1)/2 at 0 to 0 at 1 on the unit interval; the
    // boundedness suite samples this claim
    p.g.sup_norm = (A1() / 2).to_double() * (1 + 1e-9) + a1_err_ + 1e-12;
    p.g.eval = [this](const ExactReal& x, long, double tol) -> GValue {
        FValue fv = F(x, tol * 0.5);
        return {BigComplex::real(fv.value), fv.abs_error};
    };
    return p;
}

FValue F_of(const ExactReal& x, double tol, const AutocorrOptions& opt) {
    AutocorrContext ctx(opt);
    return ctx.F(x, tol);
}

EvalResult G_of(const ExactReal& x, AutocorrContext& ctx, long k_max, double tol) {
    ExactReal frac = floor_frac(x).second;
    return S_g(frac, ctx.G_params(), k_max, tol);
}

EvalResult G_of(const ExactReal& x, long k_max, double tol, const AutocorrOptions& opt) {
    AutocorrContext ctx(opt);
    return G_of(x, ctx, k_max, tol);
}

JumpData G_jumps(const BigRational& r, AutocorrContext& ctx, double tol) {
    return limits_at_rational(r, ctx.G_params(), tol);
}

ExactReal cell_approach_point(const BigRational& r, bool from_right, long i) {
    if (sgn(r) <= 0 || r >= 1) throw domain_error("cell_approach_point: r must lie in (0,1)");
    if (i < 1) throw domain_error("cell_approach_point: i must be >= 1");
    CFState st = CFState::expand(ExactReal(r), 1 << 20);
    const long K = *st.depth();
    std::vector<BigInt> word = st.quotients();
    const bool plus_side_right = (K % 2 == 0);  // 𝔠(a_1..a_K) right of r iff K even
    if (from_right == plus_side_right) {
        word.push_back(BigInt(i));  // inside 𝔠(a_1..a_K)
    } else {
        word.back() -= 1;  // inside 𝔠(a_1..a_K−1, 1)
        if (word.back() == 0) word.pop_back();
        word.push_back(BigInt(1));
        word.push_back(BigInt(i));
    }
    return ExactReal(value_of(word));
}

void emit_G_sweep_csv(const std::vector<ExactReal>& xs, AutocorrContext& ctx, std::ostream& os,
                      long k_max, double tol) {
    os << "x,G,err\r\n";
    for (const ExactReal& x : xs) {
        EvalResult r = G_of(x, ctx, k_max, tol);
        os << to_float(x, 64).to_string(17) << ',' << r.value.re.to_string() << ','
           << r.abs_error_estimate << "\r\n";
    }
}

}  // namespace gaussfe
