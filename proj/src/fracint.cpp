#include "gaussfe/fracint.hpp"

#include "gaussfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace gaussfe {
namespace fracint {

namespace {

// polynomial with exact rational coefficients, ascending powers
struct RatPoly {
    std::vector<BigRational> c;

    BigRational eval(const BigRational& t) const {
        BigRational acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        acc.canonicalize();
        return acc;
    }
    RatPoly antiderivative() const {
        RatPoly r;
        r.c.resize(c.size() + 1, BigRational(0));
        for (size_t i = 0; i < c.size(); ++i) {
            r.c[i + 1] = c[i] / BigRational(static_cast<long>(i) + 1);
            r.c[i + 1].canonicalize();
        }
        return r;
    }
    BigRational integral(const BigRational& u, const BigRational& w) const {
        RatPoly A = antiderivative();
        BigRational r = A.eval(w) - A.eval(u);
        r.canonicalize();
        return r;
    }
};

BigRational rational_abs(const BigRational& x) { return sgn(x) < 0 ? BigRational(-x) : x; }

BigInt floor_rational(const BigRational& x) {
    BigInt n;
    mpz_fdiv_q(n.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return n;
}

// λ·t for the kinds the engine meets (at least one operand rational).
ExactReal mul_exact(const ExactReal& lambda, const ExactReal& t) {
    if (lambda.is_rational()) return t * lambda.rational();
    if (t.is_rational()) return lambda * t.rational();
    throw domain_error("fracint: unsupported operand kinds (both irrational)");
}

// Exact closed-form integration of {t}{λt}/t² over [from, to], accumulating
// into `acc` at the working precision. λ must be positive and exact-kind.
long integrate_product_exact(const ExactReal& lambda, const ExactReal& from, const ExactReal& to,
                             BigFloat& acc, long wprec, long piece_cap) {
    if (!(from.compare(to) < 0)) return 0;

    BigFloat lamf = to_float(lambda, wprec);
    BigFloat ilamf = to_float(invert(lambda), wprec);
    BigFloat tof = to_float(to, wprec);

    BigInt n = floor_frac(from).first;
    BigInt m = floor_frac(mul_exact(lambda, from)).first;
    ExactReal lam_to = mul_exact(lambda, to);

    BigFloat curf = to_float(from, wprec);
    long pieces = 0;
    bool last = false;
    while (!last) {
        if (++pieces > piece_cap) throw tolerance_error("fracint: piece budget exhausted");
        // next breakpoint: n+1 vs (m+1)/λ, capped at `to`
        // λ(n+1) ≤ m+1  ⟺  integer breakpoint comes first
        ExactReal lam_next_int = mul_exact(lambda, ExactReal(BigRational(n + 1)));
        int c = lam_next_int.compare_rational(BigRational(m + 1));
        bool take_int = c <= 0;
        bool take_lam = c >= 0;

        BigFloat nextf(wprec);
        bool past_to;
        if (take_int) {
            past_to = ExactReal(BigRational(n + 1)).compare(to) >= 0;
            nextf = BigFloat::from_int(n + 1, wprec);
        } else {
            // (m+1)/λ vs to  ⟺  m+1 vs λ·to
            past_to = lam_to.compare_rational(BigRational(m + 1)) <= 0;
            nextf = ilamf * BigFloat::from_int(m + 1, wprec);
        }
        if (past_to) {
            nextf = tof;
            last = true;
        }

        // ∫ (t−n)(λt−m)/t² dt = λΔ − (m+λn)·log(w/u) + nm(1/u − 1/w)
        BigFloat delta = nextf - curf;
        acc += lamf * delta;
        if (sgn(n) != 0 || sgn(m) != 0) {
            BigFloat coeff = BigFloat::from_int(m, wprec) + lamf * BigFloat::from_int(n, wprec);
            acc -= coeff * log(nextf / curf);
            if (sgn(n) != 0 && sgn(m) != 0) {
                BigFloat one = BigFloat::from_long(1, wprec);
                acc += BigFloat::from_int(n * m, wprec) * (one / curf - one / nextf);
            }
        }

        if (!last) {
            if (take_int) n += 1;
            if (take_lam) m += 1;
        }
        curf = nextf;
    }
    return pieces;
}

// Exact closed-form integration of {t}/t² over [from, to].
long integrate_frac_exact(const ExactReal& from, const ExactReal& to, BigFloat& acc, long wprec,
                          long piece_cap) {
    if (!(from.compare(to) < 0)) return 0;
    BigFloat tof = to_float(to, wprec);
    BigInt n = floor_frac(from).first;
    BigFloat curf = to_float(from, wprec);
    long pieces = 0;
    bool last = false;
    while (!last) {
        if (++pieces > piece_cap) throw tolerance_error("fracint: piece budget exhausted");
        BigFloat nextf(wprec);
        if (ExactReal(BigRational(n + 1)).compare(to) >= 0) {
            nextf = tof;
            last = true;
        } else {
            nextf = BigFloat::from_int(n + 1, wprec);
        }
        // ∫ (t−n)/t² dt = log(w/u) + n(1/w − 1/u)
        acc += log(nextf / curf);
        if (sgn(n) != 0) {
            BigFloat one = BigFloat::from_long(1, wprec);
            acc -= BigFloat::from_int(n, wprec) * (one / curf - one / nextf);
        }
        if (!last) n += 1;
        curf = nextf;
    }
    return pieces;
}

struct PeriodKey {
    BigInt p, q;
    bool operator<(const PeriodKey& o) const {
        int c = cmp(p, o.p);
        if (c != 0) return c < 0;
        return cmp(q, o.q) < 0;
    }
};

std::mutex g_period_mu;
std::map<PeriodKey, detail::PeriodStats> g_period_cache;

detail::PeriodStats period_stats_cached(const BigRational& lambda) {
    PeriodKey key{lambda.get_num(), lambda.get_den()};
    {
        std::lock_guard<std::mutex> lock(g_period_mu);
        auto it = g_period_cache.find(key);
        if (it != g_period_cache.end()) return it->second;
    }
    detail::PeriodStats st = detail::period_stats(lambda);
    std::lock_guard<std::mutex> lock(g_period_mu);
    g_period_cache.emplace(key, st);
    return st;
}

double to_d(const BigRational& r) { return mpq_get_d(r.get_mpq_t()); }

// |B₃({u})|/3 and trailing-term budgets for the single-sawtooth tail
// I₁(T) = ∫_T^∞ B₁(t)/t² dt = −B₂({T})/(2T²) − B₃({T})/(3T³) ± 0.017/T³.
constexpr double kI1ThirdOrderSlack = 0.017;

}  // namespace

namespace detail {

PeriodStats period_stats(const BigRational& lambda) {
    const BigInt& p = lambda.get_num();
    const BigInt& q = lambda.get_den();
    if (sgn(p) <= 0) throw domain_error("period_stats: lambda must be positive");

    // merged breakpoints of {t} and {λt} in [0, q]
    std::vector<BigRational> brk;
    for (BigInt k = 0; k <= q; k += 1) brk.emplace_back(k);
    for (BigInt m = 0; m <= p; m += 1) {
        BigRational t(m * q, p);
        t.canonicalize();
        brk.push_back(t);
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    const BigRational qq(q);
    auto piece_poly = [&](const BigRational& u) {
        BigInt n = floor_rational(u);
        BigRational lu = lambda * u;
        lu.canonicalize();
        BigInt m = floor_rational(lu);
        // (t−n)(λt−m) = λt² − (m+λn)t + nm
        RatPoly h;
        h.c = {BigRational(n * m), -(BigRational(m) + lambda * n), lambda};
        for (auto& cc : h.c) cc.canonicalize();
        return h;
    };

    // pass 1: μ = (1/q)∫ h
    BigRational total(0);
    for (size_t i = 0; i + 1 < brk.size(); ++i) total += piece_poly(brk[i]).integral(brk[i], brk[i + 1]);
    BigRational mu = total / qq;
    mu.canonicalize();

    // pass 2: H(t) = ∫_0^t (h−μ); μ_H = (1/q)∫ H; track breakpoint values
    BigRational Hu(0), intH(0);
    std::vector<BigRational> H_at(brk.size(), BigRational(0));
    BigRational maxlen(0);
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const BigRational& u = brk[i];
        const BigRational& w = brk[i + 1];
        BigRational len = w - u;
        if (len > maxlen) maxlen = len;
        RatPoly h = piece_poly(u);
        h.c[0] -= mu;
        RatPoly A = h.antiderivative();
        BigRational Au = A.eval(u);
        // ∫_u^w H dt = Hu·len + ∫ (A(t) − A(u)) dt
        intH += Hu * len + A.integral(u, w) - Au * len;
        Hu += A.eval(w) - Au;
        Hu.canonicalize();
        H_at[i + 1] = Hu;
    }
    if (sgn(Hu) != 0) throw domain_error("period_stats: periodicity check failed");
    BigRational mu_H = intH / qq;
    mu_H.canonicalize();

    // pass 3: H₂(t) = ∫_0^t (H − μ_H); exact values at breakpoints plus a
    // between-breakpoint slack of maxlen·sup|H−μ_H|, itself bounded through
    // |h−μ| ≤ 1
    BigRational H2u(0), maxH2(0), maxHc(0);
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const BigRational& u = brk[i];
        const BigRational& w = brk[i + 1];
        BigRational len = w - u;
        // trapezoid-exact step: ∫_u^w H dt with H piecewise poly
        RatPoly h = piece_poly(u);
        h.c[0] -= mu;
        RatPoly A = h.antiderivative();
        BigRational Au = A.eval(u);
        BigRational intH_piece = H_at[i] * len + A.integral(u, w) - Au * len;
        H2u += intH_piece - mu_H * len;
        H2u.canonicalize();
        if (rational_abs(H2u) > maxH2) maxH2 = rational_abs(H2u);
        BigRational hc = rational_abs(H_at[i] - mu_H);
        if (hc > maxHc) maxHc = hc;
    }
    BigRational supH = maxHc + maxlen;                     // |h−μ| ≤ 1
    BigRational supH2 = maxH2 + maxlen * supH;
    supH2.canonicalize();
    return {mu, mu_H, supH2};
}

}  // namespace detail

Report product_over_t2(const ExactReal& lambda_in, const ExactReal& a,
                       const std::optional<ExactReal>& b, double tol, const Options& opt) {
    if (lambda_in.sign() < 0) throw domain_error("product_over_t2: lambda must be >= 0");
    if (a.sign() < 0) throw domain_error("product_over_t2: range must start at >= 0");
    if (b && b->compare(a) < 0) throw domain_error("product_over_t2: empty range");

    const long wprec = opt.prec + 40;
    Report rep;
    rep.value = BigFloat(opt.prec);
    if (lambda_in.sign() == 0) return rep;  // integrand vanishes

    // floats are exact dyadic rationals: fold them into the rational path
    ExactReal lambda = lambda_in.is_float()
                           ? ExactReal(lambda_in.flt().to_exact_rational())
                           : lambda_in;
    ExactReal from = a.is_float() ? ExactReal(a.flt().to_exact_rational()) : a;
    std::optional<ExactReal> upto = b;
    if (upto && upto->is_float()) upto = ExactReal(upto->flt().to_exact_rational());

    BigFloat acc(wprec);
    const double lam_d = to_float(lambda, 64).to_double();

    if (upto) {
        double span = to_float(*upto, 64).to_double() - to_float(from, 64).to_double();
        double est_pieces = span * (1.0 + lam_d) + 2;
        if (est_pieces > static_cast<double>(opt.piece_cap))
            throw tolerance_error("product_over_t2: finite range exceeds piece budget");
        rep.pieces = integrate_product_exact(lambda, from, *upto, acc, wprec, opt.piece_cap);
        rep.T_used = to_float(*upto, 64).to_double();
        rep.tail_estimate = (static_cast<double>(rep.pieces) + 8) * std::ldexp(1.0, -static_cast<int>(opt.prec + 16)) *
                            std::max(1.0, std::fabs(acc.to_double()));
        rep.value = acc.round_to(opt.prec);
        return rep;
    }

    const double a_d = to_float(from, 64).to_double();

    // The exact periodic tail costs ~(p+q) rational-polynomial pieces, an
    // order of magnitude pricier each than the crude path's float pieces
    // (~1/(9.6·tol) of them). Take the periodic route only when it wins or
    // when the crude bound cannot reach tol at all.
    bool use_periodic = false;
    if (lambda.is_rational()) {
        double pq = lambda.rational().get_num().get_d() + lambda.rational().get_den().get_d();
        double crude_T = 1.0 / (9.6 * std::max(tol, 1e-300));
        use_periodic = pq <= opt.periodic_q_cap &&
                       (pq <= std::max(4000.0, crude_T / 4.0));
    }
    if (use_periodic) {
        const BigRational& lam = lambda.rational();
        detail::PeriodStats st = period_stats_cached(lam);
        double S = to_d(st.sup_H2);
        double q_d = lam.get_den().get_d();

        double T_need = std::cbrt(std::max(2.0 * S, 1e-300) / (0.9 * tol));
        double T_d = std::max({T_need, a_d + 1.0, q_d, 1.0});
        // round T up to a multiple of q
        BigInt M(static_cast<unsigned long>(std::ceil(T_d / q_d)));
        if (M < 1) M = 1;
        BigInt T_int = M * lam.get_den();
        double T = T_int.get_d();
        double est_pieces = (T - a_d) * (1.0 + lam_d) + q_d * 2 + 4;
        if (est_pieces > static_cast<double>(opt.piece_cap) || T > opt.t_cap) {
            if (!opt.best_effort)
                throw tolerance_error("product_over_t2: tolerance unachievable within caps");
            T_int = lam.get_den() * BigInt(static_cast<long>(std::max(
                        1.0, std::min(opt.t_cap, static_cast<double>(opt.piece_cap) / (1.0 + lam_d)) / q_d)));
            T = T_int.get_d();
        }
        ExactReal T_er{BigRational(T_int)};
        rep.pieces = integrate_product_exact(lambda, from, T_er, acc, wprec, opt.piece_cap);
        // tail = μ/T + μ_H/T² ± 2·sup|H₂|/T³
        BigFloat Tf = BigFloat::from_int(T_int, wprec);
        acc += BigFloat::from_rational(st.mu, wprec) / Tf;
        acc += BigFloat::from_rational(st.mu_H, wprec) / (Tf * Tf);
        rep.T_used = T;
        rep.tail_estimate = 2.0 * S / (T * T * T);
    } else {
        // crude tail: exact sawtooth parts to O(T⁻³), cross term bounded by
        // Cauchy–Schwarz at ~1/(12T)
        double T_need = 1.0 / (9.6 * tol);
        double T_d = std::max({T_need, a_d + 1.0, 1.0 / lam_d + 1.0, 2.0});
        if (T_d > opt.t_cap || T_d * (1.0 + lam_d) > static_cast<double>(opt.piece_cap)) {
            if (!opt.best_effort)
                throw tolerance_error("product_over_t2: tolerance unachievable within caps");
            T_d = std::min(opt.t_cap, static_cast<double>(opt.piece_cap) / (1.0 + lam_d));
            T_d = std::max(T_d, std::max(a_d + 1.0, 1.0 / lam_d + 1.0));
        }
        BigInt T_int(static_cast<unsigned long>(std::ceil(T_d)));
        double T = T_int.get_d();
        ExactReal T_er{BigRational(T_int)};
        rep.pieces = integrate_product_exact(lambda, from, T_er, acc, wprec, opt.piece_cap);

        BigFloat Tf = BigFloat::from_int(T_int, wprec);
        BigFloat lamf = to_float(lambda, wprec);
        BigFloat one = BigFloat::from_long(1, wprec);
        // ∫_T^∞ 1/(4t²) = 1/(4T);  ½I₁(T) with integer T: −1/(24T²)
        acc += one / (Tf * 4);
        acc -= one / (Tf * Tf * 24);
        // (λ/2)·I₁(λT) with {λT} exact
        ExactReal lamT = mul_exact(lambda, T_er);
        auto [nT, fracT] = floor_frac(lamT);
        (void)nT;
        BigFloat uf = to_float(fracT, wprec);
        BigFloat u0 = lamf * Tf;
        BigFloat B2 = uf * uf - uf + BigFloat::from_rational(BigRational(1, 6), wprec);
        BigFloat B3 = uf * uf * uf - uf * uf * BigFloat::from_rational(BigRational(3, 2), wprec) +
                      uf / 2;
        acc -= (lamf / 2) * (B2 / (u0 * u0 * 2) + B3 / (u0 * u0 * u0 * 3));

        double u0_d = lam_d * T;
        double f1 = 1.0 / (12.0 * T) + 0.05 / (T * T);
        double f2 = 1.0 / (12.0 * T) + 0.05 / (lam_d * T * T);
        double bound_J = std::sqrt(f1 * f2);
        rep.T_used = T;
        rep.tail_estimate = bound_J + 0.5 * kI1ThirdOrderSlack / (T * T * T) +
                            0.5 * lam_d * kI1ThirdOrderSlack / (u0_d * u0_d * u0_d);
    }

    rep.tail_estimate += (static_cast<double>(rep.pieces) + 8) *
                         std::ldexp(1.0, -static_cast<int>(opt.prec + 16)) *
                         std::max(1.0, std::fabs(acc.to_double()));
    if (rep.tail_estimate > tol && !opt.best_effort)
        throw tolerance_error("product_over_t2: tolerance unachievable");
    rep.value = acc.round_to(opt.prec);
    return rep;
}

Report frac_over_t2(const ExactReal& a, const std::optional<ExactReal>& b, double tol,
                    const Options& opt) {
    if (a.sign() <= 0) throw domain_error("frac_over_t2: integrand ~1/t diverges at 0; need a > 0");
    if (b && b->compare(a) < 0) throw domain_error("frac_over_t2: empty range");
    const long wprec = opt.prec + 40;

    ExactReal from = a.is_float() ? ExactReal(a.flt().to_exact_rational()) : a;
    std::optional<ExactReal> upto = b;
    if (upto && upto->is_float()) upto = ExactReal(upto->flt().to_exact_rational());

    Report rep;
    BigFloat acc(wprec);
    if (upto) {
        rep.pieces = integrate_frac_exact(from, *upto, acc, wprec, opt.piece_cap);
        rep.T_used = to_float(*upto, 64).to_double();
    } else {
        double a_d = to_float(from, 64).to_double();
        double T_d = std::max({std::cbrt(kI1ThirdOrderSlack / (0.9 * tol)), a_d + 1.0, 2.0});
        if (T_d > opt.t_cap) {
            if (!opt.best_effort) throw tolerance_error("frac_over_t2: tolerance unachievable");
            T_d = opt.t_cap;
        }
        BigInt T_int(static_cast<unsigned long>(std::ceil(T_d)));
        double T = T_int.get_d();
        rep.pieces = integrate_frac_exact(from, ExactReal(BigRational(T_int)), acc, wprec,
                                          opt.piece_cap);
        // ∫_T^∞ {t}/t² = 1/(2T) − 1/(12T²) ± 0.017/T³  (integer T)
        BigFloat Tf = BigFloat::from_int(T_int, wprec);
        BigFloat one = BigFloat::from_long(1, wprec);
        acc += one / (Tf * 2);
        acc -= one / (Tf * Tf * 12);
        rep.T_used = T;
        rep.tail_estimate = kI1ThirdOrderSlack / (T * T * T);
    }
    rep.tail_estimate += (static_cast<double>(rep.pieces) + 8) *
                         std::ldexp(1.0, -static_cast<int>(opt.prec + 16)) *
                         std::max(1.0, std::fabs(acc.to_double()));
    if (rep.tail_estimate > tol && !opt.best_effort)
        throw tolerance_error("frac_over_t2: tolerance unachievable");
    rep.value = acc.round_to(opt.prec);
    return rep;
}

}  // namespace fracint
}  // namespace gaussfe
