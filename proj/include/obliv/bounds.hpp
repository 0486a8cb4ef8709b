#pragma once

// Closed-form evaluators for the lower bounds and feasibility corollaries:
// impossibility bounds for OT-from-OT reductions, the generic entropy bounds
// for arbitrary one-sided functions, the malicious-model transfers, and the
// quantum-setting bounds. Every evaluator returns a BoundReport; verdicts are
// vacuous whenever a theorem's stated epsilon-precondition fails, rather than
// extrapolating a formula outside its proven range.

#include "obliv/entropy.hpp"
#include "obliv/primitives.hpp"
#include "obliv/structure.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace obliv {

inline constexpr double kVerdictTol = 1e-9;

enum class Verdict { satisfiable, violated, vacuous };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::satisfiable: return "satisfiable";
        case Verdict::violated: return "violated";
        case Verdict::vacuous: return "vacuous";
    }
    return "?";
}

/// One evaluated inequality `measured >= required`.
struct BoundReport {
    std::string name;
    double required = 0.0;
    std::optional<double> measured;
    double slack = 0.0;  // measured - required when measured is present
    Verdict verdict = Verdict::satisfiable;
    std::string note;
};

inline BoundReport make_report(std::string name, double required,
                               std::optional<double> measured = std::nullopt,
                               std::string note = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.required = required;
    r.measured = measured;
    r.note = std::move(note);
    if (required <= 0.0) {
        r.verdict = Verdict::vacuous;
        if (r.note.empty()) r.note = "required <= 0";
        if (measured) r.slack = *measured - required;
    } else if (measured) {
        r.slack = *measured - required;
        r.verdict = r.slack >= -kVerdictTol ? Verdict::satisfiable : Verdict::violated;
    }
    return r;
}

inline BoundReport vacuous_report(std::string name, std::string note) {
    BoundReport r;
    r.name = std::move(name);
    r.verdict = Verdict::vacuous;
    r.note = std::move(note);
    return r;
}

struct ReductionParams {
    int M = 1, N = 2, K = 1;  // target: M instances of OT(1,N,K)
    int m = 1, n = 2, k = 1;  // resource: m instances of OT(1,n,k)
    double eps = 0.0;

    void validate() const {
        if (N < 2 || n < 2 || K < 1 || k < 1 || M < 1 || m < 1)
            throw_domain("ReductionParams: need N,n >= 2 and K,k,M,m >= 1");
        if (eps < 0.0 || eps > 1.0) throw_domain("ReductionParams: eps outside [0,1]");
    }
};

/// The three displayed right-hand sides for implementing m x OT(1,n,k):
/// H(U|V), H(V|U) and I(U;V|C).
inline std::array<BoundReport, 3> thm_impossibility_bounds(int n, int k, int m, double eps) {
    if (n < 2 || k < 1 || m < 1) throw_domain("thm_impossibility_bounds: need n >= 2, k >= 1, m >= 1");
    if (eps < 0.0 || eps > 1.0) throw_domain("thm_impossibility_bounds: eps outside [0,1]");
    const double h = binary_entropy(eps);
    const double logn = std::log2(double(n));
    return {
        make_report("H(U|V)", m * (n - 1.0) * k - (4.0 * n - 1.0) * (eps * m * k + h)),
        make_report("H(V|U)", m * logn - m * (4.0 * logn + 7.0) * (eps + h)),
        make_report("I(U;V|C)", m * double(k) - 7.0 * eps * m * k - 7.0 * h),
    };
}

/// Conversion-rate bound: m/M >= max((N-1)K/((n-1)k), K/k, log N/log n)
/// - 7NK(eps + h(eps)).
inline BoundReport rate_bound_main2(const ReductionParams& p) {
    p.validate();
    const double rate = std::max({(p.N - 1.0) * p.K / ((p.n - 1.0) * p.k), double(p.K) / p.k,
                                  std::log2(double(p.N)) / std::log2(double(p.n))});
    const double required = rate - 7.0 * p.N * p.K * (p.eps + binary_entropy(p.eps));
    return make_report("rate m/M", required, double(p.m) / p.M);
}

/// Smooth-min-entropy feasibility: m(n-1)k >= M(N-1)K - (6n+2) eps, valid for
/// eps < 1/(2(3n+1)).
inline BoundReport minentropy_feasibility(const ReductionParams& p) {
    p.validate();
    const double validity = 1.0 / (2.0 * (3.0 * p.n + 1.0));
    if (p.eps >= validity)
        return vacuous_report("smooth-min feasibility",
                              "eps outside validity range [0, 1/(2(3n+1)))");
    const double required = double(p.M) * (p.N - 1.0) * p.K - (6.0 * p.n + 2.0) * p.eps;
    return make_report("smooth-min feasibility", required, p.m * (p.n - 1.0) * p.k);
}

/// Minimal error certified by the smooth-min route when the resource falls
/// short at eps = 0; clamped to the corollary's validity range.
inline std::optional<double> min_feasible_eps(const ReductionParams& p) {
    const double deficit = double(p.M) * (p.N - 1.0) * p.K - p.m * (p.n - 1.0) * p.k;
    if (deficit <= 0.0) return std::nullopt;
    return std::min(deficit / (6.0 * p.n + 2.0), 1.0 / (2.0 * (3.0 * p.n + 1.0)));
}

/// EQ_n: required OT count m >= k - 1 - (6 2^k + 2) eps for 0 < k <= n,
/// valid for eps <= 1/(6 2^k + 2).
inline BoundReport eq_bound(int k, double eps) {
    if (k < 1 || k > 40) throw_domain("eq_bound: k outside [1,40]");
    const double pow2k = std::ldexp(1.0, k);
    if (eps < 0.0 || eps > 1.0 / (6.0 * pow2k + 2.0))
        return vacuous_report("eq OT count", "eps outside validity range [0, 1/(6*2^k+2)]");
    return make_report("eq OT count", k - 1.0 - (6.0 * pow2k + 2.0) * eps);
}

/// IP_n: required OT count m >= n - 1 - (6n+2) eps, valid for eps < 1/(6n+2).
inline BoundReport ip_bound(int n, double eps) {
    if (n < 1) throw_domain("ip_bound: n >= 1");
    if (eps < 0.0 || eps >= 1.0 / (6.0 * n + 2.0))
        return vacuous_report("ip OT count", "eps outside validity range [0, 1/(6n+2))");
    return make_report("ip OT count", n - 1.0 - (6.0 * n + 2.0) * eps);
}

/// OLFE over GF(q), m instances: lower bounds on H(U|V), H(V|U), I(U;V|C).
inline std::array<BoundReport, 3> olfe_bound(int q, int m, double eps) {
    if (!is_prime(q)) throw_domain("NotPrime: OLFE field size must be prime");
    if (m < 1) throw_domain("olfe_bound: m >= 1");
    const double h = binary_entropy(eps);
    const double mlogq = m * std::log2(double(q));
    return {
        make_report("olfe H(U|V)", mlogq - 5.0 * (eps * mlogq + h)),
        make_report("olfe H(V|U)", mlogq - 5.0 * (eps * mlogq + h)),
        make_report("olfe I(U;V|C)", mlogq - 7.0 * (eps * mlogq + h)),
    };
}

/// H(X|f(X,y)) for uniform X: the preimages of f(.,y) partition X.
inline double function_cond_entropy(const FunctionTable& f, std::uint32_t y) {
    std::vector<std::uint64_t> count(f.z_alphabet.size(), 0);
    for (std::uint32_t x = 0; x < f.x_alphabet.size(); ++x) ++count[f.z(x, y)];
    double h = 0.0;
    const double nx = double(f.x_alphabet.size());
    for (const auto c : count)
        if (c > 0) h += (c / nx) * std::log2(double(c));
    return h;
}

/// d_f = log max_y |{f(x,y) : x}|; the tighter constant of the H-bound.
inline double function_df(const FunctionTable& f) {
    std::size_t best = 0;
    for (std::uint32_t y = 0; y < f.y_alphabet.size(); ++y) {
        std::vector<bool> seen(f.z_alphabet.size(), false);
        std::size_t n = 0;
        for (std::uint32_t x = 0; x < f.x_alphabet.size(); ++x) {
            if (!seen[f.z(x, y)]) ++n;
            seen[f.z(x, y)] = true;
        }
        best = std::max(best, n);
    }
    return std::log2(double(best));
}

/// H(U|V) >= max_y H(X|f(X,y)) - (3|Y|-1)(eps d + h(eps)) - eps log|X|,
/// where d = d_f by default and log|Z| with use_published_constant.
inline BoundReport general_H_bound(const PrimitiveSpec& f_spec, const PrimitiveSpec& resource,
                                   double eps, bool use_published_constant = false) {
    const FunctionTable& f = f_spec.function();
    if (!check_condition_1(f_spec))
        throw_domain("ConditionViolated: f does not satisfy condition (12)");
    if (eps < 0.0 || eps > 1.0) throw_domain("general_H_bound: eps outside [0,1]");
    double hx = 0.0;
    for (std::uint32_t y = 0; y < f.y_alphabet.size(); ++y)
        hx = std::max(hx, function_cond_entropy(f, y));
    const double d = use_published_constant ? std::log2(double(f.z_alphabet.size())) : function_df(f);
    const double required = hx -
                            (3.0 * f.y_alphabet.size() - 1.0) * (eps * d + binary_entropy(eps)) -
                            eps * std::log2(double(f.x_alphabet.size()));
    return make_report("H-bound[" + f_spec.name + "]", required, shannon_cond(resource.randomness()));
}

/// I(U;V|C) >= log|X| - 7(eps log|X| + h(eps)); needs the (y1, y2) witness.
inline BoundReport general_I_bound(const PrimitiveSpec& f_spec, const PrimitiveSpec& resource,
                                   double eps) {
    const FunctionTable& f = f_spec.function();
    if (!find_y1_y2(f_spec)) throw_domain("NoWitness: f has no (y1, y2) witness pair");
    if (eps < 0.0 || eps > 1.0) throw_domain("general_I_bound: eps outside [0,1]");
    const double logx = std::log2(double(f.x_alphabet.size()));
    const double required = logx - 7.0 * (eps * logx + binary_entropy(eps));
    const JointDist& r = resource.randomness();
    const double measured = mutual_info_given_common(r, common_part(r));
    return make_report("I-bound[" + f_spec.name + "]", required, measured);
}

/// H_min^{(3|Y|+1)eps + eps'}(U|V) >= max_y H_min^{eps'}(X | f(X,y)).
inline BoundReport general_Hmin_bound(const PrimitiveSpec& f_spec, const PrimitiveSpec& resource,
                                      const Rational& eps, const Rational& eps_prime) {
    const FunctionTable& f = f_spec.function();
    const Rational compound = Rational(3 * int(f.y_alphabet.size()) + 1) * eps + eps_prime;
    if (compound < 0 || compound >= 1)
        throw_domain("SmoothingOutOfRange: (3|Y|+1)eps + eps' outside [0,1)");
    double required = 0.0;
    for (std::uint32_t y = 0; y < f.y_alphabet.size(); ++y) {
        std::vector<JointAtom> atoms;
        const Rational p(1, BigInt(f.x_alphabet.size()));
        for (std::uint32_t x = 0; x < f.x_alphabet.size(); ++x)
            atoms.push_back(JointAtom{x, f.z(x, y), p});
        JointDist xy(f.x_alphabet, f.z_alphabet, std::move(atoms));
        required = std::max(required, smooth_min_entropy(xy, eps_prime).value);
    }
    const double measured = smooth_min_entropy(resource.randomness(), compound).value;
    return make_report("Hmin-bound[" + f_spec.name + "]", required, measured);
}

/// Malicious-to-semi-honest error transfer for OT(1,n,k): (2n+1) eps.
inline double malicious_transfer(double eps, int n) {
    if (n < 2) throw_domain("malicious_transfer: n >= 2");
    if (eps < 0.0) throw_domain("malicious_transfer: eps >= 0");
    return (2.0 * n + 1.0) * eps;
}

/// Malicious-model bounds for OT(1,2,k) from randomness (U, VV'):
/// H_min^{7 eps}(U|VV') >= k and H(U|VV') >= k - 6(k eps + h(eps)).
inline std::array<BoundReport, 2> malicious_bounds(const PrimitiveSpec& resource, int k,
                                                   const Rational& eps) {
    if (k < 1) throw_domain("malicious_bounds: k >= 1");
    if (eps < 0) throw_domain("malicious_bounds: eps >= 0");
    const JointDist& r = resource.randomness();
    const double eps_d = to_double(eps);
    if (Rational(7) * eps >= 1)
        return {vacuous_report("malicious H_min", "7 eps >= 1"),
                make_report("malicious H(U|VV')", k - 6.0 * (k * eps_d + binary_entropy(eps_d)),
                            shannon_cond(r))};
    return {
        make_report("malicious H_min", double(k), smooth_min_entropy(r, Rational(7) * eps).value),
        make_report("malicious H(U|VV')", k - 6.0 * (k * eps_d + binary_entropy(eps_d)),
                    shannon_cond(r)),
    };
}

// ---------------------------------------------------------------------------
// Quantum-setting bounds (closed-form evaluators)
// ---------------------------------------------------------------------------

/// Minimal error of any quantum OT(1,2,k) protocol using kappa commitments.
inline double imposs1_min_error(int kappa) {
    if (kappa < 0 || kappa > 1000) throw_domain("imposs1_min_error: kappa outside [0,1000]");
    return std::ldexp(1.0, -kappa) / 36.0;
}

/// Committed-bit count: (1 - 3 sqrt(eps)) k - 3 h(sqrt(eps)), for eps <= 0.002.
inline BoundReport imposs_com_bits(int k, double eps, std::optional<double> measured = std::nullopt) {
    if (k < 1) throw_domain("imposs_com_bits: k >= 1");
    if (eps < 0.0) throw_domain("imposs_com_bits: eps >= 0");
    if (eps > 0.002) return vacuous_report("commit bits", "eps outside validity range [0, 0.002]");
    const double s = std::sqrt(eps);
    return make_report("commit bits", (1.0 - 3.0 * s) * k - 3.0 * binary_entropy(s), measured);
}

/// Individual-commitment count: log(1/eps) - 6, for 0 < eps <= 0.002.
inline BoundReport imposs_com_count(double eps, std::optional<double> measured = std::nullopt) {
    if (eps <= 0.0 || eps > 0.002)
        return vacuous_report("commit count", "eps outside validity range (0, 0.002]");
    return make_report("commit count", std::log2(1.0 / eps) - 6.0, measured);
}

/// H_max(U|V) + H_max(V|U) and 2 H(UV) bounds against the same RHS.
inline BoundReport imposs_rand(int k, double eps, std::optional<double> measured = std::nullopt) {
    if (k < 1) throw_domain("imposs_rand: k >= 1");
    if (eps < 0.0) throw_domain("imposs_rand: eps >= 0");
    if (eps > 0.002) return vacuous_report("quantum randomness", "eps outside validity range [0, 0.002]");
    const double s = std::sqrt(eps);
    return make_report("quantum randomness", (1.0 - 3.0 * s) * k - 3.0 * binary_entropy(s), measured);
}

/// 2n >= (1 - 3 sqrt(eps)) k - 3 h(sqrt(eps)) for n bit-OTs in either direction.
inline BoundReport imposs4(int k, double eps, std::optional<int> n = std::nullopt) {
    BoundReport base = imposs_rand(k, eps, n ? std::optional<double>(2.0 * *n) : std::nullopt);
    base.name = "quantum 2n";
    return base;
}

/// Quantum OT extension: iterating m -> m+1 forces an error >= 1/(1500 m).
inline double quantum_extension_min_error(int m) {
    if (m < 1) throw_domain("quantum_extension_min_error: m >= 1");
    return 1.0 / (1500.0 * m);
}

// ---------------------------------------------------------------------------
// Reduction checking (the CLI's check-reduction)
// ---------------------------------------------------------------------------

struct ReductionCheck {
    std::vector<BoundReport> reports;
    Verdict overall = Verdict::satisfiable;
    std::optional<double> min_feasible_eps;  // smallest certified error, if violated at this eps
};

inline void finish_overall(ReductionCheck& rc) {
    rc.overall = Verdict::vacuous;
    for (const auto& r : rc.reports) {
        if (r.verdict == Verdict::violated) {
            rc.overall = Verdict::violated;
            return;
        }
        if (r.verdict == Verdict::satisfiable) rc.overall = Verdict::satisfiable;
    }
}

/// OT(1,N,K)^M from OT(1,n,k)^m: all applicable closed-form bounds. The
/// H(U|V) requirement is reported in both published forms (Thm. 5 display and
/// the ((1-eps)n - t)km corollary display) side by side.
inline ReductionCheck check_ot_reduction(const ReductionParams& p) {
    p.validate();
    const double h = binary_entropy(p.eps);
    const double logN = std::log2(double(p.N)), logn = std::log2(double(p.n));
    ReductionCheck rc;
    rc.reports.push_back(make_report(
        "H(U|V) [thm form]", p.M * (p.N - 1.0) * p.K - (4.0 * p.N - 1.0) * (p.eps * p.M * p.K + h),
        p.m * (p.n - 1.0) * p.k));
    rc.reports.push_back(make_report(
        "H(U|V) [cor form]",
        ((1.0 - p.eps) * p.N - 1.0) * p.K * p.M - (3.0 * p.N - 1.0) * (p.eps * p.M * p.K + h),
        p.m * (p.n - 1.0) * p.k));
    rc.reports.push_back(make_report("H(V|U)",
                                     p.M * logN - p.M * (4.0 * logN + 7.0) * (p.eps + h),
                                     p.m * logn));
    rc.reports.push_back(make_report("I(U;V|C)", p.M * double(p.K) - 7.0 * p.eps * p.M * p.K - 7.0 * h,
                                     double(p.m) * p.k));
    rc.reports.push_back(rate_bound_main2(p));
    rc.reports.push_back(minentropy_feasibility(p));
    finish_overall(rc);
    if (rc.overall == Verdict::violated) rc.min_feasible_eps = min_feasible_eps(p);
    return rc;
}

/// OT(1,N,K)^M from arbitrary distributed randomness. Applies the generic
/// entropy bounds (in their OT-corollary form, which holds for every M) and
/// the smooth-min-entropy question of Section III: can the resource's
/// eps-smoothed min-entropy carry M(N-1)K bits at all.
inline ReductionCheck check_general_reduction(int N, int K, int M, const PrimitiveSpec& resource,
                                              const Rational& eps) {
    if (N < 2 || K < 1 || M < 1) throw_domain("check_general_reduction: need N >= 2, K, M >= 1");
    if (eps < 0 || eps > 1) throw_domain("check_general_reduction: eps outside [0,1]");
    const JointDist& r = resource.randomness();
    const double e = to_double(eps);
    const double h = binary_entropy(e);
    ReductionCheck rc;
    rc.reports.push_back(make_report(
        "H(U|V) [thm form]", M * (N - 1.0) * K - (4.0 * N - 1.0) * (e * M * K + h), shannon_cond(r)));
    rc.reports.push_back(make_report(
        "H(U|V) [cor form]", ((1.0 - e) * N - 1.0) * K * M - (3.0 * N - 1.0) * (e * M * K + h),
        shannon_cond(r)));
    rc.reports.push_back(make_report("I(U;V|C)",
                                     M * double(K) - 7.0 * (e * M * K + h),
                                     mutual_info_given_common(r, common_part(r))));
    if (eps < 1) {
        rc.reports.push_back(make_report("H_min^eps(U|V) >= M(N-1)K",
                                         M * (N - 1.0) * K,
                                         smooth_min_entropy(r, eps).value));
    }
    finish_overall(rc);
    return rc;
}

}  // namespace obliv
