// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include "obliv/bb84.hpp"
#include "obliv/bounds.hpp"
#include "obliv/protocols.hpp"
#include "support/properties.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace obliv;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2d  %s%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool within(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

int main() {
    criterion(1, "entropy triple exactness for OT(1,n,k)^m", [](std::string& detail) {
        for (int n : {2, 3, 4})
            for (int k : {1, 2})
                for (int m : {1, 2}) {
                    const auto ot = make_ot_randomness(1, n, k, m);
                    const JointDist& j = ot.randomness();
                    const double h_uv = shannon_cond(j);
                    const double h_vu = shannon_cond(transpose(j));
                    const double i_uv = mutual_info(j);
                    const double i_c = mutual_info_given_common(j, common_part(j));
                    if (!within(h_uv, double(m) * (n - 1) * k) ||
                        !within(h_vu, m * std::log2(double(n))) || !within(i_uv, double(m) * k) ||
                        !within(i_c, double(m) * k)) {
                        detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                 " m=" + std::to_string(m);
                        return false;
                    }
                }
        return true;
    });

    criterion(2, "smooth min-entropy closed form 1 - log2(1-eps)", [](std::string& detail) {
        const auto ot = make_ot_randomness(1, 2, 1, 1);
        for (const Rational& eps : {Rational(1, 10), Rational(1, 4)}) {
            const double got = smooth_min_entropy(ot.randomness(), eps).value;
            const double want = 1.0 - std::log2(1.0 - to_double(eps));
            if (!within(got, want)) {
                detail = "eps=" + format_rational(eps) + " got " + std::to_string(got);
                return false;
            }
        }
        return true;
    });

    criterion(3, "smooth optimizers match the LP/enumeration oracle (200+)", [](std::string& detail) {
        const int bad = props::optimizer_vs_oracle(200, 424242);
        if (bad) detail = std::to_string(bad) + " mismatches";
        return bad == 0;
    });

    criterion(4, "entropy lemma property suite, 500 instances each", [](std::string& detail) {
        const std::uint64_t seed = 99991;
        struct Check {
            const char* name;
            int bad;
        };
        const Check checks[] = {
            {"chain", props::chain_rule(500, seed)},
            {"mono-H", props::monotonicity_shannon(500, seed)},
            {"mono-I", props::monotonicity_mutual_info(500, seed)},
            {"averaging", props::averaging(500, seed)},
            {"markov-H", props::markov_shannon(500, seed)},
            {"markov-I", props::markov_mutual_info(500, seed)},
            {"continuity", props::lemma1_continuity(500, seed)},
            {"fano", props::fano(500, seed)},
            {"h-concavity", props::h_concavity(0, 0)},
            {"subadditivity", props::subadditivity_max(500, seed)},
            {"smooth-mono", props::smooth_monotonicity(500, seed)},
            {"smooth-chain", props::smooth_chain(500, seed)},
            {"data-processing", props::smooth_data_processing(500, seed)},
        };
        for (const auto& c : checks)
            if (c.bad) {
                detail = std::string(c.name) + ": " + std::to_string(c.bad) + " violations";
                return false;
            }
        return true;
    });

    criterion(5, "extension needs eps >= 1/14; OT(1,4,1) rate is 3", [](std::string& detail) {
        for (int m : {1, 2, 5}) {
            ReductionParams ext;
            ext.M = m + 1;
            ext.m = m;
            ext.N = ext.n = 2;
            ext.K = ext.k = 1;
            ext.eps = 0.0;
            const ReductionCheck rc = check_ot_reduction(ext);
            if (rc.overall != Verdict::violated || !rc.min_feasible_eps ||
                !within(*rc.min_feasible_eps, 1.0 / 14)) {
                detail = "extension m=" + std::to_string(m);
                return false;
            }
        }
        ReductionParams quad;
        quad.M = 1;
        quad.N = 4;
        quad.K = 1;
        quad.m = 3;
        quad.n = 2;
        quad.k = 1;
        quad.eps = 0.0;
        const BoundReport rate = rate_bound_main2(quad);
        if (!within(rate.required, 3.0) || rate.verdict != Verdict::satisfiable ||
            !within(rate.slack, 0.0)) {
            detail = "rate report off";
            return false;
        }
        return true;
    });

    criterion(6, "OT(1,2,2) from Rabin(1/2,k) violated for k <= 8 at eps=1/5", [](std::string& detail) {
        for (int k = 2; k <= 8; ++k) {
            const auto rabin = make_rabin_randomness(Rational(1, 2), k);
            const ReductionCheck rc = check_general_reduction(2, 2, 1, rabin, Rational(1, 5));
            bool hmin_violated = false;
            for (const auto& r : rc.reports)
                if (r.name.rfind("H_min", 0) == 0 && r.verdict == Verdict::violated)
                    hmin_violated = true;
            if (!hmin_violated || rc.overall != Verdict::violated) {
                detail = "k=" + std::to_string(k);
                return false;
            }
        }
        return true;
    });

    criterion(7, "protocol exactness under exhaustive enumeration", [](std::string& detail) {
        const auto check = [&](const ProtocolBundle& b, int expect_ots) {
            if (b.program.resource_instances != expect_ots) {
                detail = b.program.name + ": OT call count";
                return false;
            }
            const SecurityReport rep = verify_security(b);
            if (rep.correctness_error != 0 || rep.alice_distance != 0 || rep.bob_distance != 0) {
                detail = b.program.name + ": correctness " + format_rational(rep.correctness_error) +
                         ", simA " + format_rational(rep.alice_distance) + ", simB " +
                         format_rational(rep.bob_distance);
                return false;
            }
            return true;
        };
        return check(derandomize_ot(2, 1), 1) && check(and_share_from_2ot(), 2) &&
               check(eq_from_ot(2), 2) && check(eq_from_ot(3), 4) && check(ip_from_ot(3), 3) &&
               check(ip_from_ot(4), 4);
    });

    criterion(8, "eq-amplify one-sided error <= 2^-8 + 3 sigma at 1e5 trials", [](std::string& detail) {
        const int k = 8;
        const ProtocolBundle b = eq_amplify(8, k);
        const std::uint64_t trials = 100000;
        // equal inputs: always accepted
        const SampledRun eq_run = run_sampled(b.program, b.resource, "10110100", "10110100", 2000, 7);
        if (eq_run.out_b_counts.count("0")) {
            detail = "equal inputs rejected";
            return false;
        }
        const SampledRun run = run_sampled(b.program, b.resource, "10110100", "10110101", trials, 7);
        const auto it = run.out_b_counts.find("1");
        const double freq = it == run.out_b_counts.end() ? 0.0 : double(it->second) / double(trials);
        const double p = std::ldexp(1.0, -k);
        const double sigma = std::sqrt(p * (1 - p) / double(trials));
        if (freq > p + 3 * sigma) {
            detail = "false-accept frequency " + std::to_string(freq);
            return false;
        }
        return true;
    });

    criterion(9, "multi-commitment soundness and honest completeness", [](std::string& detail) {
        Rng rng(4242);
        McomSession session(McomResource::sample(8, 8, rng));
        session.commit(random_bits(8, rng));
        for (const auto& T : {std::vector<std::size_t>{}, std::vector<std::size_t>{1, 3},
                              std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}}) {
            if (!session.verify(session.honest_open(T)).accepted) {
                detail = "honest open rejected";
                return false;
            }
        }
        const Rational acc = mcom_flip_attack_acceptance(8, 8, 3, 77);
        if (acc > Rational(1, 16)) {  // 2^{-kappa/2} at kappa = 8
            detail = "flip attack accepted with probability " + format_rational(acc);
            return false;
        }
        return true;
    });

    criterion(10, "EPR sessions: 1e4 honest runs correct, engines agree", [](std::string& detail) {
        // exact agreement of the two engines on all four basis pairs
        for (int ta = 0; ta < 2; ++ta)
            for (int tb = 0; tb < 2; ++tb) {
                const auto probs = pair_outcome_probs(epr_pair(), ta, tb);
                for (int a = 0; a < 2; ++a)
                    for (int bo = 0; bo < 2; ++bo) {
                        const double expect = ta == tb ? (a == bo ? 0.5 : 0.0) : 0.25;
                        if (std::abs(probs[2 * a + bo] - expect) > 1e-9) {
                            detail = "Born probabilities diverge from the fast path";
                            return false;
                        }
                    }
            }
        SessionConfig cfg;  // defaults m=256, kappa=16, alpha=1/4, k=8
        cfg.use_density_engine = true;
        for (std::uint64_t t = 0; t < 10000; ++t) {
            Rng rng(derive_seed(123456, 40, t));
            const auto r = honest_run(cfg, static_cast<int>(t & 1), rng);
            if (!r.passed || !r.correct) {
                detail = "session " + std::to_string(t) + (r.passed ? " incorrect" : " aborted");
                return false;
            }
        }
        return true;
    });

    criterion(11, "sampling lemma families stay below the bound at 1e5 trials",
              [](std::string& detail) {
                  for (const auto fam :
                       {StringFamily::all_ones, StringFamily::half_dense,
                        StringFamily::block_concentrated, StringFamily::random_string}) {
                      const auto r = sampling_check(fam, 8, 32, Rational(1, 4), 0.1, 100000, 5150);
                      if (r.empirical > r.bound) {
                          detail = std::string(r.family) + ": " + std::to_string(r.empirical) + " > " +
                                   std::to_string(r.bound);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(12, "quantum bounds and the reversed-OT rate violation", [](std::string& detail) {
        if (!within(imposs1_min_error(5), 1.0 / 1152)) {
            detail = "imposs1(5)";
            return false;
        }
        for (int m : {1, 10, 100})
            if (!within(quantum_extension_min_error(m), 1.0 / (1500.0 * m))) {
                detail = "extension chain m=" + std::to_string(m);
                return false;
            }
        const auto rep = reverse_ot_demo(4096, 16, 2026);
        if (!rep.mcom_accepted || !rep.correct) {
            detail = "reverse demo not correct";
            return false;
        }
        if (rep.violation_factor < 4096.0 / 16.0) {
            detail = "violation factor " + std::to_string(rep.violation_factor);
            return false;
        }
        return true;
    });

    std::printf("%s: %d/12 criteria passed\n", g_failures == 0 ? "OK" : "FAILED", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
