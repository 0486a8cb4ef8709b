// Batch front end: entropy measures, reduction checking, bound evaluators,
// protocol simulation, the EPR-session runner and the sampling-lemma check.
// All randomness flows from --seed through the counter-based derivation in
// rng.hpp; output is byte-identical for identical (command, seed) except for
// the trailing wall-time field.

#include "obliv/bb84.hpp"
#include "obliv/bounds.hpp"
#include "obliv/dist_io.hpp"
#include "obliv/protocols.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;
using namespace obliv;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void render_text(const ordered_json& j, const std::string& indent, std::ostream& os) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            os << indent << key << ":\n";
            render_text(value, indent + "  ", os);
        } else if (value.is_array()) {
            os << indent << key << ":\n";
            int idx = 0;
            for (const auto& item : value) {
                if (item.is_object()) {
                    os << indent << "  [" << idx << "]\n";
                    render_text(item, indent + "    ", os);
                } else {
                    os << indent << "  - " << item.dump() << "\n";
                }
                ++idx;
            }
        } else if (value.is_number_float()) {
            os << indent << key << ": " << fmt_double(value.get<double>()) << "\n";
        } else if (value.is_string()) {
            os << indent << key << ": " << value.get<std::string>() << "\n";
        } else {
            os << indent << key << ": " << value.dump() << "\n";
        }
    }
}

struct Report {
    ordered_json body;

    Report(const std::string& command, std::uint64_t seed) {
        body["command"] = command;
        body["version"] = kVersion;
        body["seed"] = seed;
        body["results"] = ordered_json::object();
    }
    ordered_json& results() { return body["results"]; }

    void emit(bool structured, double wall_ms) {
        body["wall_ms"] = wall_ms;
        if (structured) {
            std::cout << body.dump(2) << "\n";
        } else {
            ordered_json head = body;
            head.erase("wall_ms");
            render_text(head, "", std::cout);
            std::cout << "wall_ms: " << fmt_double(wall_ms) << "\n";
        }
    }
};

ordered_json report_json(const BoundReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["required"] = r.required;
    if (r.measured) j["measured"] = *r.measured;
    j["slack"] = r.slack;
    j["verdict"] = verdict_name(r.verdict);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

PrimitiveSpec load_primitive(const std::string& ref, bool subnormalized) {
    if (ref.rfind("file:", 0) == 0) {
        PrimitiveSpec spec;
        spec.name = ref;
        spec.body = load_joint_file(ref.substr(5), subnormalized).to_joint();
        return spec;
    }
    return parse_primitive(ref);
}

struct OtRef {
    int t, n, k, m;
};

OtRef parse_ot_ref(const std::string& ref) {
    if (ref.rfind("ot:", 0) != 0) throw_parse("expected an ot:t,n,k,m reference, got " + ref);
    int vals[4];
    int i = 0;
    std::string cur;
    for (char c : ref.substr(3)) {
        if (c == ',') {
            if (i >= 3) throw_parse("ot reference needs exactly four parameters");
            vals[i++] = std::stoi(cur);
            cur.clear();
        } else
            cur += c;
    }
    if (i != 3 || cur.empty()) throw_parse("ot reference needs exactly four parameters");
    vals[3] = std::stoi(cur);
    return {vals[0], vals[1], vals[2], vals[3]};
}

// ---------------------------------------------------------------------------

void cmd_entropy(Report& rep, const std::string& prim_ref, bool all, bool shannon_f,
                 bool shannon_rev, bool mutual_f, bool mutual_common, bool min_f, bool max_f,
                 const std::string& smooth_min_eps, const std::string& smooth_max_eps,
                 const std::string& dump_path, bool subnormalized) {
    PrimitiveSpec prim = load_primitive(prim_ref, subnormalized);
    const JointDist& j = prim.randomness();
    auto& out = rep.results();
    out["primitive"] = prim.name;
    out["atoms"] = j.atoms().size();
    if (all || shannon_f) out["H(U|V)"] = shannon_cond(j);
    if (all || shannon_rev) out["H(V|U)"] = shannon_cond(transpose(j));
    if (all || mutual_f) out["I(U;V)"] = mutual_info(j);
    if (all || mutual_common) out["I(U;V|C)"] = mutual_info_given_common(j, common_part(j));
    if (all || min_f) out["Hmin(U|V)"] = min_entropy_cond(j);
    if (all || max_f) out["Hmax(U|V)"] = max_entropy_cond(j);
    if (!smooth_min_eps.empty()) {
        const Rational eps = parse_rational(smooth_min_eps);
        out["Hmin^eps(U|V)"] = smooth_min_entropy(j, eps).value;
        out["smooth_min_eps"] = format_rational(eps);
    }
    if (!smooth_max_eps.empty()) {
        const Rational eps = parse_rational(smooth_max_eps);
        out["Hmax^eps(U|V)"] = smooth_max_entropy(j, eps).value;
        out["smooth_max_eps"] = format_rational(eps);
    }
    if (!dump_path.empty()) {
        dump_joint_file(j, dump_path);
        out["dumped"] = dump_path;
    }
}

void cmd_check_reduction(Report& rep, const std::string& target, const std::string& resource,
                         const std::string& eps_str) {
    const Rational eps = parse_rational_or_decimal(eps_str);
    const OtRef tgt = parse_ot_ref(target);
    if (tgt.t != 1) throw_parse("check-reduction targets OT with t=1");
    auto& out = rep.results();
    out["target"] = target;
    out["resource"] = resource;
    out["eps"] = to_double(eps);
    ReductionCheck rc;
    if (resource.rfind("ot:", 0) == 0) {
        const OtRef res = parse_ot_ref(resource);
        if (res.t != 1) throw_parse("check-reduction resources use t=1");
        ReductionParams p;
        p.M = tgt.m;
        p.N = tgt.n;
        p.K = tgt.k;
        p.m = res.m;
        p.n = res.n;
        p.k = res.k;
        p.eps = to_double(eps);
        rc = check_ot_reduction(p);
    } else {
        PrimitiveSpec prim = load_primitive(resource, false);
        rc = check_general_reduction(tgt.n, tgt.k, tgt.m, prim, eps);
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : rc.reports) arr.push_back(report_json(r));
    out["bounds"] = arr;
    out["overall"] = verdict_name(rc.overall);
    if (rc.min_feasible_eps) out["min_feasible_eps"] = *rc.min_feasible_eps;
}

void cmd_bound(Report& rep, const std::string& name, int n, int k, int m, int kappa, int q,
               const Rational& eps_rat, const Rational& eps_prime, const Rational& alpha, int N,
               int K, int M) {
    const double eps = to_double(eps_rat);
    auto& out = rep.results();
    out["bound"] = name;
    const auto push = [&](const BoundReport& r) {
        if (!out.contains("reports")) out["reports"] = ordered_json::array();
        out["reports"].push_back(report_json(r));
    };
    if (name == "thm-impossibility") {
        for (const auto& r : thm_impossibility_bounds(n, k, m, eps)) push(r);
    } else if (name == "main2") {
        ReductionParams p{M, N, K, m, n, k, eps};
        push(rate_bound_main2(p));
    } else if (name == "ot-imposs") {
        ReductionParams p{M, N, K, m, n, k, eps};
        push(minentropy_feasibility(p));
        if (auto me = min_feasible_eps(p)) out["min_feasible_eps"] = *me;
    } else if (name == "eq") {
        push(eq_bound(k, eps));
    } else if (name == "ip") {
        push(ip_bound(n, eps));
    } else if (name == "olfe") {
        for (const auto& r : olfe_bound(q, m, eps)) push(r);
    } else if (name == "malicious-transfer") {
        out["semi_honest_error"] = malicious_transfer(eps, n);
    } else if (name == "mal-bound") {
        PrimitiveSpec leak = make_leaky_ot_randomness(alpha);
        PrimitiveSpec prod = leak;
        if (n > 1) prod.body = product_power(leak.randomness(), n);
        for (const auto& r : malicious_bounds(prod, k, eps_rat)) push(r);
        out["note"] = "leaky-OT(alpha) resource, n copies, target length k";
    } else if (name == "imposs1") {
        out["min_error"] = imposs1_min_error(kappa);
    } else if (name == "imposs-com-bits") {
        push(imposs_com_bits(k, eps));
    } else if (name == "imposs-com-count") {
        push(imposs_com_count(eps));
    } else if (name == "imposs-rand") {
        push(imposs_rand(k, eps));
    } else if (name == "imposs4") {
        push(imposs4(k, eps, n > 0 ? std::optional<int>(n) : std::nullopt));
    } else if (name == "hmin-general") {
        const auto target = make_ot_function(1, N, K);
        PrimitiveSpec resource = make_ot_randomness(1, n, k, m);
        push(general_Hmin_bound(target, resource, eps_rat, eps_prime));
    } else if (name == "quantum-extension") {
        out["min_error"] = quantum_extension_min_error(m);
    } else {
        throw_parse("unknown bound '" + name + "'");
    }
}

ProtocolBundle make_protocol(const std::string& name, int n, int k) {
    if (name == "derand-ot") return derandomize_ot(n, k);
    if (name == "and-share") return and_share_from_2ot();
    if (name == "eq") return eq_from_ot(k);
    if (name == "eq-amplify") return eq_amplify(n, k);
    if (name == "ip") return ip_from_ot(n);
    throw_parse("unknown protocol '" + name + "'");
}

void cmd_simulate(Report& rep, const std::string& protocol, const std::string& mode,
                  std::uint64_t trials, std::uint64_t seed, int n, int k, int kappa,
                  std::string x_in, std::string y_in, const std::string& dump_views) {
    auto& out = rep.results();
    out["protocol"] = protocol;

    if (protocol == "mcom") {
        Rng rng(derive_seed(seed, 20, 0));
        McomSession session(McomResource::sample(static_cast<std::size_t>(k), kappa, rng));
        session.commit(random_bits(static_cast<std::size_t>(k), rng));
        std::vector<std::size_t> all(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        out["honest_open_accepted"] = session.verify(session.honest_open(all)).accepted;
        const Rational acc = mcom_flip_attack_acceptance(static_cast<std::size_t>(k), kappa, 0, seed);
        out["flip_attack_acceptance"] = format_rational(acc);
        out["flip_attack_acceptance_value"] = to_double(acc);
        out["soundness_bound_2^-kappa/2"] = std::ldexp(1.0, -kappa / 2);
        return;
    }
    if (protocol == "reverse-ot") {
        const auto r = reverse_ot_demo(k, kappa, seed);
        out["kappa_resource_ots"] = r.kappa;
        out["resource_string_len"] = r.resource_string_len;
        out["k_prime"] = r.k_prime;
        out["m_pairs"] = r.m_pairs;
        out["mcom_accepted"] = r.mcom_accepted;
        out["correct"] = r.correct;
        out["classical_required_instances"] = r.classical_required_instances;
        out["violation_factor"] = r.violation_factor;
        out["eval_security_bound"] = r.eval_security_bound;
        out["verdict"] = r.verdict;
        return;
    }

    ProtocolBundle b = make_protocol(protocol, n, k);
    out["rounds"] = b.program.rounds;
    out["ot_calls"] = b.program.resource_instances;
    if (mode == "exact") {
        const SecurityReport sec = verify_security(b);
        out["correctness_error"] = format_rational(sec.correctness_error);
        out["alice_sim_distance"] = format_rational(sec.alice_distance);
        out["bob_sim_distance"] = format_rational(sec.bob_distance);
        if (!dump_views.empty()) {
            // exact view tables for one input pair, in the table file format
            const std::string x = x_in.empty() ? b.program.alice_inputs.front() : x_in;
            const std::string y = y_in.empty() ? b.program.bob_inputs.front() : y_in;
            const ExactRun run = run_exact(b.program, b.resource, x, y);
            dump_joint_file(run.view_a_with_out_b(), dump_views + ".viewA.json");
            dump_joint_file(run.out_b_with_view_b(), dump_views + ".viewB.json");
            out["dumped_views_for"] = x + " / " + y;
            out["dumped_views"] = dump_views + ".viewA.json, " + dump_views + ".viewB.json";
        }
    } else if (mode == "sampled") {
        if (x_in.empty()) x_in = b.program.alice_inputs.empty() ? std::string(static_cast<std::size_t>(n), '0') : b.program.alice_inputs.front();
        if (y_in.empty()) y_in = b.program.bob_inputs.empty() ? std::string(static_cast<std::size_t>(n), '0') : b.program.bob_inputs.back();
        const SampledRun run = run_sampled(b.program, b.resource, x_in, y_in, trials, seed);
        out["x"] = x_in;
        out["y"] = y_in;
        out["trials"] = run.trials;
        ordered_json counts = ordered_json::object();
        for (const auto& [label, c] : run.out_b_counts) counts[label.empty() ? "-" : label] = c;
        out["out_b_counts"] = counts;
        const auto ideal = b.ideal(x_in, y_in);
        if (ideal.size() == 1) {
            const auto it = run.out_b_counts.find(ideal[0].out_b);
            const std::uint64_t good = it == run.out_b_counts.end() ? 0 : it->second;
            out["correct_frequency"] = double(good) / double(run.trials);
        }
    } else {
        throw_parse("mode must be exact or sampled");
    }
}

void cmd_bb84(Report& rep, long m, int kappa, const std::string& alpha_str, int k,
              const std::string& strategy, std::uint64_t trials, std::uint64_t seed,
              const std::string& engine) {
    SessionConfig cfg;
    cfg.m = m;
    cfg.kappa = kappa;
    cfg.alpha = parse_rational_or_decimal(alpha_str);
    cfg.k = k;
    cfg.use_density_engine = engine == "density";
    cfg.validate();
    auto& out = rep.results();
    out["m"] = m;
    out["kappa"] = kappa;
    out["alpha"] = alpha_str;
    out["k"] = k;
    out["strategy"] = strategy;
    out["engine"] = engine;
    out["trials"] = trials;
    if (strategy == "honest") {
        std::uint64_t correct = 0, passed = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(seed, 30, t));
            const auto r = honest_run(cfg, static_cast<int>(t & 1), rng);
            passed += r.passed;
            correct += r.correct;
        }
        out["pass_frequency"] = double(passed) / double(trials);
        out["correct_frequency"] = double(correct) / double(trials);
    } else {
        const AdversaryStrategy strat = strategy == "fixed-basis"
                                            ? AdversaryStrategy::fixed_basis
                                            : AdversaryStrategy::no_measure_random_commit;
        if (strategy != "fixed-basis" && strategy != "no-measure")
            throw_parse("strategy must be honest, fixed-basis or no-measure");
        std::uint64_t passed = 0, both = 0, checked = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(seed, 31, t));
            const auto r = adversary_run(cfg, strat, 0, rng);
            passed += r.passed;
            both += r.passed && r.guessed_both;
            checked += r.checked_matching;
        }
        out["pass_frequency"] = double(passed) / double(trials);
        out["guess_both_given_pass"] = passed ? double(both) / double(passed) : 0.0;
        out["mean_checked_matching"] = double(checked) / double(trials);
        out["security_bound"] =
            security_bound_eval(m, kappa, to_double(cfg.alpha), k, 1.0 / 20, 1.0 / 20);
    }
}

void cmd_sample_lemma(Report& rep, int b, int kappa, const std::string& alpha_str, double delta,
                      std::uint64_t trials, std::uint64_t seed, const std::string& family) {
    const Rational alpha = parse_rational_or_decimal(alpha_str);
    auto& out = rep.results();
    out["b"] = b;
    out["kappa"] = kappa;
    out["alpha"] = alpha_str;
    out["delta"] = delta;
    out["trials"] = trials;
    std::vector<StringFamily> fams;
    if (family == "all") {
        fams = {StringFamily::all_zeros, StringFamily::all_ones, StringFamily::half_dense,
                StringFamily::block_concentrated, StringFamily::random_string};
    } else {
        const std::map<std::string, StringFamily> names{
            {"all-zeros", StringFamily::all_zeros},
            {"all-ones", StringFamily::all_ones},
            {"half-dense", StringFamily::half_dense},
            {"block-concentrated", StringFamily::block_concentrated},
            {"random", StringFamily::random_string}};
        const auto it = names.find(family);
        if (it == names.end()) throw_parse("unknown family '" + family + "'");
        fams.push_back(it->second);
    }
    ordered_json arr = ordered_json::array();
    for (const auto f : fams) {
        const auto r = sampling_check(f, b, kappa, alpha, delta, trials, seed);
        ordered_json j;
        j["family"] = r.family;
        j["failures"] = r.failures;
        j["empirical"] = r.empirical;
        j["bound"] = r.bound;
        j["within_bound"] = r.empirical <= r.bound;
        arr.push_back(j);
    }
    out["families"] = arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"information-theoretic OT reduction toolkit"};
    app.require_subcommand(1);

    bool structured = false;
    std::uint64_t seed = 0;
    app.add_flag("--format-structured,--structured", structured,
                 "emit the report as a structured object");
    std::string format = "text";
    app.add_option("--format", format, "text|structured");
    app.add_option("--seed", seed, "root seed for all randomness");

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy measures of a primitive");
    std::string prim_ref, smin_eps, smax_eps, dump_path;
    bool all = false, f_sh = false, f_shr = false, f_mi = false, f_mic = false, f_min = false,
         f_max = false, subnorm = false;
    entropy_cmd->add_option("primitive", prim_ref, "ot:t,n,k,m | rabin:p,k | olfe:q,m | leaky-ot:a | file:PATH")
        ->required();
    entropy_cmd->add_flag("--all", all);
    entropy_cmd->add_flag("--shannon", f_sh);
    entropy_cmd->add_flag("--shannon-reverse", f_shr);
    entropy_cmd->add_flag("--mutual", f_mi);
    entropy_cmd->add_flag("--mutual-common", f_mic);
    entropy_cmd->add_flag("--min", f_min);
    entropy_cmd->add_flag("--max", f_max);
    entropy_cmd->add_option("--smooth-min", smin_eps, "smoothing parameter (rational)");
    entropy_cmd->add_option("--smooth-max", smax_eps, "smoothing parameter (rational)");
    entropy_cmd->add_option("--dump", dump_path, "write the table to a file");
    entropy_cmd->add_flag("--subnormalized", subnorm);

    // check-reduction
    auto* check_cmd = app.add_subcommand("check-reduction", "evaluate all bounds for a reduction");
    std::string target, resource, eps_str = "0";
    check_cmd->add_option("--target", target, "ot:1,N,K,M")->required();
    check_cmd->add_option("--resource", resource, "primitive reference")->required();
    check_cmd->add_option("--eps", eps_str, "error (rational)");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "evaluate one named bound");
    std::string bound_name, beps = "0", beps_prime = "0", balpha = "1";
    int bn = 2, bk = 1, bm = 1, bkappa = 1, bq = 2, bN = 2, bK = 1, bM = 1;
    bound_cmd->add_option("name", bound_name)->required();
    bound_cmd->add_option("--n", bn);
    bound_cmd->add_option("--k", bk);
    bound_cmd->add_option("--m", bm);
    bound_cmd->add_option("--kappa", bkappa);
    bound_cmd->add_option("--q", bq);
    bound_cmd->add_option("--eps", beps, "error (rational or decimal)");
    bound_cmd->add_option("--eps-prime", beps_prime, "secondary smoothing (rational or decimal)");
    bound_cmd->add_option("--alpha", balpha, "leak parameter for mal-bound");
    bound_cmd->add_option("--N", bN);
    bound_cmd->add_option("--K", bK);
    bound_cmd->add_option("--M", bM);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run a protocol");
    std::string protocol, mode = "exact", sim_x, sim_y, sim_dump;
    std::uint64_t trials = 10000;
    int sn = 3, sk = 2, skappa = 8;
    sim_cmd->add_option("protocol", protocol, "derand-ot|and-share|eq|eq-amplify|ip|mcom|reverse-ot")
        ->required();
    sim_cmd->add_option("--mode", mode, "exact|sampled");
    sim_cmd->add_option("--trials", trials);
    sim_cmd->add_option("--n", sn);
    sim_cmd->add_option("--k", sk);
    sim_cmd->add_option("--kappa", skappa);
    sim_cmd->add_option("--x", sim_x);
    sim_cmd->add_option("--y", sim_y);
    sim_cmd->add_option("--dump-views", sim_dump, "file prefix for exact view tables");

    // bb84
    auto* bb_cmd = app.add_subcommand("bb84", "EPR-session runner");
    long qm = 256;
    int qkappa = 16, qk = 8;
    std::string qalpha = "1/4", strategy = "honest", engine = "density";
    std::uint64_t qtrials = 100;
    bb_cmd->add_option("--m", qm);
    bb_cmd->add_option("--kappa", qkappa);
    bb_cmd->add_option("--alpha", qalpha);
    bb_cmd->add_option("--k", qk);
    bb_cmd->add_option("--strategy", strategy, "honest|fixed-basis|no-measure");
    bb_cmd->add_option("--trials", qtrials);
    bb_cmd->add_option("--engine", engine, "density|fast");

    // sample-lemma
    auto* sl_cmd = app.add_subcommand("sample-lemma", "block-sampling failure rates vs bound");
    int lb = 8, lkappa = 32;
    std::string lalpha = "1/4", lfamily = "all";
    double ldelta = 0.1;
    std::uint64_t ltrials = 100000;
    sl_cmd->add_option("--b", lb);
    sl_cmd->add_option("--kappa", lkappa);
    sl_cmd->add_option("--alpha", lalpha);
    sl_cmd->add_option("--delta", ldelta);
    sl_cmd->add_option("--trials", ltrials);
    sl_cmd->add_option("--family", lfamily);

    std::string command_echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command_echo += ' ';
        command_echo += argv[i];
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (format == "structured") structured = true;

    const auto t0 = std::chrono::steady_clock::now();
    Report rep(command_echo, seed);
    try {
        if (*entropy_cmd) {
            const bool any = all || f_sh || f_shr || f_mi || f_mic || f_min || f_max ||
                             !smin_eps.empty() || !smax_eps.empty() || !dump_path.empty();
            cmd_entropy(rep, prim_ref, all || !any, f_sh, f_shr, f_mi, f_mic, f_min, f_max, smin_eps,
                        smax_eps, dump_path, subnorm);
        } else if (*check_cmd) {
            cmd_check_reduction(rep, target, resource, eps_str);
        } else if (*bound_cmd) {
            cmd_bound(rep, bound_name, bn, bk, bm, bkappa, bq, parse_rational_or_decimal(beps),
                      parse_rational_or_decimal(beps_prime), parse_rational_or_decimal(balpha), bN,
                      bK, bM);
        } else if (*sim_cmd) {
            cmd_simulate(rep, protocol, mode, trials, seed, sn, sk, skappa, sim_x, sim_y, sim_dump);
        } else if (*bb_cmd) {
            cmd_bb84(rep, qm, qkappa, qalpha, qk, strategy, qtrials, seed, engine);
        } else if (*sl_cmd) {
            cmd_sample_lemma(rep, lb, lkappa, lalpha, ldelta, ltrials, seed, lfamily);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.emit(structured, wall_ms);
    return 0;
}
