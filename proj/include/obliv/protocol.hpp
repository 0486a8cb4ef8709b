#pragma once

// Round-based semi-honest two-party execution with exact-distribution and
// sampled modes.
//
// A protocol runs over m independent instances of a distributed-randomness
// primitive P_UV handed out up front (u parts to Alice, v parts to Bob).
// Messages alternate starting with Alice; the round count is fixed for every
// execution (empty rounds are legal padding). A party's message is a
// deterministic function of its input, its resource parts, all prior messages
// and its private coins, so a transcript is determined by (inputs, u, v, rA,
// rB) and exact mode is plain enumeration.
//
// Security is checked against Definition-style simulators: candidate
// randomized functions S_A(x, out_A) and S_B(y, out_B) whose output
// distributions over packed view labels are compared against the real views,
// maximized over all inputs. Simulators ship with each protocol; nothing here
// searches for them.

#include "obliv/dist.hpp"
#include "obliv/primitives.hpp"
#include "obliv/rng.hpp"
#include "obliv/tuple_dist.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace obliv {

struct StepCtx {
    int round = 0;  // 1-based; odd rounds are Alice's
    std::string_view input;
    std::string_view coins;
    const std::vector<std::string>& resource_parts;  // this party's per-instance labels
    const std::vector<std::string>& messages;        // m_1 .. m_{round-1}
};

/// A private-coin space; enumerable (exact mode) and/or samplable.
struct CoinSpace {
    std::uint64_t count = 1;  // 0 = not enumerable (sampled mode only)
    std::function<std::string(std::uint64_t)> label = [](std::uint64_t) { return std::string(); };
    std::function<std::string(Rng&)> sample;

    std::string draw(Rng& rng) const {
        if (sample) return sample(rng);
        if (count == 0) throw_domain("coin space is neither enumerable nor samplable");
        return label(count == 1 ? 0 : rng.below(count));
    }
};

struct ProtocolProgram {
    std::string name;
    int rounds = 0;
    int resource_instances = 0;
    std::vector<std::string> alice_inputs, bob_inputs;
    CoinSpace alice_coins, bob_coins;
    std::function<std::string(const StepCtx&)> alice_step, bob_step;
    std::function<std::string(const StepCtx&)> alice_output, bob_output;
};

struct Transcript {
    std::string x, y;                    // inputs
    std::vector<std::string> u, v;       // per-instance resource parts
    std::vector<std::string> messages;   // m_1 .. m_t, Alice first
    std::string out_a, out_b;
    std::string r_a, r_b;                // private coins
};

inline std::string join_labels(const std::vector<std::string>& parts, char sep = '|') {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/// Canonical packing of a view (x, u, m_1..m_t, r); simulators must emit
/// exactly this shape.
inline std::string pack_view(std::string_view input, const std::vector<std::string>& resource_parts,
                             const std::vector<std::string>& messages, std::string_view coins) {
    std::string out;
    out.reserve(64);
    out += input;
    out += '#';
    out += join_labels(resource_parts);
    out += '#';
    out += join_labels(messages, '/');
    out += '#';
    out += coins;
    return out;
}

inline Transcript execute(const ProtocolProgram& p, std::string_view x, std::string_view y,
                          std::vector<std::string> u, std::vector<std::string> v, std::string r_a,
                          std::string r_b) {
    Transcript t;
    t.x = std::string(x);
    t.y = std::string(y);
    t.u = std::move(u);
    t.v = std::move(v);
    t.r_a = std::move(r_a);
    t.r_b = std::move(r_b);
    for (int round = 1; round <= p.rounds; ++round) {
        const bool alice = round % 2 == 1;
        StepCtx ctx{round, alice ? t.x : t.y, alice ? t.r_a : t.r_b, alice ? t.u : t.v, t.messages};
        t.messages.push_back(alice ? p.alice_step(ctx) : p.bob_step(ctx));
    }
    StepCtx actx{p.rounds + 1, t.x, t.r_a, t.u, t.messages};
    StepCtx bctx{p.rounds + 1, t.y, t.r_b, t.v, t.messages};
    t.out_a = p.alice_output ? p.alice_output(actx) : std::string();
    t.out_b = p.bob_output ? p.bob_output(bctx) : std::string();
    return t;
}

struct WeightedTranscript {
    Transcript transcript;
    Rational p;
};

struct ExactRun {
    std::vector<WeightedTranscript> transcripts;

    JointDist view_a_with_out_b() const {
        std::vector<std::tuple<std::string, std::string, Rational>> entries;
        entries.reserve(transcripts.size());
        for (const auto& wt : transcripts)
            entries.emplace_back(pack_view(wt.transcript.x, wt.transcript.u, wt.transcript.messages,
                                           wt.transcript.r_a),
                                 wt.transcript.out_b, wt.p);
        return joint_from_labeled(entries);
    }

    JointDist out_b_with_view_b() const {
        std::vector<std::tuple<std::string, std::string, Rational>> entries;
        entries.reserve(transcripts.size());
        for (const auto& wt : transcripts)
            entries.emplace_back(wt.transcript.out_b,
                                 pack_view(wt.transcript.y, wt.transcript.v, wt.transcript.messages,
                                           wt.transcript.r_b),
                                 wt.p);
        return joint_from_labeled(entries);
    }

    /// Exact distribution over (out_A, out_B).
    std::map<std::pair<std::string, std::string>, Rational> output_pairs() const {
        std::map<std::pair<std::string, std::string>, Rational> out;
        for (const auto& wt : transcripts) out[{wt.transcript.out_a, wt.transcript.out_b}] += wt.p;
        return out;
    }
};

/// Exact enumeration over resource outputs and private coins for one input
/// pair. The resource is `count` independent copies of the base primitive.
inline ExactRun run_exact(const ProtocolProgram& p, const PrimitiveSpec& base, std::string_view x,
                          std::string_view y, std::uint64_t atom_budget = kDefaultAtomBudget) {
    const JointDist& r = base.randomness();
    const int count = p.resource_instances;
    if (p.alice_coins.count == 0 || p.bob_coins.count == 0)
        throw_budget("AlphabetOverflow: coin space is not enumerable; use run_sampled");
    double size = double(p.alice_coins.count) * double(p.bob_coins.count);
    for (int i = 0; i < count; ++i) size *= double(r.atoms().size());
    if (size > double(atom_budget)) throw_budget("AlphabetOverflow: exact enumeration exceeds atom budget");

    ExactRun out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(count), 0);
    std::vector<std::string> u(static_cast<std::size_t>(count)), v(static_cast<std::size_t>(count));
    const auto atoms = r.atoms();
    while (true) {
        Rational pr = 1;
        for (int i = 0; i < count; ++i) {
            const auto& a = atoms[idx[i]];
            u[i] = r.x_alphabet().label(a.x);
            v[i] = r.y_alphabet().label(a.y);
            pr *= a.p;
        }
        for (std::uint64_t ca = 0; ca < p.alice_coins.count; ++ca) {
            for (std::uint64_t cb = 0; cb < p.bob_coins.count; ++cb) {
                const Rational pc = pr / (Rational(p.alice_coins.count) * p.bob_coins.count);
                out.transcripts.push_back(WeightedTranscript{
                    execute(p, x, y, u, v, p.alice_coins.label(ca), p.bob_coins.label(cb)), pc});
            }
        }
        // odometer over resource atoms
        int pos = count - 1;
        while (pos >= 0 && ++idx[pos] == atoms.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

struct SampledRun {
    std::uint64_t trials = 0;
    std::map<std::string, std::uint64_t> out_a_counts;
    std::map<std::string, std::uint64_t> out_b_counts;
    Transcript first;  // transcript of trial 0, for determinism checks
};

/// Monte Carlo execution; trial i is driven by derive_seed(seed, 1, i), so
/// results are independent of scheduling and reproducible.
inline SampledRun run_sampled(const ProtocolProgram& p, const PrimitiveSpec& base, std::string_view x,
                              std::string_view y, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw_domain("run_sampled: trials >= 1");
    const JointDist& r = base.randomness();
    std::vector<Rational> weights;
    weights.reserve(r.atoms().size());
    for (const auto& a : r.atoms()) weights.push_back(a.p);

    SampledRun out;
    out.trials = trials;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, 1, trial));
        std::vector<std::string> u, v;
        u.reserve(p.resource_instances);
        v.reserve(p.resource_instances);
        for (int i = 0; i < p.resource_instances; ++i) {
            const auto& a = r.atoms()[rng.weighted(weights)];
            u.push_back(r.x_alphabet().label(a.x));
            v.push_back(r.y_alphabet().label(a.y));
        }
        Transcript t = execute(p, x, y, std::move(u), std::move(v), p.alice_coins.draw(rng),
                               p.bob_coins.draw(rng));
        ++out.out_a_counts[t.out_a];
        ++out.out_b_counts[t.out_b];
        if (trial == 0) out.first = std::move(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Security verification
// ---------------------------------------------------------------------------

struct OutputAtom {
    std::string out_a, out_b;
    Rational p;
};

/// Exact ideal output-pair distribution for inputs (x, y). One-sided
/// deterministic functions return a single atom with out_a empty.
using Functionality = std::function<std::vector<OutputAtom>(std::string_view, std::string_view)>;

struct WeightedLabel {
    std::string label;
    Rational p;
};
using SimDist = std::vector<WeightedLabel>;

/// S_A(x, out_A) and S_B(y, out_B) as exact distributions over packed views.
struct Simulators {
    std::function<SimDist(std::string_view, std::string_view)> alice;
    std::function<SimDist(std::string_view, std::string_view)> bob;
};

struct SecurityReport {
    Rational correctness_error;   // max_x,y D(real outputs, ideal outputs)
    Rational alice_distance;      // max_x,y D((View_A, Out_B), (S_A(x, out_A), out_B))
    Rational bob_distance;        // max_x,y D((Out_B, View_B), (out_B, S_B(y, out_B)))
};

namespace detail {

// order-independent accumulation; half-L1 of the signed difference
using DiffMap = std::unordered_map<std::string, Rational>;

inline Rational half_l1(const DiffMap& diff) {
    Rational sum = 0;
    for (const auto& [k, d] : diff) sum += d < 0 ? -d : d;
    return sum / 2;
}

}  // namespace detail

/// A bundled protocol: program, base resource, ideal functionality and the
/// canonical simulators.
struct ProtocolBundle {
    ProtocolProgram program;
    PrimitiveSpec resource;
    Functionality ideal;
    Simulators sims;
};

inline SecurityReport verify_security(const ProtocolBundle& b,
                                      std::uint64_t atom_budget = kDefaultAtomBudget) {
    SecurityReport rep{Rational(0), Rational(0), Rational(0)};
    for (const auto& x : b.program.alice_inputs) {
        for (const auto& y : b.program.bob_inputs) {
            const ExactRun run = run_exact(b.program, b.resource, x, y, atom_budget);
            const auto ideal = b.ideal(x, y);

            // correctness: outputs as a pair distribution
            detail::DiffMap out_diff;
            for (const auto& [pair, pr] : run.output_pairs())
                out_diff[pair.first + "\x1f" + pair.second] += pr;
            for (const auto& oa : ideal) out_diff[oa.out_a + "\x1f" + oa.out_b] -= oa.p;
            rep.correctness_error = std::max(rep.correctness_error, detail::half_l1(out_diff));

            // Alice: (View_A, Out_B) vs (S_A(x, out_a), out_b)
            detail::DiffMap a_diff;
            for (const auto& wt : run.transcripts)
                a_diff[pack_view(wt.transcript.x, wt.transcript.u, wt.transcript.messages,
                                 wt.transcript.r_a) +
                       "\x1f" + wt.transcript.out_b] += wt.p;
            for (const auto& oa : ideal)
                for (const auto& wl : b.sims.alice(x, oa.out_a))
                    a_diff[wl.label + "\x1f" + oa.out_b] -= oa.p * wl.p;
            rep.alice_distance = std::max(rep.alice_distance, detail::half_l1(a_diff));

            // Bob: (Out_B, View_B) vs (out_b, S_B(y, out_b))
            detail::DiffMap b_diff;
            for (const auto& wt : run.transcripts)
                b_diff[wt.transcript.out_b + "\x1f" +
                       pack_view(wt.transcript.y, wt.transcript.v, wt.transcript.messages,
                                 wt.transcript.r_b)] += wt.p;
            for (const auto& oa : ideal)
                for (const auto& wl : b.sims.bob(y, oa.out_b))
                    b_diff[oa.out_b + "\x1f" + wl.label] -= oa.p * wl.p;
            rep.bob_distance = std::max(rep.bob_distance, detail::half_l1(b_diff));
        }
    }
    return rep;
}

}  // namespace obliv
