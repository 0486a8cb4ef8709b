#pragma once

// The classical protocols: precomputed (derandomized) OT, the two-OT AND
// share gadget, EQ_k from 2(k-1) bit-OTs, the amplified equality test, and
// IP_n from n bit-OTs. Each ships with its ideal functionality and canonical
// simulators, so the framework never searches for a simulator.
//
// All of them consume randomized OT(1,2,1) (or OT(1,n,k)) handed out as
// distributed randomness; an OT "call" inside a protocol is the standard
// precomputed-OT exchange: the receiver announces the shift d = c - c0 mod n,
// the sender announces e_i = in_i xor u_{(i+d) mod n}, and the receiver
// outputs e_c xor w.

#include "obliv/protocol.hpp"

#include <cassert>
#include <string>
#include <vector>

namespace obliv {

inline std::string xor_bits(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) throw_domain("xor_bits: length mismatch");
    std::string out(a.size(), '0');
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] == b[i] ? '0' : '1';
    return out;
}

inline int bit_at(std::string_view s, std::size_t i) { return s[i] == '1'; }

/// "c=2;w=0110" -> (2, "0110")
inline std::pair<int, std::string> parse_ot_v(std::string_view label) {
    const auto semi = label.find(';');
    if (label.substr(0, 2) != "c=" || semi == std::string_view::npos ||
        label.substr(semi + 1, 2) != "w=")
        throw_parse("malformed OT receiver label: " + std::string(label));
    const int c = std::stoi(std::string(label.substr(2, semi - 2)));
    return {c, std::string(label.substr(semi + 3))};
}

namespace bitot {

// one precomputed OT(1,2,1) call
inline int d(int choice, int c0) { return choice ^ c0; }
inline std::pair<int, int> e(int in0, int in1, int dd, int u0, int u1) {
    return {in0 ^ (dd ? u1 : u0), in1 ^ (dd ? u0 : u1)};  // e_i = in_i ^ u_{(i+d) mod 2}
}
inline int z(int choice, int e0, int e1, int w) { return (choice ? e1 : e0) ^ w; }

}  // namespace bitot

namespace detail {

/// Consumes bit fields from an enumeration index, LSB first.
struct BitReader {
    std::uint64_t v;
    std::uint64_t take(int bits) {
        const std::uint64_t r = v & ((std::uint64_t(1) << bits) - 1);
        v >>= bits;
        return r;
    }
};

inline std::vector<std::string> all_bit_labels(int width) {
    std::vector<std::string> out;
    out.reserve(std::size_t(1) << width);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << width); ++v) out.push_back(bits_label(v, width));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Derandomized OT(1,n,k)
// ---------------------------------------------------------------------------

/// One instance of OT(1,n,k) from its distributed randomness. Perfectly
/// correct, and both views are perfectly simulatable.
inline ProtocolBundle derandomize_ot(int n, int k) {
    if (n < 2 || k < 1 || n * k > 16) throw_domain("derandomize_ot: need n >= 2, k >= 1, nk <= 16");
    ProtocolBundle b;
    b.resource = make_ot_randomness(1, n, k, 1);
    b.program.name = "derand-ot(" + std::to_string(n) + "," + std::to_string(k) + ")";
    b.program.rounds = 3;
    b.program.resource_instances = 1;
    b.program.alice_inputs = detail::all_bit_labels(n * k);
    for (int c = 0; c < n; ++c) b.program.bob_inputs.push_back(std::to_string(c));

    b.program.alice_step = [n, k](const StepCtx& ctx) -> std::string {
        if (ctx.round == 1) return "";
        // round 3: e_i = x_i xor u_{(i-d) mod n}, so that e_c decrypts under u_{c0}
        const int d = std::stoi(ctx.messages[1].substr(2));
        const std::string& u = ctx.resource_parts[0];
        std::string e;
        e.reserve(std::size_t(n) * k);
        for (int i = 0; i < n; ++i) {
            const int src = ((i - d) % n + n) % n;
            e += xor_bits(ctx.input.substr(std::size_t(i) * k, k), std::string_view(u).substr(std::size_t(src) * k, k));
        }
        return "e=" + e;
    };
    b.program.bob_step = [n](const StepCtx& ctx) -> std::string {
        const int c = std::stoi(std::string(ctx.input));
        const auto [c0, w] = parse_ot_v(ctx.resource_parts[0]);
        return "d=" + std::to_string(((c - c0) % n + n) % n);
    };
    b.program.bob_output = [n, k](const StepCtx& ctx) -> std::string {
        const int c = std::stoi(std::string(ctx.input));
        const auto [c0, w] = parse_ot_v(ctx.resource_parts[0]);
        const std::string_view e = std::string_view(ctx.messages[2]).substr(2);
        return xor_bits(e.substr(std::size_t(c) * k, k), w);
    };
    b.ideal = [k](std::string_view x, std::string_view y) {
        const int c = std::stoi(std::string(y));
        return std::vector<OutputAtom>{{"", std::string(x.substr(std::size_t(c) * k, k)), Rational(1)}};
    };

    b.sims.alice = [n, k](std::string_view x, std::string_view) {
        SimDist out;
        const std::uint64_t nu = std::uint64_t(1) << (n * k);
        const Rational p(1, BigInt(nu) * n);
        for (std::uint64_t uv = 0; uv < nu; ++uv) {
            const std::string u = bits_label(uv, n * k);
            for (int d = 0; d < n; ++d) {
                std::string e;
                for (int i = 0; i < n; ++i)
                    e += xor_bits(x.substr(std::size_t(i) * k, k),
                                  std::string_view(u).substr(std::size_t(((i - d) % n + n) % n) * k, k));
                out.push_back({pack_view(x, {u}, {"", "d=" + std::to_string(d), "e=" + e}, ""), p});
            }
        }
        return out;
    };
    b.sims.bob = [n, k](std::string_view y, std::string_view z) {
        SimDist out;
        const int c = std::stoi(std::string(y));
        const std::uint64_t rest = std::uint64_t(1) << ((n - 1) * k);
        const Rational p(1, BigInt(n) * (std::uint64_t(1) << k) * rest);
        for (int c0 = 0; c0 < n; ++c0) {
            for (std::uint64_t wv = 0; wv < (std::uint64_t(1) << k); ++wv) {
                const std::string w = bits_label(wv, k);
                const std::string v = "c=" + std::to_string(c0) + ";w=" + w;
                const int d = ((c - c0) % n + n) % n;
                for (std::uint64_t ov = 0; ov < rest; ++ov) {
                    const std::string others = bits_label(ov, (n - 1) * k);
                    std::string e;
                    std::size_t oi = 0;
                    for (int i = 0; i < n; ++i) {
                        if (i == c) {
                            e += xor_bits(z, w);
                        } else {
                            e += others.substr(oi, k);
                            oi += k;
                        }
                    }
                    out.push_back({pack_view(y, {v}, {"", "d=" + std::to_string(d), "e=" + e}, ""), p});
                }
            }
        }
        return out;
    };
    return b;
}

// ---------------------------------------------------------------------------
// AND-share gadget and the EQ chain
// ---------------------------------------------------------------------------

namespace detail {

struct GadgetMsgs {
    // message text for one gadget round pair
    static std::string d_msg(int d1, int d2) {
        return std::string("d=") + char('0' + d1) + char('0' + d2);
    }
    static std::string e_msg(std::pair<int, int> e1, std::pair<int, int> e2) {
        std::string s = "e=";
        s += char('0' + e1.first);
        s += char('0' + e1.second);
        s += char('0' + e2.first);
        s += char('0' + e2.second);
        return s;
    }
};

}  // namespace detail

/// Additive shares of (x1 xor y1) and (x2 xor y2) from two bit-OTs; no
/// messages beyond the two OT calls.
inline ProtocolBundle and_share_from_2ot() {
    ProtocolBundle b;
    b.resource = make_ot_randomness(1, 2, 1, 1);
    b.program.name = "and-share";
    b.program.rounds = 3;
    b.program.resource_instances = 2;
    b.program.alice_inputs = detail::all_bit_labels(2);
    b.program.bob_inputs = detail::all_bit_labels(2);
    b.program.alice_coins.count = 4;
    b.program.alice_coins.label = [](std::uint64_t i) { return bits_label(i, 2); };

    b.program.alice_step = [](const StepCtx& ctx) -> std::string {
        if (ctx.round == 1) return "";
        const int x1 = bit_at(ctx.input, 0), x2 = bit_at(ctx.input, 1);
        const int r1 = bit_at(ctx.coins, 0), r2 = bit_at(ctx.coins, 1);
        const std::string& d = ctx.messages[1];
        const std::string& u1 = ctx.resource_parts[0];
        const std::string& u2 = ctx.resource_parts[1];
        const auto e1 = bitot::e(r1, r1 ^ x1, d[2] - '0', u1[0] - '0', u1[1] - '0');
        const auto e2 = bitot::e(r2, r2 ^ x2, d[3] - '0', u2[0] - '0', u2[1] - '0');
        return detail::GadgetMsgs::e_msg(e1, e2);
    };
    b.program.bob_step = [](const StepCtx& ctx) -> std::string {
        const int y1 = bit_at(ctx.input, 0), y2 = bit_at(ctx.input, 1);
        const auto [c01, w1] = parse_ot_v(ctx.resource_parts[0]);
        const auto [c02, w2] = parse_ot_v(ctx.resource_parts[1]);
        return detail::GadgetMsgs::d_msg(bitot::d(y2, c01), bitot::d(y1, c02));
    };
    b.program.alice_output = [](const StepCtx& ctx) -> std::string {
        const int x1 = bit_at(ctx.input, 0), x2 = bit_at(ctx.input, 1);
        const int r1 = bit_at(ctx.coins, 0), r2 = bit_at(ctx.coins, 1);
        return std::string(1, char('0' + (r1 ^ r2 ^ (x1 & x2))));
    };
    b.program.bob_output = [](const StepCtx& ctx) -> std::string {
        const int y1 = bit_at(ctx.input, 0), y2 = bit_at(ctx.input, 1);
        const std::string& e = ctx.messages[2];
        const auto [c01, w1] = parse_ot_v(ctx.resource_parts[0]);
        const auto [c02, w2] = parse_ot_v(ctx.resource_parts[1]);
        const int z1 = bitot::z(y2, e[2] - '0', e[3] - '0', w1[0] - '0');
        const int z2 = bitot::z(y1, e[4] - '0', e[5] - '0', w2[0] - '0');
        return std::string(1, char('0' + (z1 ^ z2 ^ (y1 & y2))));
    };
    b.ideal = [](std::string_view x, std::string_view y) {
        const int out = (bit_at(x, 0) ^ bit_at(y, 0)) & (bit_at(x, 1) ^ bit_at(y, 1));
        return std::vector<OutputAtom>{{"0", std::string(1, char('0' + out)), Rational(1, 2)},
                                       {"1", std::string(1, char('0' + (out ^ 1))), Rational(1, 2)}};
    };

    b.sims.alice = [](std::string_view x, std::string_view out_a) {
        SimDist out;
        const int x1 = bit_at(x, 0), x2 = bit_at(x, 1);
        const int a = out_a[0] - '0';
        const Rational p(1, 128);
        for (std::uint64_t idx = 0; idx < 128; ++idx) {
            detail::BitReader br{idx};
            const int r1 = int(br.take(1));
            const int r2 = a ^ r1 ^ (x1 & x2);
            const std::uint64_t u1v = br.take(2), u2v = br.take(2);
            const int d1 = int(br.take(1)), d2 = int(br.take(1));
            const std::string u1 = bits_label(u1v, 2), u2 = bits_label(u2v, 2);
            const auto e1 = bitot::e(r1, r1 ^ x1, d1, u1[0] - '0', u1[1] - '0');
            const auto e2 = bitot::e(r2, r2 ^ x2, d2, u2[0] - '0', u2[1] - '0');
            out.push_back({pack_view(x, {u1, u2},
                                     {"", detail::GadgetMsgs::d_msg(d1, d2),
                                      detail::GadgetMsgs::e_msg(e1, e2)},
                                     bits_label(std::uint64_t(r1) << 1 | r2, 2)),
                           p});
        }
        return out;
    };
    b.sims.bob = [](std::string_view y, std::string_view out_b) {
        SimDist out;
        const int y1 = bit_at(y, 0), y2 = bit_at(y, 1);
        const int bb = out_b[0] - '0';
        const Rational p(1, 128);
        for (std::uint64_t idx = 0; idx < 128; ++idx) {
            detail::BitReader br{idx};
            const int z1 = int(br.take(1));
            const int z2 = bb ^ z1 ^ (y1 & y2);
            const int c01 = int(br.take(1)), w1 = int(br.take(1)), eo1 = int(br.take(1));
            const int c02 = int(br.take(1)), w2 = int(br.take(1)), eo2 = int(br.take(1));
            const int d1 = bitot::d(y2, c01), d2 = bitot::d(y1, c02);
            std::pair<int, int> e1, e2;
            (y2 ? e1.second : e1.first) = z1 ^ w1;
            (y2 ? e1.first : e1.second) = eo1;
            (y1 ? e2.second : e2.first) = z2 ^ w2;
            (y1 ? e2.first : e2.second) = eo2;
            const std::string v1 = "c=" + std::to_string(c01) + ";w=" + std::to_string(w1);
            const std::string v2 = "c=" + std::to_string(c02) + ";w=" + std::to_string(w2);
            out.push_back({pack_view(y, {v1, v2},
                                     {"", detail::GadgetMsgs::d_msg(d1, d2),
                                      detail::GadgetMsgs::e_msg(e1, e2)},
                                     ""),
                           p});
        }
        return out;
    };
    return b;
}

namespace detail {

/// Builds the EQ chain program over literal vectors supplied by callbacks, so
/// eq_from_ot and eq_amplify share one engine. The chain computes shares of
/// AND_j not(p_j xor q_j) through k-1 AND gadgets; Alice's last message
/// carries her final share.
struct EqChainSpec {
    int k = 2;                 // literal count
    int first_gadget_round = 2;  // Bob's d message for gadget 1
    // literal extractors: p(input, messages) for Alice, q for Bob
    std::function<std::string(std::string_view, const std::vector<std::string>&)> alice_literals;
    std::function<std::string(std::string_view, const std::vector<std::string>&)> bob_literals;
    // gadget coins live in coin bits [coin_offset, coin_offset + 2(k-1))
    int coin_offset = 0;
};

inline std::string eq_chain_alice_step(const EqChainSpec& spec, const StepCtx& ctx) {
    const int round = ctx.round;
    const int j = (round - 1) / 2;  // gadget index 1..k-1 for rounds 3,5,..
    if (round % 2 == 0 || j < 1) return "";
    const std::string p = spec.alice_literals(ctx.input, ctx.messages);
    // replay alice shares up to gadget j
    int a = bit_at(p, 0) ^ 1;
    std::pair<int, int> e1{0, 0}, e2{0, 0};
    for (int g = 1; g <= j; ++g) {
        const int r1 = bit_at(ctx.coins, spec.coin_offset + 2 * (g - 1));
        const int r2 = bit_at(ctx.coins, spec.coin_offset + 2 * (g - 1) + 1);
        const int p1 = a, p2 = bit_at(p, g) ^ 1;
        const std::string& d = ctx.messages[2 * g - 1 + (spec.first_gadget_round - 2)];
        const std::string& u1 = ctx.resource_parts[2 * (g - 1)];
        const std::string& u2 = ctx.resource_parts[2 * (g - 1) + 1];
        e1 = bitot::e(r1, r1 ^ p1, d[2] - '0', u1[0] - '0', u1[1] - '0');
        e2 = bitot::e(r2, r2 ^ p2, d[3] - '0', u2[0] - '0', u2[1] - '0');
        a = r1 ^ r2 ^ (p1 & p2);
    }
    std::string msg = GadgetMsgs::e_msg(e1, e2);
    if (j == spec.k - 1) msg += ";a=" + std::string(1, char('0' + a));
    return msg;
}

inline std::string eq_chain_bob_step(const EqChainSpec& spec, const StepCtx& ctx) {
    const int round = ctx.round;
    if (round % 2 == 1) return "";
    const int j = round / 2 - (spec.first_gadget_round / 2 - 1);  // gadget index
    if (j < 1) return "";
    const std::string q = spec.bob_literals(ctx.input, ctx.messages);
    // replay bob shares through gadget j-1 to get q1 for gadget j
    int b = bit_at(q, 0);
    for (int g = 1; g < j; ++g) {
        const int q1 = b, q2 = bit_at(q, g);
        const std::string& e = ctx.messages[2 * g + (spec.first_gadget_round - 2)];
        const auto [c01, w1] = parse_ot_v(ctx.resource_parts[2 * (g - 1)]);
        const auto [c02, w2] = parse_ot_v(ctx.resource_parts[2 * (g - 1) + 1]);
        const int z1 = bitot::z(q2, e[2] - '0', e[3] - '0', w1[0] - '0');
        const int z2 = bitot::z(q1, e[4] - '0', e[5] - '0', w2[0] - '0');
        b = z1 ^ z2 ^ (q1 & q2);
    }
    const int q1 = b, q2 = bit_at(q, j);
    const auto [c01, w1] = parse_ot_v(ctx.resource_parts[2 * (j - 1)]);
    const auto [c02, w2] = parse_ot_v(ctx.resource_parts[2 * (j - 1) + 1]);
    return GadgetMsgs::d_msg(bitot::d(q2, c01), bitot::d(q1, c02));
}

inline std::string eq_chain_bob_output(const EqChainSpec& spec, const StepCtx& ctx) {
    const std::string q = spec.bob_literals(ctx.input, ctx.messages);
    int b = bit_at(q, 0);
    for (int g = 1; g <= spec.k - 1; ++g) {
        const int q1 = b, q2 = bit_at(q, g);
        const std::string& e = ctx.messages[2 * g + (spec.first_gadget_round - 2)];
        const auto [c01, w1] = parse_ot_v(ctx.resource_parts[2 * (g - 1)]);
        const auto [c02, w2] = parse_ot_v(ctx.resource_parts[2 * (g - 1) + 1]);
        const int z1 = bitot::z(q2, e[2] - '0', e[3] - '0', w1[0] - '0');
        const int z2 = bitot::z(q1, e[4] - '0', e[5] - '0', w2[0] - '0');
        b = z1 ^ z2 ^ (q1 & q2);
    }
    const std::string& last = ctx.messages.back();
    const int a = last[last.find(";a=") + 3] - '0';
    return std::string(1, char('0' + (a ^ b)));
}

}  // namespace detail

/// One-sided EQ_k to Bob from exactly 2(k-1) bit-OTs; perfectly correct.
inline ProtocolBundle eq_from_ot(int k) {
    if (k < 2 || k > 6) throw_domain("eq_from_ot: k in [2,6]");
    ProtocolBundle b;
    b.resource = make_ot_randomness(1, 2, 1, 1);
    b.program.name = "eq-from-ot(" + std::to_string(k) + ")";
    b.program.rounds = 2 * k - 1;
    b.program.resource_instances = 2 * (k - 1);
    b.program.alice_inputs = detail::all_bit_labels(k);
    b.program.bob_inputs = detail::all_bit_labels(k);
    b.program.alice_coins.count = std::uint64_t(1) << (2 * (k - 1));
    b.program.alice_coins.label = [k](std::uint64_t i) { return bits_label(i, 2 * (k - 1)); };

    detail::EqChainSpec spec;
    spec.k = k;
    spec.alice_literals = [](std::string_view x, const std::vector<std::string>&) { return std::string(x); };
    spec.bob_literals = [](std::string_view y, const std::vector<std::string>&) { return std::string(y); };

    b.program.alice_step = [spec](const StepCtx& ctx) { return detail::eq_chain_alice_step(spec, ctx); };
    b.program.bob_step = [spec](const StepCtx& ctx) { return detail::eq_chain_bob_step(spec, ctx); };
    b.program.bob_output = [spec](const StepCtx& ctx) { return detail::eq_chain_bob_output(spec, ctx); };
    b.ideal = [](std::string_view x, std::string_view y) {
        return std::vector<OutputAtom>{{"", x == y ? "1" : "0", Rational(1)}};
    };

    b.sims.alice = [k, spec](std::string_view x, std::string_view) {
        // u's, d's and coins are uniform and independent of Bob's side
        SimDist out;
        const int g = k - 1;
        const std::uint64_t total = std::uint64_t(1) << (2 * g + 4 * g + 2 * g);
        const Rational p(1, BigInt(1) << (8 * g));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            detail::BitReader br{idx};
            const std::uint64_t coins = br.take(2 * g);
            const std::string r = bits_label(coins, 2 * g);
            std::vector<std::string> u(2 * g);
            for (int i = 0; i < 2 * g; ++i) u[i] = bits_label(br.take(2), 2);
            std::vector<std::string> msgs{""};
            int a = bit_at(x, 0) ^ 1;
            for (int gi = 1; gi <= g; ++gi) {
                const int d1 = int(br.take(1)), d2 = int(br.take(1));
                msgs.push_back(detail::GadgetMsgs::d_msg(d1, d2));
                const int r1 = bit_at(r, 2 * (gi - 1)), r2 = bit_at(r, 2 * (gi - 1) + 1);
                const int p1 = a, p2 = bit_at(x, gi) ^ 1;
                const auto e1 = bitot::e(r1, r1 ^ p1, d1, u[2 * (gi - 1)][0] - '0', u[2 * (gi - 1)][1] - '0');
                const auto e2 =
                    bitot::e(r2, r2 ^ p2, d2, u[2 * (gi - 1) + 1][0] - '0', u[2 * (gi - 1) + 1][1] - '0');
                a = r1 ^ r2 ^ (p1 & p2);
                std::string msg = detail::GadgetMsgs::e_msg(e1, e2);
                if (gi == g) msg += ";a=" + std::string(1, char('0' + a));
                msgs.push_back(msg);
            }
            out.push_back({pack_view(x, u, msgs, r), p});
        }
        return out;
    };
    b.sims.bob = [k](std::string_view y, std::string_view out_b) {
        // per OT: v = (c0, w) uniform, z uniform (fresh mask), the unseen e
        // component uniform; the final share is forced by the output
        SimDist out;
        const int g = k - 1;
        const std::uint64_t total = std::uint64_t(1) << (8 * g);
        const Rational p(1, BigInt(1) << (8 * g));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            detail::BitReader br{idx};
            std::vector<std::string> v(2 * g);
            std::vector<int> c0(2 * g), w(2 * g), zz(2 * g), eo(2 * g);
            for (int i = 0; i < 2 * g; ++i) {
                c0[i] = int(br.take(1));
                w[i] = int(br.take(1));
                zz[i] = int(br.take(1));
                eo[i] = int(br.take(1));
                v[i] = "c=" + std::to_string(c0[i]) + ";w=" + std::to_string(w[i]);
            }
            std::vector<std::string> msgs{""};
            int b_share = bit_at(y, 0);
            for (int gi = 1; gi <= g; ++gi) {
                const int q1 = b_share, q2 = bit_at(y, gi);
                const int i1 = 2 * (gi - 1), i2 = 2 * (gi - 1) + 1;
                msgs.push_back(detail::GadgetMsgs::d_msg(bitot::d(q2, c0[i1]), bitot::d(q1, c0[i2])));
                std::pair<int, int> e1, e2;
                (q2 ? e1.second : e1.first) = zz[i1] ^ w[i1];
                (q2 ? e1.first : e1.second) = eo[i1];
                (q1 ? e2.second : e2.first) = zz[i2] ^ w[i2];
                (q1 ? e2.first : e2.second) = eo[i2];
                b_share = zz[i1] ^ zz[i2] ^ (q1 & q2);
                std::string msg = detail::GadgetMsgs::e_msg(e1, e2);
                if (gi == g) msg += ";a=" + std::string(1, char('0' + (b_share ^ (out_b[0] - '0'))));
                msgs.push_back(msg);
            }
            out.push_back({pack_view(y, v, msgs, ""), p});
        }
        return out;
    };
    return b;
}

/// Equality with amplification: Alice samples k random n-bit strings, both
/// parties reduce to the k inner-product bits and run the EQ chain. Equal
/// inputs always accept; unequal inputs accept with probability <= 2^-k.
/// Sampled mode only (the coin space is not enumerable).
inline ProtocolBundle eq_amplify(int n, int k) {
    if (n < 1 || n > 32 || k < 2 || k > 16) throw_domain("eq_amplify: n in [1,32], k in [2,16]");
    ProtocolBundle b;
    b.resource = make_ot_randomness(1, 2, 1, 1);
    b.program.name = "eq-amplify(" + std::to_string(n) + "," + std::to_string(k) + ")";
    b.program.rounds = 2 * k - 1;
    b.program.resource_instances = 2 * (k - 1);
    b.program.alice_inputs = n <= 8 ? detail::all_bit_labels(n) : std::vector<std::string>{};
    b.program.bob_inputs = b.program.alice_inputs;
    b.program.alice_coins.count = 0;  // not enumerable
    b.program.alice_coins.sample = [n, k](Rng& rng) {
        std::string bits;
        bits.reserve(std::size_t(n) * k + 2 * (k - 1));
        for (int i = 0; i < n * k + 2 * (k - 1); ++i) bits += rng.coin() ? '1' : '0';
        return bits;
    };

    const auto ip_literals = [n, k](std::string_view input, std::string_view rho) {
        std::string lits(k, '0');
        for (int i = 0; i < k; ++i) {
            int acc = 0;
            for (int j = 0; j < n; ++j) acc ^= bit_at(input, j) & bit_at(rho, std::size_t(i) * n + j);
            lits[i] = char('0' + acc);
        }
        return lits;
    };

    detail::EqChainSpec spec;
    spec.k = k;
    spec.coin_offset = n * k;
    spec.alice_literals = [ip_literals](std::string_view x, const std::vector<std::string>& msgs) {
        return ip_literals(x, std::string_view(msgs[0]).substr(4));
    };
    spec.bob_literals = spec.alice_literals;

    b.program.alice_step = [spec, n, k](const StepCtx& ctx) -> std::string {
        if (ctx.round == 1) return "rho=" + std::string(ctx.coins.substr(0, std::size_t(n) * k));
        return detail::eq_chain_alice_step(spec, ctx);
    };
    b.program.bob_step = [spec](const StepCtx& ctx) { return detail::eq_chain_bob_step(spec, ctx); };
    b.program.bob_output = [spec](const StepCtx& ctx) { return detail::eq_chain_bob_output(spec, ctx); };
    b.ideal = [](std::string_view x, std::string_view y) {
        return std::vector<OutputAtom>{{"", x == y ? "1" : "0", Rational(1)}};
    };
    return b;
}

// ---------------------------------------------------------------------------
// IP_n from n bit-OTs
// ---------------------------------------------------------------------------

/// Perfectly secure inner product: Alice masks with shares of zero, Bob's
/// outputs are uniform subject to XORing to IP_n(x,y).
inline ProtocolBundle ip_from_ot(int n) {
    if (n < 2 || n > 8) throw_domain("ip_from_ot: n in [2,8]");
    ProtocolBundle b;
    b.resource = make_ot_randomness(1, 2, 1, 1);
    b.program.name = "ip-from-ot(" + std::to_string(n) + ")";
    b.program.rounds = 3;
    b.program.resource_instances = n;
    b.program.alice_inputs = detail::all_bit_labels(n);
    b.program.bob_inputs = detail::all_bit_labels(n);
    b.program.alice_coins.count = std::uint64_t(1) << (n - 1);
    b.program.alice_coins.label = [n](std::uint64_t i) { return bits_label(i, n - 1); };

    const auto r_bit = [n](std::string_view coins, int i) {
        if (i < n - 1) return bit_at(coins, i);
        int acc = 0;
        for (int j = 0; j < n - 1; ++j) acc ^= bit_at(coins, j);
        return acc;  // r_n = xor of the others
    };

    b.program.alice_step = [n, r_bit](const StepCtx& ctx) -> std::string {
        if (ctx.round == 1) return "";
        std::string e = "e=";
        for (int i = 0; i < n; ++i) {
            const int ri = r_bit(ctx.coins, i);
            const int xi = bit_at(ctx.input, i);
            const std::string& u = ctx.resource_parts[i];
            const auto ei = bitot::e(ri, ri ^ xi, ctx.messages[1][2 + i] - '0', u[0] - '0', u[1] - '0');
            e += char('0' + ei.first);
            e += char('0' + ei.second);
        }
        return e;
    };
    b.program.bob_step = [n](const StepCtx& ctx) -> std::string {
        std::string d = "d=";
        for (int i = 0; i < n; ++i) {
            const auto [c0, w] = parse_ot_v(ctx.resource_parts[i]);
            d += char('0' + bitot::d(bit_at(ctx.input, i), c0));
        }
        return d;
    };
    b.program.bob_output = [n](const StepCtx& ctx) -> std::string {
        int acc = 0;
        for (int i = 0; i < n; ++i) {
            const auto [c0, w] = parse_ot_v(ctx.resource_parts[i]);
            const std::string& e = ctx.messages[2];
            acc ^= bitot::z(bit_at(ctx.input, i), e[2 + 2 * i] - '0', e[3 + 2 * i] - '0', w[0] - '0');
        }
        return std::string(1, char('0' + acc));
    };
    b.ideal = [n](std::string_view x, std::string_view y) {
        int acc = 0;
        for (int i = 0; i < n; ++i) acc ^= bit_at(x, i) & bit_at(y, i);
        return std::vector<OutputAtom>{{"", std::string(1, char('0' + acc)), Rational(1)}};
    };

    b.sims.alice = [n, r_bit](std::string_view x, std::string_view) {
        SimDist out;
        const std::uint64_t total = std::uint64_t(1) << (n - 1 + 2 * n + n);
        const Rational p(1, BigInt(1) << (n - 1 + 2 * n + n));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            detail::BitReader br{idx};
            const std::string coins = bits_label(br.take(n - 1), n - 1);
            std::vector<std::string> u(n);
            for (int i = 0; i < n; ++i) u[i] = bits_label(br.take(2), 2);
            std::string dmsg = "d=", emsg = "e=";
            for (int i = 0; i < n; ++i) {
                const int di = int(br.take(1));
                dmsg += char('0' + di);
                const int ri = r_bit(coins, i);
                const auto ei = bitot::e(ri, ri ^ bit_at(x, i), di, u[i][0] - '0', u[i][1] - '0');
                emsg += char('0' + ei.first);
                emsg += char('0' + ei.second);
            }
            out.push_back({pack_view(x, u, {"", dmsg, emsg}, coins), p});
        }
        return out;
    };
    b.sims.bob = [n](std::string_view y, std::string_view out_b) {
        SimDist out;
        const std::uint64_t total = std::uint64_t(1) << (n - 1 + 2 * n + n);
        const Rational p(1, BigInt(1) << (n - 1 + 2 * n + n));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            detail::BitReader br{idx};
            std::vector<int> z(n);
            int acc = 0;
            for (int i = 0; i < n - 1; ++i) {
                z[i] = int(br.take(1));
                acc ^= z[i];
            }
            z[n - 1] = acc ^ (out_b[0] - '0');
            std::vector<std::string> v(n);
            std::string dmsg = "d=", emsg = "e=";
            for (int i = 0; i < n; ++i) {
                const int c0 = int(br.take(1)), w = int(br.take(1)), eo = int(br.take(1));
                v[i] = "c=" + std::to_string(c0) + ";w=" + std::to_string(w);
                dmsg += char('0' + bitot::d(bit_at(y, i), c0));
                std::pair<int, int> ei;
                (bit_at(y, i) ? ei.second : ei.first) = z[i] ^ w;
                (bit_at(y, i) ? ei.first : ei.second) = eo;
                emsg += char('0' + ei.first);
                emsg += char('0' + ei.second);
            }
            out.push_back({pack_view(y, v, {"", dmsg, emsg}, ""), p});
        }
        return out;
    };
    return b;
}

}  // namespace obliv
