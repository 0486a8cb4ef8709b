#pragma once

// Constructors for the primitives used throughout: OT / Rabin-OT / OLFE /
// leaky-OT as distributed randomness, and EQ / IP / OT / OLFE as one-sided
// function tables, plus the structural checks on function tables that the
// lower bounds require.
//
// Label conventions (also the wire format of the CLI):
//   bit strings           "0110"            (MSB first, fixed width)
//   OT receiver values    "c=0,2;w=0110"    (sorted choice set, received bits)
//   Rabin erasure         "Delta"
//   OLFE values           "a=1,b=2" / "c=0,d=2"
//   leaky OT receiver     "c=0;w=1;leak=0" / "...;leak=none"

#include "obliv/dist.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace obliv {

inline std::string bits_label(std::uint64_t v, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (v >> (width - 1 - i) & 1) s[i] = '1';
    return s;
}

inline std::uint64_t label_bits(std::string_view s) {
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw_parse("not a bit string label");
        v = v << 1 | (c == '1');
    }
    return v;
}

/// All size-t subsets of {0..n-1} as sorted index tuples, lexicographic.
inline std::vector<std::vector<int>> sorted_subsets(int n, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(t);
    const auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == t) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (t - depth); ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::string choice_label(const std::vector<int>& set) {
    std::string s = "c=";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(set[i]);
    }
    return s;
}

/// A deterministic one-sided primitive f: X x Y -> Z as a total table.
struct FunctionTable {
    std::string name;
    Alphabet x_alphabet;
    Alphabet y_alphabet;
    Alphabet z_alphabet;
    std::vector<std::uint32_t> table;  // z index at [x * |Y| + y]

    std::uint32_t z(std::uint32_t x, std::uint32_t y) const {
        return table[std::size_t(x) * y_alphabet.size() + y];
    }
};

/// A named two-party primitive: distributed randomness or a function table.
struct PrimitiveSpec {
    std::string name;
    std::variant<JointDist, FunctionTable> body;

    bool is_randomness() const { return std::holds_alternative<JointDist>(body); }
    const JointDist& randomness() const {
        if (!is_randomness()) throw_domain(name + " is not distributed randomness");
        return std::get<JointDist>(body);
    }
    const FunctionTable& function() const {
        if (is_randomness()) throw_domain("NotAFunction: " + name + " is distributed randomness");
        return std::get<FunctionTable>(body);
    }
};

/// Randomized OT_t^n(k), m-fold: U = (x_0..x_{n-1}) uniform nk-bit strings,
/// V = (c, x|_c) for a uniform size-t choice set c.
inline PrimitiveSpec make_ot_randomness(int t, int n, int k, int m,
                                        std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (t < 1 || t >= n || k < 1 || m < 1) throw_domain("make_ot_randomness: need 1 <= t < n, k >= 1, m >= 1");
    if (n * k > 20) throw_budget("AlphabetOverflow: 2^(nk) alphabet too large");
    const std::uint64_t nu = std::uint64_t(1) << (n * k);
    const auto sets = sorted_subsets(n, t);
    if (nu * sets.size() > atom_budget) throw_budget("AlphabetOverflow: OT table exceeds atom budget");

    Alphabet xa, ya;
    for (std::uint64_t u = 0; u < nu; ++u) xa.intern(bits_label(u, n * k));
    for (const auto& set : sets)
        for (std::uint64_t w = 0; w < (std::uint64_t(1) << (t * k)); ++w)
            ya.intern(choice_label(set) + ";w=" + bits_label(w, t * k));

    const Rational p = Rational(1, BigInt(nu) * BigInt(sets.size()));
    std::vector<JointAtom> atoms;
    atoms.reserve(nu * sets.size());
    for (std::uint64_t u = 0; u < nu; ++u) {
        for (const auto& set : sets) {
            std::uint64_t w = 0;
            for (int idx : set) {
                const std::uint64_t xi = (u >> ((n - 1 - idx) * k)) & ((std::uint64_t(1) << k) - 1);
                w = w << k | xi;
            }
            const auto y = ya.find(choice_label(set) + ";w=" + bits_label(w, t * k));
            atoms.push_back(JointAtom{static_cast<std::uint32_t>(u), *y, p});
        }
    }
    JointDist base(std::move(xa), std::move(ya), std::move(atoms));
    PrimitiveSpec spec;
    spec.name = "ot:" + std::to_string(t) + "," + std::to_string(n) + "," + std::to_string(k) + "," +
                std::to_string(m);
    spec.body = m == 1 ? std::move(base) : product_power(base, m, atom_budget);
    return spec;
}

/// Randomized Rabin-OT(p,k): U uniform k-bit, V = U w.p. p and Delta otherwise.
inline PrimitiveSpec make_rabin_randomness(const Rational& p, int k) {
    if (p < 0 || p > 1) throw_domain("make_rabin_randomness: p outside [0,1]");
    if (k < 1 || k > 20) throw_budget("AlphabetOverflow: rabin k outside [1,20]");
    const std::uint64_t nu = std::uint64_t(1) << k;
    Alphabet xa, ya;
    for (std::uint64_t u = 0; u < nu; ++u) xa.intern(bits_label(u, k));
    for (std::uint64_t u = 0; u < nu; ++u) ya.intern(bits_label(u, k));
    const std::uint32_t delta = ya.intern("Delta");
    std::vector<JointAtom> atoms;
    const Rational pu(1, BigInt(nu));
    for (std::uint32_t u = 0; u < nu; ++u) {
        atoms.push_back(JointAtom{u, u, pu * p});
        atoms.push_back(JointAtom{u, delta, pu * (1 - p)});
    }
    PrimitiveSpec spec;
    spec.name = "rabin:" + format_rational(p) + "," + std::to_string(k);
    spec.body = JointDist(std::move(xa), std::move(ya), std::move(atoms));
    return spec;
}

inline bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

/// Randomized OLFE over GF(q), m-fold: U = (a,b) uniform, V = (c, a + b c).
inline PrimitiveSpec make_olfe_randomness(int q, int m,
                                          std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (!is_prime(q)) throw_domain("NotPrime: OLFE field size must be prime");
    if (m < 1) throw_domain("make_olfe_randomness: m >= 1");
    Alphabet xa, ya;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) xa.intern("a=" + std::to_string(a) + ",b=" + std::to_string(b));
    for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) ya.intern("c=" + std::to_string(c) + ",d=" + std::to_string(d));
    std::vector<JointAtom> atoms;
    const Rational p(1, BigInt(q) * q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                const int d = (a + b * c) % q;
                atoms.push_back(JointAtom{static_cast<std::uint32_t>(a * q + b),
                                          static_cast<std::uint32_t>(c * q + d), p});
            }
    JointDist base(std::move(xa), std::move(ya), std::move(atoms));
    PrimitiveSpec spec;
    spec.name = "olfe:" + std::to_string(q) + "," + std::to_string(m);
    spec.body = m == 1 ? std::move(base) : product_power(base, m, atom_budget);
    return spec;
}

/// Randomized OT(1,2,1) extended with a leak register: V' = X_{1-C} with
/// probability 1 - alpha and V' = bottom otherwise; H(U|VV') = alpha exactly.
inline PrimitiveSpec make_leaky_ot_randomness(const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw_domain("make_leaky_ot_randomness: alpha outside [0,1]");
    Alphabet xa, ya;
    for (std::uint64_t u = 0; u < 4; ++u) xa.intern(bits_label(u, 2));
    for (int c = 0; c < 2; ++c)
        for (int w = 0; w < 2; ++w) {
            const std::string base = "c=" + std::to_string(c) + ";w=" + std::to_string(w);
            ya.intern(base + ";leak=0");
            ya.intern(base + ";leak=1");
            ya.intern(base + ";leak=none");
        }
    std::vector<JointAtom> atoms;
    const Rational p(1, 8);
    for (std::uint32_t u = 0; u < 4; ++u) {
        const int x0 = u >> 1 & 1, x1 = u & 1;
        for (int c = 0; c < 2; ++c) {
            const int w = c == 0 ? x0 : x1;
            const int other = c == 0 ? x1 : x0;
            const std::string base = "c=" + std::to_string(c) + ";w=" + std::to_string(w);
            atoms.push_back(JointAtom{u, *ya.find(base + ";leak=" + std::to_string(other)), p * (1 - alpha)});
            atoms.push_back(JointAtom{u, *ya.find(base + ";leak=none"), p * alpha});
        }
    }
    PrimitiveSpec spec;
    spec.name = "leaky-ot:" + format_rational(alpha);
    spec.body = JointDist(std::move(xa), std::move(ya), std::move(atoms));
    return spec;
}

inline PrimitiveSpec make_eq_function(int n, std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (n < 1 || n > 16) throw_budget("AlphabetOverflow: eq n outside [1,16]");
    const std::uint64_t size = std::uint64_t(1) << n;
    if (size * size > atom_budget) throw_budget("AlphabetOverflow: eq table exceeds atom budget");
    FunctionTable f;
    f.name = "eq:" + std::to_string(n);
    for (std::uint64_t v = 0; v < size; ++v) f.x_alphabet.intern(bits_label(v, n));
    for (std::uint64_t v = 0; v < size; ++v) f.y_alphabet.intern(bits_label(v, n));
    f.z_alphabet.intern("0");
    f.z_alphabet.intern("1");
    f.table.resize(size * size);
    for (std::uint64_t x = 0; x < size; ++x)
        for (std::uint64_t y = 0; y < size; ++y) f.table[x * size + y] = x == y ? 1 : 0;
    return PrimitiveSpec{f.name, std::move(f)};
}

inline PrimitiveSpec make_ip_function(int n, std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (n < 1 || n > 16) throw_budget("AlphabetOverflow: ip n outside [1,16]");
    const std::uint64_t size = std::uint64_t(1) << n;
    if (size * size > atom_budget) throw_budget("AlphabetOverflow: ip table exceeds atom budget");
    FunctionTable f;
    f.name = "ip:" + std::to_string(n);
    for (std::uint64_t v = 0; v < size; ++v) f.x_alphabet.intern(bits_label(v, n));
    for (std::uint64_t v = 0; v < size; ++v) f.y_alphabet.intern(bits_label(v, n));
    f.z_alphabet.intern("0");
    f.z_alphabet.intern("1");
    f.table.resize(size * size);
    for (std::uint64_t x = 0; x < size; ++x)
        for (std::uint64_t y = 0; y < size; ++y) {
            const std::uint64_t prod = x & y;
            f.table[x * size + y] = static_cast<std::uint32_t>(__builtin_popcountll(prod) & 1);
        }
    return PrimitiveSpec{f.name, std::move(f)};
}

/// OT_t^n(k) as a function: f((x_0..x_{n-1}), c) = x|_c.
inline PrimitiveSpec make_ot_function(int t, int n, int k,
                                      std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (t < 1 || t >= n || k < 1) throw_domain("make_ot_function: need 1 <= t < n, k >= 1");
    if (n * k > 20) throw_budget("AlphabetOverflow: 2^(nk) alphabet too large");
    const std::uint64_t nx = std::uint64_t(1) << (n * k);
    const auto sets = sorted_subsets(n, t);
    if (nx * sets.size() > atom_budget) throw_budget("AlphabetOverflow: ot table exceeds atom budget");
    FunctionTable f;
    f.name = "ot-fn:" + std::to_string(t) + "," + std::to_string(n) + "," + std::to_string(k);
    for (std::uint64_t v = 0; v < nx; ++v) f.x_alphabet.intern(bits_label(v, n * k));
    for (const auto& set : sets) f.y_alphabet.intern(choice_label(set));
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << (t * k)); ++w)
        f.z_alphabet.intern(bits_label(w, t * k));
    f.table.resize(nx * sets.size());
    for (std::uint64_t x = 0; x < nx; ++x)
        for (std::size_t s = 0; s < sets.size(); ++s) {
            std::uint64_t w = 0;
            for (int idx : sets[s]) {
                const std::uint64_t xi = (x >> ((n - 1 - idx) * k)) & ((std::uint64_t(1) << k) - 1);
                w = w << k | xi;
            }
            f.table[x * sets.size() + s] = static_cast<std::uint32_t>(w);
        }
    return PrimitiveSpec{f.name, std::move(f)};
}

/// OLFE over GF(q) as a function: f((a,b), c) = a + b c.
inline PrimitiveSpec make_olfe_function(int q) {
    if (!is_prime(q)) throw_domain("NotPrime: OLFE field size must be prime");
    FunctionTable f;
    f.name = "olfe-fn:" + std::to_string(q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) f.x_alphabet.intern("a=" + std::to_string(a) + ",b=" + std::to_string(b));
    for (int c = 0; c < q; ++c) f.y_alphabet.intern(std::to_string(c));
    for (int d = 0; d < q; ++d) f.z_alphabet.intern(std::to_string(d));
    f.table.resize(std::size_t(q) * q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                f.table[std::size_t(a * q + b) * q + c] = static_cast<std::uint32_t>((a + b * c) % q);
    return PrimitiveSpec{f.name, std::move(f)};
}

/// Restriction of f to sub-domains (lower bounds often need this).
inline FunctionTable restrict_function(const FunctionTable& f, const std::vector<std::string>& xs,
                                       const std::vector<std::string>& ys) {
    FunctionTable out;
    out.name = f.name + "|restricted";
    out.z_alphabet = f.z_alphabet;
    std::vector<std::uint32_t> xi, yi;
    for (const auto& l : xs) {
        const auto i = f.x_alphabet.find(l);
        if (!i) throw_domain("restrict_function: unknown x label " + l);
        xi.push_back(*i);
        out.x_alphabet.intern(l);
    }
    for (const auto& l : ys) {
        const auto i = f.y_alphabet.find(l);
        if (!i) throw_domain("restrict_function: unknown y label " + l);
        yi.push_back(*i);
        out.y_alphabet.intern(l);
    }
    out.table.resize(xi.size() * yi.size());
    for (std::size_t x = 0; x < xi.size(); ++x)
        for (std::size_t y = 0; y < yi.size(); ++y) out.table[x * yi.size() + y] = f.z(xi[x], yi[y]);
    return out;
}

/// Condition (12): forall x != x' exists y with f(x,y) != f(x',y).
inline bool check_condition_1(const PrimitiveSpec& prim) {
    const FunctionTable& f = prim.function();
    const std::size_t nx = f.x_alphabet.size(), ny = f.y_alphabet.size();
    for (std::uint32_t x = 0; x < nx; ++x)
        for (std::uint32_t x2 = x + 1; x2 < nx; ++x2) {
            bool separated = false;
            for (std::uint32_t y = 0; y < ny && !separated; ++y) separated = f.z(x, y) != f.z(x2, y);
            if (!separated) return false;
        }
    return true;
}

/// Witness pair for conditions (13)/(14): y1 makes f(.,y1) injective, y2 makes
/// it constant.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> find_y1_y2(const PrimitiveSpec& prim) {
    const FunctionTable& f = prim.function();
    const std::size_t nx = f.x_alphabet.size(), ny = f.y_alphabet.size();
    std::optional<std::uint32_t> y1, y2;
    for (std::uint32_t y = 0; y < ny; ++y) {
        bool injective = true, constant = true;
        std::vector<bool> seen(f.z_alphabet.size(), false);
        for (std::uint32_t x = 0; x < nx; ++x) {
            const auto z = f.z(x, y);
            if (seen[z]) injective = false;
            seen[z] = true;
            if (z != f.z(0, y)) constant = false;
        }
        if (injective && !y1) y1 = y;
        if (constant && !y2) y2 = y;
    }
    if (y1 && y2) return std::make_pair(*y1, *y2);
    return std::nullopt;
}

/// Parses the CLI-addressable primitive names:
///   ot:t,n,k,m | rabin:p,k | olfe:q,m | leaky-ot:alpha | eq:n | ip:n
inline PrimitiveSpec parse_primitive(std::string_view ref,
                                     std::uint64_t atom_budget = kDefaultAtomBudget) {
    const auto colon = ref.find(':');
    if (colon == std::string_view::npos) throw_parse("primitive reference needs 'name:params'");
    const std::string_view name = ref.substr(0, colon);
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : ref.substr(colon + 1)) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        parts.push_back(cur);
    }
    const auto as_int = [](const std::string& s) {
        const Rational r = parse_rational(s);
        if (denominator(r) != 1) throw_parse("expected an integer, got " + s);
        return numerator(r).convert_to<int>();
    };
    if (name == "ot") {
        if (parts.size() != 4) throw_parse("ot needs t,n,k,m");
        return make_ot_randomness(as_int(parts[0]), as_int(parts[1]), as_int(parts[2]), as_int(parts[3]),
                                  atom_budget);
    }
    if (name == "rabin") {
        if (parts.size() != 2) throw_parse("rabin needs p,k");
        return make_rabin_randomness(parse_rational(parts[0]), as_int(parts[1]));
    }
    if (name == "olfe") {
        if (parts.size() != 2) throw_parse("olfe needs q,m");
        return make_olfe_randomness(as_int(parts[0]), as_int(parts[1]), atom_budget);
    }
    if (name == "leaky-ot") {
        if (parts.size() != 1) throw_parse("leaky-ot needs alpha");
        return make_leaky_ot_randomness(parse_rational(parts[0]));
    }
    if (name == "eq") {
        if (parts.size() != 1) throw_parse("eq needs n");
        return make_eq_function(as_int(parts[0]), atom_budget);
    }
    if (name == "ip") {
        if (parts.size() != 1) throw_parse("ip needs n");
        return make_ip_function(as_int(parts[0]), atom_budget);
    }
    throw_parse("unknown primitive '" + std::string(name) + "'");
}

}  // namespace obliv
