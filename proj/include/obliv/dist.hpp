#pragma once

// Exact finite probability distributions over labeled alphabets.
//
// All masses are arbitrary-precision rationals; logarithms happen only at
// output boundaries (see entropy.hpp). Joint tables are stored sparsely as
// support atoms sorted column-major (y, then x), which keeps the m-fold
// products of small primitives tractable. Everything here is immutable after
// construction and safe to share across threads.

#include "obliv/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace obliv {

/// Atom/alphabet guard: products that would materialize more entries than
/// this raise a budget error instead of exhausting memory.
inline constexpr std::uint64_t kDefaultAtomBudget = std::uint64_t(1) << 24;

/// An ordered set of distinct labels; symbols are indices into it.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> labels) {
        for (auto& l : labels) intern(std::move(l));
    }

    std::uint32_t intern(std::string label) {
        auto it = index_.find(label);
        if (it != index_.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(labels_.size());
        index_.emplace(label, id);
        labels_.push_back(std::move(label));
        return id;
    }

    std::optional<std::uint32_t> find(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& label(std::uint32_t i) const { return labels_.at(i); }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const Alphabet& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// A distribution over one alphabet; dense by symbol index, sums to 1.
struct Dist {
    Alphabet alphabet;
    std::vector<Rational> mass;

    Dist() = default;
    Dist(Alphabet a, std::vector<Rational> m) : alphabet(std::move(a)), mass(std::move(m)) {
        if (mass.size() != alphabet.size()) throw_domain("Dist: mass size != alphabet size");
        Rational total = 0;
        for (const auto& p : mass) {
            if (p < 0) throw_domain("Dist: negative mass");
            total += p;
        }
        if (total != 1) throw_domain("Dist: total mass != 1");
    }

    const Rational& p(std::uint32_t i) const { return mass[i]; }
};

struct JointAtom {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    Rational p;
};

inline bool atom_order(const JointAtom& a, const JointAtom& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

namespace detail {

/// Sorts column-major, merges duplicates, drops zeros.
inline std::vector<JointAtom> normalize_atoms(std::vector<JointAtom> atoms) {
    std::sort(atoms.begin(), atoms.end(), atom_order);
    std::vector<JointAtom> out;
    out.reserve(atoms.size());
    for (auto& a : atoms) {
        if (a.p < 0) throw_domain("joint table: negative mass");
        if (a.p == 0) continue;
        if (!out.empty() && out.back().x == a.x && out.back().y == a.y)
            out.back().p += a.p;
        else
            out.push_back(std::move(a));
    }
    return out;
}

}  // namespace detail

/// A sub-normalized joint table (total mass <= 1); the result of smoothing a
/// JointDist by an event.
struct SubDist {
    Alphabet x_alphabet;
    Alphabet y_alphabet;
    std::vector<JointAtom> atoms;  // sorted by (y, x), strictly positive

    Rational total() const {
        Rational t = 0;
        for (const auto& a : atoms) t += a.p;
        return t;
    }
};

/// An exact joint probability table over two labeled alphabets. The universal
/// carrier for distributed randomness, protocol views and input distributions.
class JointDist {
public:
    JointDist() = default;

    JointDist(Alphabet x_alpha, Alphabet y_alpha, std::vector<JointAtom> atoms)
        : x_alphabet_(std::move(x_alpha)),
          y_alphabet_(std::move(y_alpha)),
          atoms_(detail::normalize_atoms(std::move(atoms))) {
        Rational total = 0;
        for (const auto& a : atoms_) {
            if (a.x >= x_alphabet_.size() || a.y >= y_alphabet_.size())
                throw_domain("JointDist: atom index outside alphabet");
            total += a.p;
        }
        if (total != 1) throw_domain("JointDist: total mass != 1 (got " + format_rational(total) + ")");
    }

    const Alphabet& x_alphabet() const { return x_alphabet_; }
    const Alphabet& y_alphabet() const { return y_alphabet_; }
    std::span<const JointAtom> atoms() const { return atoms_; }

    /// Half-open atom ranges per present y, in increasing y order.
    std::vector<std::pair<std::size_t, std::size_t>> columns() const {
        std::vector<std::pair<std::size_t, std::size_t>> cols;
        std::size_t i = 0;
        while (i < atoms_.size()) {
            std::size_t j = i;
            while (j < atoms_.size() && atoms_[j].y == atoms_[i].y) ++j;
            cols.emplace_back(i, j);
            i = j;
        }
        return cols;
    }

    Rational p(std::uint32_t x, std::uint32_t y) const {
        JointAtom probe{x, y, Rational(0)};
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), probe, atom_order);
        if (it != atoms_.end() && it->x == x && it->y == y) return it->p;
        return Rational(0);
    }

    SubDist as_subdist() const { return SubDist{x_alphabet_, y_alphabet_, atoms_}; }

private:
    Alphabet x_alphabet_;
    Alphabet y_alphabet_;
    std::vector<JointAtom> atoms_;
};

/// A conditional distribution P_{Y|X}: one Dist row per input symbol.
struct Channel {
    Alphabet input_alphabet;
    Alphabet output_alphabet;
    std::vector<std::vector<Rational>> rows;  // rows[x][y], each row sums to 1

    Channel() = default;
    Channel(Alphabet in, Alphabet out, std::vector<std::vector<Rational>> r)
        : input_alphabet(std::move(in)), output_alphabet(std::move(out)), rows(std::move(r)) {
        if (rows.size() != input_alphabet.size()) throw_domain("Channel: row count != input alphabet");
        for (const auto& row : rows) {
            if (row.size() != output_alphabet.size()) throw_domain("Channel: row width != output alphabet");
            Rational total = 0;
            for (const auto& p : row) {
                if (p < 0) throw_domain("Channel: negative mass");
                total += p;
            }
            if (total != 1) throw_domain("Channel: row does not sum to 1");
        }
    }
};

enum class Side { left, right };

inline Dist marginal(const JointDist& j, Side side) {
    const Alphabet& alpha = side == Side::left ? j.x_alphabet() : j.y_alphabet();
    std::vector<Rational> mass(alpha.size(), Rational(0));
    for (const auto& a : j.atoms()) mass[side == Side::left ? a.x : a.y] += a.p;
    return Dist(alpha, std::move(mass));
}

/// P_{X|Y=y}; requires P_Y(y) > 0.
inline Dist condition(const JointDist& j, std::uint32_t y) {
    std::vector<Rational> mass(j.x_alphabet().size(), Rational(0));
    Rational py = 0;
    for (const auto& a : j.atoms()) {
        if (a.y != y) continue;
        mass[a.x] = a.p;
        py += a.p;
    }
    if (py == 0) throw_domain("ZeroConditioning: P_Y(y) = 0");
    for (auto& m : mass) m /= py;
    return Dist(j.x_alphabet(), std::move(mass));
}

inline Dist condition(const JointDist& j, std::string_view y_label) {
    auto y = j.y_alphabet().find(y_label);
    if (!y) throw_domain("ZeroConditioning: symbol '" + std::string(y_label) + "' not in alphabet");
    return condition(j, *y);
}

inline std::string pair_label(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

/// Independent product: P((x1,x2),(y1,y2)) = a(x1,y1) * b(x2,y2).
inline JointDist product(const JointDist& a, const JointDist& b,
                         std::uint64_t atom_budget = kDefaultAtomBudget) {
    const std::uint64_t support = std::uint64_t(a.atoms().size()) * b.atoms().size();
    const std::uint64_t xs = std::uint64_t(a.x_alphabet().size()) * b.x_alphabet().size();
    const std::uint64_t ys = std::uint64_t(a.y_alphabet().size()) * b.y_alphabet().size();
    if (support > atom_budget || xs > atom_budget || ys > atom_budget)
        throw_budget("AlphabetOverflow: product exceeds atom budget");

    Alphabet x_alpha;
    for (const auto& l1 : a.x_alphabet().labels())
        for (const auto& l2 : b.x_alphabet().labels()) x_alpha.intern(pair_label(l1, l2));
    Alphabet y_alpha;
    for (const auto& l1 : a.y_alphabet().labels())
        for (const auto& l2 : b.y_alphabet().labels()) y_alpha.intern(pair_label(l1, l2));

    const auto bxs = static_cast<std::uint32_t>(b.x_alphabet().size());
    const auto bys = static_cast<std::uint32_t>(b.y_alphabet().size());
    std::vector<JointAtom> atoms;
    atoms.reserve(support);
    for (const auto& aa : a.atoms())
        for (const auto& ab : b.atoms())
            atoms.push_back(JointAtom{aa.x * bxs + ab.x, aa.y * bys + ab.y, aa.p * ab.p});
    return JointDist(std::move(x_alpha), std::move(y_alpha), std::move(atoms));
}

inline JointDist product_power(const JointDist& base, int m,
                               std::uint64_t atom_budget = kDefaultAtomBudget) {
    if (m < 1) throw_domain("product_power: m must be >= 1");
    JointDist out = base;
    for (int i = 1; i < m; ++i) out = product(out, base, atom_budget);
    return out;
}

inline JointDist transpose(const JointDist& j) {
    std::vector<JointAtom> atoms;
    atoms.reserve(j.atoms().size());
    for (const auto& a : j.atoms()) atoms.push_back(JointAtom{a.y, a.x, a.p});
    return JointDist(j.y_alphabet(), j.x_alphabet(), std::move(atoms));
}

/// Half the L1 distance, matched by label (union alphabet, zero padding).
inline Rational stat_distance(const Dist& p, const Dist& q) {
    Rational sum = 0;
    for (std::uint32_t i = 0; i < p.alphabet.size(); ++i) {
        const auto qi = q.alphabet.find(p.alphabet.label(i));
        const Rational d = p.mass[i] - (qi ? q.mass[*qi] : Rational(0));
        sum += d < 0 ? -d : d;
    }
    for (std::uint32_t i = 0; i < q.alphabet.size(); ++i) {
        if (!p.alphabet.find(q.alphabet.label(i))) sum += q.mass[i];
    }
    return sum / 2;
}

/// Statistical distance of two joint tables (as distributions over pairs).
inline Rational stat_distance(const JointDist& p, const JointDist& q) {
    std::map<std::pair<std::string, std::string>, Rational> diff;
    for (const auto& a : p.atoms())
        diff[{p.x_alphabet().label(a.x), p.y_alphabet().label(a.y)}] += a.p;
    for (const auto& a : q.atoms())
        diff[{q.x_alphabet().label(a.x), q.y_alphabet().label(a.y)}] -= a.p;
    Rational sum = 0;
    for (const auto& [k, d] : diff) sum += d < 0 ? -d : d;
    return sum / 2;
}

/// Event weights P_{Omega|X=x,Y=y} in [0,1]; unlisted atoms default to
/// default_weight. Fractional weights arise from the min-entropy optimizer,
/// 0/1 weights from the max-entropy optimizer.
struct EventWeights {
    Rational default_weight = Rational(1);
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries;

    const Rational& at(std::uint32_t x, std::uint32_t y) const {
        auto it = entries.find({x, y});
        return it == entries.end() ? default_weight : it->second;
    }
};

/// P_{X Omega | Y}: entrywise product of the table with the event weights.
inline SubDist apply_event(const JointDist& j, const EventWeights& w) {
    if (w.default_weight < 0 || w.default_weight > 1)
        throw_domain("WeightOutOfRange: default weight outside [0,1]");
    for (const auto& [k, v] : w.entries)
        if (v < 0 || v > 1) throw_domain("WeightOutOfRange: event weight outside [0,1]");
    SubDist out;
    out.x_alphabet = j.x_alphabet();
    out.y_alphabet = j.y_alphabet();
    out.atoms.reserve(j.atoms().size());
    for (const auto& a : j.atoms()) {
        Rational p = a.p * w.at(a.x, a.y);
        if (p > 0) out.atoms.push_back(JointAtom{a.x, a.y, std::move(p)});
    }
    return out;
}

/// Builds a joint table from labeled weighted pairs; duplicate labels merge.
inline JointDist joint_from_labeled(
    const std::vector<std::tuple<std::string, std::string, Rational>>& entries) {
    Alphabet xa, ya;
    std::vector<JointAtom> atoms;
    atoms.reserve(entries.size());
    for (const auto& [xl, yl, p] : entries)
        atoms.push_back(JointAtom{xa.intern(xl), ya.intern(yl), p});
    return JointDist(std::move(xa), std::move(ya), std::move(atoms));
}

}  // namespace obliv
