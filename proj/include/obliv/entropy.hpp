#pragma once

// Entropy measures over exact joint tables.
//
// Shannon quantities sum over the support only; every per-atom term is an
// exact rational converted to binary64 immediately before the log. The two
// smooth measures are exact optimizers:
//
//   H_min^e(X|Y) = max_{Omega: Pr[Omega] >= 1-e} -log sum_y max_x P_{X Omega, Y=y}(x)
//   H_max^e(X|Y) = min_{Omega: Pr[Omega] >= 1-e} max_y log |supp P_{X Omega|Y=y}|
//
// For H_min the optimum keeps every non-maximal atom untouched and lowers
// column maxima; lowering column y to level t costs sum_{x: P(x,y)>t} (P(x,y)-t)
// of event mass, so the marginal cost of one unit of objective reduction is the
// current count of tied top atoms. Greedily spending the budget on the column
// with the fewest tied tops (a separable convex program) is exact.
//
// For H_max the support of a column shrinks only when an atom's event weight
// is exactly 0, so the optimal event zeroes whole atoms: for a candidate
// support bound s the cheapest removal in column y is its n_y - s lightest
// atoms, and the answer is the smallest feasible s.

#include "obliv/dist.hpp"
#include "obliv/tuple_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace obliv {

/// h(p) = -p log p - (1-p) log(1-p), with 0 log 0 := 0.
inline double binary_entropy(double p) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw_domain("binary_entropy: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

inline double shannon(const Dist& d) {
    double h = 0.0;
    for (const auto& p : d.mass)
        if (p > 0) h -= to_double(p) * log2_rational(p);
    return h;
}

/// H(XY): Shannon entropy of the pair.
inline double shannon_joint(const JointDist& j) {
    double h = 0.0;
    for (const auto& a : j.atoms()) h -= to_double(a.p) * log2_rational(a.p);
    return h;
}

/// H(X|Y) = sum_{supp} P(x,y) log(P_Y(y)/P(x,y)).
inline double shannon_cond(const JointDist& j) {
    double h = 0.0;
    for (const auto& [begin, end] : j.columns()) {
        Rational py = 0;
        for (std::size_t i = begin; i < end; ++i) py += j.atoms()[i].p;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& a = j.atoms()[i];
            h += to_double(a.p) * log2_rational(py / a.p);
        }
    }
    return h;
}

/// I(X;Y) = H(X) - H(X|Y).
inline double mutual_info(const JointDist& j) {
    return shannon(marginal(j, Side::left)) - shannon_cond(j);
}

/// I(X;Y|Z) on a triple table with axes (X, Y, Z) = H(X|Z) - H(X|YZ).
inline double mutual_info_cond(const TupleDist& t) {
    if (t.arity() != 3) throw_domain("mutual_info_cond: expected a triple (X,Y,Z)");
    return shannon_cond(t.joint({0}, {2})) - shannon_cond(t.joint({0}, {1, 2}));
}

/// sum_y max_x of a (possibly sub-normalized) table, exactly.
inline Rational guess_mass(std::span<const JointAtom> atoms) {
    Rational total = 0;
    std::size_t i = 0;
    while (i < atoms.size()) {
        Rational best = 0;
        const std::uint32_t y = atoms[i].y;
        for (; i < atoms.size() && atoms[i].y == y; ++i)
            if (atoms[i].p > best) best = atoms[i].p;
        total += best;
    }
    return total;
}

inline Rational guess_mass(const JointDist& j) { return guess_mass(j.atoms()); }
inline Rational guess_mass(const SubDist& s) { return guess_mass(s.atoms); }

/// H_min(X|Y) = -log sum_y max_x P(x,y).
inline double min_entropy_cond(const JointDist& j) { return -log2_rational(guess_mass(j)); }

/// H_max(X|Y) = max_y log |supp P_{X|Y=y}| (unsmoothed).
inline double max_entropy_cond(const JointDist& j);

/// max_y |supp P_{X|Y=y}| of a (possibly sub-normalized) table.
inline std::size_t max_column_support(std::span<const JointAtom> atoms) {
    std::size_t best = 0, i = 0;
    while (i < atoms.size()) {
        std::size_t n = 0;
        const std::uint32_t y = atoms[i].y;
        for (; i < atoms.size() && atoms[i].y == y; ++i) ++n;
        best = std::max(best, n);
    }
    return best;
}

inline double max_entropy_cond(const JointDist& j) {
    return std::log2(static_cast<double>(max_column_support(j.atoms())));
}

struct EntropyReport {
    double value = 0.0;        // bits
    Rational epsilon;          // smoothing parameter used
    EventWeights witness;      // optimal event; re-applying it reproduces value
};

namespace detail {

struct ColumnLevels {
    // distinct atom masses of one column, descending, with multiplicities
    std::vector<Rational> level;
    std::vector<std::uint32_t> count;
};

inline std::vector<std::pair<std::uint32_t, ColumnLevels>> column_levels(const JointDist& j) {
    std::vector<std::pair<std::uint32_t, ColumnLevels>> cols;
    for (const auto& [begin, end] : j.columns()) {
        std::vector<Rational> masses;
        masses.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) masses.push_back(j.atoms()[i].p);
        std::sort(masses.begin(), masses.end(), std::greater<>());
        ColumnLevels cl;
        for (auto& m : masses) {
            if (!cl.level.empty() && cl.level.back() == m)
                ++cl.count.back();
            else {
                cl.level.push_back(std::move(m));
                cl.count.push_back(1);
            }
        }
        cols.emplace_back(j.atoms()[begin].y, std::move(cl));
    }
    return cols;
}

}  // namespace detail

/// Exact smooth conditional min-entropy by per-column water-filling.
inline EntropyReport smooth_min_entropy(const JointDist& j, const Rational& eps) {
    if (eps < 0 || eps >= 1) throw_domain("smooth_min_entropy: eps outside [0,1)");

    auto cols = detail::column_levels(j);
    const std::size_t n = cols.size();
    // per-column state: current level, index of the next distinct level,
    // number of atoms currently held at the level (the tie count)
    std::vector<Rational> level(n);
    std::vector<std::size_t> next(n);
    std::vector<std::uint64_t> ties(n);
    for (std::size_t c = 0; c < n; ++c) {
        level[c] = cols[c].second.level[0];
        ties[c] = cols[c].second.count[0];
        next[c] = 1;
    }

    // min-heap on (tie count, column order); column order = increasing y
    using Key = std::pair<std::uint64_t, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    for (std::size_t c = 0; c < n; ++c) heap.emplace(ties[c], c);

    Rational budget = eps;
    while (budget > 0 && !heap.empty()) {
        const auto [tie, c] = heap.top();
        heap.pop();
        if (tie != ties[c]) continue;  // stale entry
        const auto& cl = cols[c].second;
        const Rational floor = next[c] < cl.level.size() ? cl.level[next[c]] : Rational(0);
        const Rational segment_cost = Rational(tie) * (level[c] - floor);
        if (segment_cost <= budget) {
            budget -= segment_cost;
            level[c] = floor;
            if (next[c] < cl.level.size()) {
                ties[c] += cl.count[next[c]];
                ++next[c];
                heap.emplace(ties[c], c);
            }
            // level 0 with no further atoms: column exhausted, drop it
        } else {
            level[c] -= budget / Rational(tie);
            budget = 0;
        }
    }

    Rational objective = 0;
    for (std::size_t c = 0; c < n; ++c) objective += level[c];

    EntropyReport report;
    report.epsilon = eps;
    report.value = -log2_rational(objective);
    // witness: atoms above the final level are scaled down onto it
    std::vector<Rational> level_by_y(j.y_alphabet().size(), Rational(0));
    std::vector<bool> capped(j.y_alphabet().size(), false);
    for (std::size_t c = 0; c < n; ++c) {
        level_by_y[cols[c].first] = level[c];
        capped[cols[c].first] = true;
    }
    for (const auto& a : j.atoms()) {
        if (capped[a.y] && a.p > level_by_y[a.y])
            report.witness.entries[{a.x, a.y}] = level_by_y[a.y] / a.p;
    }
    return report;
}

/// Exact smooth conditional max-entropy by cheapest whole-atom removal.
inline EntropyReport smooth_max_entropy(const JointDist& j, const Rational& eps) {
    if (eps < 0 || eps >= 1) throw_domain("smooth_max_entropy: eps outside [0,1)");

    // per column: masses ascending with original atom position, prefix sums
    struct Col {
        std::vector<std::pair<Rational, std::size_t>> asc;  // (mass, atom index)
        std::vector<Rational> prefix;                       // prefix[i] = sum of i lightest
    };
    std::vector<Col> cols;
    for (const auto& [begin, end] : j.columns()) {
        Col c;
        for (std::size_t i = begin; i < end; ++i) c.asc.emplace_back(j.atoms()[i].p, i);
        std::sort(c.asc.begin(), c.asc.end());  // mass, then atom position
        c.prefix.assign(c.asc.size() + 1, Rational(0));
        for (std::size_t i = 0; i < c.asc.size(); ++i) c.prefix[i + 1] = c.prefix[i] + c.asc[i].first;
        cols.push_back(std::move(c));
    }
    std::size_t smax = 0;
    for (const auto& c : cols) smax = std::max(smax, c.asc.size());

    const auto removal_cost = [&](std::size_t s) {
        Rational cost = 0;
        for (const auto& c : cols)
            if (c.asc.size() > s) cost += c.prefix[c.asc.size() - s];
        return cost;
    };

    std::size_t best = smax;
    for (std::size_t s = 1; s <= smax; ++s) {
        if (removal_cost(s) <= eps) {
            best = s;
            break;
        }
    }

    EntropyReport report;
    report.epsilon = eps;
    report.value = std::log2(static_cast<double>(best));
    for (const auto& c : cols) {
        if (c.asc.size() <= best) continue;
        for (std::size_t i = 0; i < c.asc.size() - best; ++i) {
            const auto& atom = j.atoms()[c.asc[i].second];
            report.witness.entries[{atom.x, atom.y}] = Rational(0);
        }
    }
    return report;
}

}  // namespace obliv
