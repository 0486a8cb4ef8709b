#pragma once

// Independent ground truth for the smooth-entropy optimizers.
//
// The smooth-min oracle is the linear program over sub-table entries
//   minimize sum_y m_y
//   s.t.     Q(x,y) <= m_y, sum Q >= 1 - eps, 0 <= Q <= P
// solved exactly by a dense two-phase rational simplex with Bland's rule.
// The smooth-max oracle enumerates all atom-removal subsets. Both live only
// in test code and share nothing with the optimizers in entropy.hpp.

#include "obliv/dist.hpp"
#include "obliv/entropy.hpp"

#include <optional>
#include <vector>

namespace obliv::oracle {

enum class Rel { le, ge };

struct LinearProgram {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rel> rel;
    std::vector<Rational> objective;  // minimized
};

/// Two-phase rational simplex (Bland's rule, dense tableau). Returns the
/// optimal objective value or nullopt if infeasible. Unbounded problems do
/// not occur for the bounded LPs used here.
inline std::optional<Rational> solve_min(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.rows.size();

    // normalize to b >= 0, add slack/surplus + artificials
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
    std::vector<Rational> b(m);
    std::vector<Rel> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = lp.rows[i];
        b[i] = lp.rhs[i];
        rel[i] = lp.rel[i];
        if (b[i] < 0) {
            for (auto& v : a[i]) v = -v;
            b[i] = -b[i];
            rel[i] = rel[i] == Rel::le ? Rel::ge : Rel::le;
        }
    }
    std::size_t cols = n;
    std::vector<std::size_t> slack_col(m), art_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) slack_col[i] = cols++;
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (rel[i] == Rel::ge) art_col[i] = cols + n_art++;
    const std::size_t total = cols + n_art;

    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][slack_col[i]] = rel[i] == Rel::le ? Rational(1) : Rational(-1);
        t[i][total] = b[i];
        if (art_col[i] != SIZE_MAX) {
            t[i][art_col[i]] = 1;
            basis[i] = art_col[i];
        } else {
            basis[i] = slack_col[i];
        }
    }

    const auto pivot = [&](std::size_t row, std::size_t col) {
        const Rational piv = t[row][col];
        for (auto& v : t[row]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            const Rational f = t[i][col];
            for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    };

    // minimization simplex: enter where z_j - c_j > 0 (Bland: smallest index),
    // leave by the ratio test (ties to the smallest basis index)
    const auto run_phase = [&](const std::vector<Rational>& cost, std::size_t max_col) -> Rational {
        while (true) {
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < max_col && enter == SIZE_MAX; ++j) {
                Rational red = -cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (cost[basis[i]] != 0) red += cost[basis[i]] * t[i][j];
                if (red > 0) enter = j;
            }
            if (enter == SIZE_MAX) break;
            std::size_t leave = SIZE_MAX;
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                const Rational ratio = t[i][total] / t[i][enter];
                if (leave == SIZE_MAX || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == SIZE_MAX) throw_domain("lp oracle: unbounded");
            pivot(leave, enter);
        }
        Rational value = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (cost[basis[i]] != 0) value += cost[basis[i]] * t[i][total];
        return value;
    };

    if (n_art > 0) {
        std::vector<Rational> phase1(total, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (art_col[i] != SIZE_MAX) phase1[art_col[i]] = 1;
        if (run_phase(phase1, total) != 0) return std::nullopt;
        // drive any artificial still in the basis out (degenerate rows)
        for (std::size_t i = 0; i < m; ++i) {
            if (art_col[i] == SIZE_MAX || basis[i] < cols) continue;
            bool pivoted = false;
            for (std::size_t j = 0; j < cols && !pivoted; ++j) {
                if (t[i][j] != 0) {
                    pivot(i, j);
                    pivoted = true;
                }
            }
        }
    }
    std::vector<Rational> phase2(total, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
    run_phase(phase2, cols);  // artificials are barred from re-entering
    Rational value = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) value += lp.objective[basis[i]] * t[i][total];
    return value;
}

/// min sum_y max_x Q(x,y) over sub-tables Q <= P with total mass >= 1 - eps.
inline Rational smooth_min_mass(const JointDist& j, const Rational& eps) {
    const auto atoms = j.atoms();
    const std::size_t s = atoms.size();
    // column ids present, in sorted order
    std::vector<std::uint32_t> ys;
    for (const auto& a : atoms)
        if (ys.empty() || ys.back() != a.y) ys.push_back(a.y);
    const std::size_t t = ys.size();
    const auto col_of = [&](std::uint32_t y) {
        return std::size_t(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
    };

    LinearProgram lp;
    const std::size_t nvars = s + t;  // Q atoms then m_y
    lp.objective.assign(nvars, Rational(0));
    for (std::size_t c = 0; c < t; ++c) lp.objective[s + c] = 1;
    for (std::size_t i = 0; i < s; ++i) {
        // Q_i - m_{col(i)} <= 0
        std::vector<Rational> row(nvars, Rational(0));
        row[i] = 1;
        row[s + col_of(atoms[i].y)] = -1;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(Rational(0));
        lp.rel.push_back(Rel::le);
        // Q_i <= P_i
        std::vector<Rational> cap(nvars, Rational(0));
        cap[i] = 1;
        lp.rows.push_back(std::move(cap));
        lp.rhs.push_back(atoms[i].p);
        lp.rel.push_back(Rel::le);
    }
    std::vector<Rational> mass_row(nvars, Rational(0));
    for (std::size_t i = 0; i < s; ++i) mass_row[i] = 1;
    lp.rows.push_back(std::move(mass_row));
    lp.rhs.push_back(Rational(1) - eps);
    lp.rel.push_back(Rel::ge);

    const auto v = solve_min(lp);
    if (!v) throw_domain("lp oracle: infeasible smooth-min program");
    return *v;
}

/// min over removal subsets with removed mass <= eps of max_y |remaining
/// column support|; exhaustive enumeration, supports up to 20 atoms.
inline std::size_t smooth_max_support(const JointDist& j, const Rational& eps) {
    const auto atoms = j.atoms();
    const std::size_t s = atoms.size();
    if (s > 20) throw_domain("smooth_max oracle: too many atoms");
    std::size_t best = SIZE_MAX;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << s); ++mask) {
        Rational removed = 0;
        for (std::size_t i = 0; i < s; ++i)
            if (mask >> i & 1) removed += atoms[i].p;
        if (removed > eps) continue;
        std::vector<JointAtom> rest;
        for (std::size_t i = 0; i < s; ++i)
            if (!(mask >> i & 1)) rest.push_back(atoms[i]);
        best = std::min(best, max_column_support(rest));
    }
    return best;
}

}  // namespace obliv::oracle
