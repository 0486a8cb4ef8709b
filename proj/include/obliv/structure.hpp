#pragma once

// Structural decompositions of two-party randomness: the common part (finest
// random variable computable from either side alone; connected components of
// the bipartite support graph) and sufficient statistics (grouping of x by
// identical conditional rows P_{Y|X=x}).

#include "obliv/dist.hpp"
#include "obliv/entropy.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace obliv {

/// A total assignment of support symbols to classes. Class identifiers are
/// canonical: the smallest-index member on the X side. Zero-mass symbols are
/// dropped (class -1), matching the convention that alphabets are supports.
struct Partition {
    std::vector<std::int32_t> cls;  // symbol index -> class id, -1 if zero mass
    std::uint32_t num_classes = 0;
};

struct CommonPart {
    Partition x_part;
    Partition y_part;
    Dist c_dist;  // distribution of C, labeled by canonical class member
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);  // keep smallest as root
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

inline CommonPart common_part(const JointDist& j) {
    const std::size_t nx = j.x_alphabet().size();
    const std::size_t ny = j.y_alphabet().size();
    // nodes: x symbols first, then y symbols; smallest x index wins as root
    detail::UnionFind uf(nx + ny);
    for (const auto& a : j.atoms()) uf.unite(a.x, nx + a.y);

    std::vector<bool> x_supp(nx, false), y_supp(ny, false);
    for (const auto& a : j.atoms()) {
        x_supp[a.x] = true;
        y_supp[a.y] = true;
    }

    // every class of a support node is rooted at an x symbol (each support y
    // has an edge to some x, and roots prefer the smaller node id)
    std::map<std::size_t, std::int32_t> class_of_root;
    Alphabet c_alpha;
    CommonPart out;
    out.x_part.cls.assign(nx, -1);
    out.y_part.cls.assign(ny, -1);
    for (std::uint32_t x = 0; x < nx; ++x) {
        if (!x_supp[x]) continue;
        const std::size_t root = uf.find(x);
        auto it = class_of_root.find(root);
        if (it == class_of_root.end()) {
            const auto id = static_cast<std::int32_t>(class_of_root.size());
            class_of_root.emplace(root, id);
            c_alpha.intern(j.x_alphabet().label(static_cast<std::uint32_t>(root)));
            out.x_part.cls[x] = id;
        } else {
            out.x_part.cls[x] = it->second;
        }
    }
    for (std::uint32_t y = 0; y < ny; ++y) {
        if (!y_supp[y]) continue;
        out.y_part.cls[y] = class_of_root.at(uf.find(nx + y));
    }
    out.x_part.num_classes = static_cast<std::uint32_t>(class_of_root.size());
    out.y_part.num_classes = out.x_part.num_classes;

    std::vector<Rational> c_mass(class_of_root.size(), Rational(0));
    for (const auto& a : j.atoms()) c_mass[out.x_part.cls[a.x]] += a.p;
    out.c_dist = Dist(std::move(c_alpha), std::move(c_mass));
    return out;
}

/// Sufficient statistics K(X -> Y): x and x' share a class iff their
/// conditional rows P_{Y|X=x} are identical as exact rationals.
inline Partition sufficient_stat(const JointDist& j) {
    const std::size_t nx = j.x_alphabet().size();
    std::vector<std::vector<Rational>> row(nx);
    std::vector<Rational> px(nx, Rational(0));
    for (const auto& a : j.atoms()) px[a.x] += a.p;
    for (std::uint32_t x = 0; x < nx; ++x)
        if (px[x] > 0) row[x].assign(j.y_alphabet().size(), Rational(0));
    for (const auto& a : j.atoms()) row[a.x][a.y] = a.p / px[a.x];

    Partition out;
    out.cls.assign(nx, -1);
    std::map<std::vector<Rational>, std::int32_t> class_of_row;
    for (std::uint32_t x = 0; x < nx; ++x) {
        if (px[x] == 0) continue;
        auto [it, fresh] = class_of_row.try_emplace(row[x], static_cast<std::int32_t>(class_of_row.size()));
        out.cls[x] = it->second;
        (void)fresh;
    }
    out.num_classes = static_cast<std::uint32_t>(class_of_row.size());
    return out;
}

/// Tolerance-based grouping, exposed behind an explicit flag. Rows whose L1
/// distance is within tol are merged greedily in symbol order.
inline Partition sufficient_stat_approx(const JointDist& j, double tol) {
    const std::size_t nx = j.x_alphabet().size();
    std::vector<std::vector<double>> row(nx);
    std::vector<Rational> px(nx, Rational(0));
    for (const auto& a : j.atoms()) px[a.x] += a.p;
    for (std::uint32_t x = 0; x < nx; ++x)
        if (px[x] > 0) row[x].assign(j.y_alphabet().size(), 0.0);
    for (const auto& a : j.atoms()) row[a.x][a.y] = to_double(a.p / px[a.x]);

    Partition out;
    out.cls.assign(nx, -1);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x = 0; x < nx; ++x) {
        if (px[x] == 0) continue;
        std::int32_t assigned = -1;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            double l1 = 0.0;
            for (std::size_t y = 0; y < row[x].size(); ++y) l1 += std::abs(row[x][y] - row[reps[r]][y]);
            if (l1 <= tol) {
                assigned = static_cast<std::int32_t>(r);
                break;
            }
        }
        if (assigned < 0) {
            assigned = static_cast<std::int32_t>(reps.size());
            reps.push_back(x);
        }
        out.cls[x] = assigned;
    }
    out.num_classes = static_cast<std::uint32_t>(reps.size());
    return out;
}

/// I(X;Y|C) for C = common part: sum over classes of P(c) I(X;Y | C=c).
inline double mutual_info_given_common(const JointDist& j, const CommonPart& cp) {
    if (cp.x_part.num_classes == 1) return mutual_info(j);  // trivial common part
    double total = 0.0;
    for (std::uint32_t c = 0; c < cp.x_part.num_classes; ++c) {
        const Rational pc = cp.c_dist.mass[c];
        if (pc == 0) continue;
        std::vector<JointAtom> atoms;
        for (const auto& a : j.atoms())
            if (cp.x_part.cls[a.x] == static_cast<std::int32_t>(c))
                atoms.push_back(JointAtom{a.x, a.y, a.p / pc});
        JointDist cond(j.x_alphabet(), j.y_alphabet(), std::move(atoms));
        total += to_double(pc) * mutual_info(cond);
    }
    return total;
}

}  // namespace obliv
