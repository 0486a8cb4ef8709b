#pragma once

// Exact joint tables over k >= 2 named variables. Groupings of axes project
// down to two-sided JointDists, which is how all entropy measures of tuples
// are evaluated (e.g. I(X;Y|Z) on a triple, or transcript tables in the
// protocol framework).

#include "obliv/dist.hpp"

#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace obliv {

class TupleDist {
public:
    struct Atom {
        std::vector<std::uint32_t> coord;  // one symbol index per axis
        Rational p;
    };

    TupleDist(std::vector<Alphabet> axes, std::vector<Atom> atoms)
        : axes_(std::move(axes)), atoms_(std::move(atoms)) {
        Rational total = 0;
        for (auto& a : atoms_) {
            if (a.coord.size() != axes_.size()) throw_domain("TupleDist: coordinate arity mismatch");
            for (std::size_t i = 0; i < axes_.size(); ++i)
                if (a.coord[i] >= axes_[i].size()) throw_domain("TupleDist: symbol outside alphabet");
            if (a.p < 0) throw_domain("TupleDist: negative mass");
            total += a.p;
        }
        if (total != 1) throw_domain("TupleDist: total mass != 1");
    }

    std::size_t arity() const { return axes_.size(); }
    const Alphabet& axis(std::size_t i) const { return axes_.at(i); }
    std::span<const Atom> atoms() const { return atoms_; }

    std::string group_label(const Atom& a, std::span<const std::size_t> axes) const {
        std::string out;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            if (k) out += ",";
            out += axes_[axes[k]].label(a.coord[axes[k]]);
        }
        return out;
    }

    /// Projects onto (left axes | right axes) as a two-sided joint table.
    JointDist joint(std::initializer_list<std::size_t> left,
                    std::initializer_list<std::size_t> right) const {
        return joint(std::span<const std::size_t>(left.begin(), left.size()),
                     std::span<const std::size_t>(right.begin(), right.size()));
    }

    JointDist joint(std::span<const std::size_t> left, std::span<const std::size_t> right) const {
        Alphabet xa, ya;
        std::vector<JointAtom> out;
        out.reserve(atoms_.size());
        for (const auto& a : atoms_) {
            const auto x = xa.intern(group_label(a, left));
            const auto y = ya.intern(group_label(a, right));
            out.push_back(JointAtom{x, y, a.p});
        }
        return JointDist(std::move(xa), std::move(ya), std::move(out));
    }

    /// The conditional tuple given axis `axis` = symbol `value`.
    TupleDist condition_on(std::size_t axis, std::uint32_t value) const {
        Rational pz = 0;
        for (const auto& a : atoms_)
            if (a.coord[axis] == value) pz += a.p;
        if (pz == 0) throw_domain("ZeroConditioning: conditioning symbol has zero mass");
        std::vector<Atom> rest;
        for (const auto& a : atoms_)
            if (a.coord[axis] == value) rest.push_back(Atom{a.coord, a.p / pz});
        return TupleDist(axes_, std::move(rest));
    }

private:
    std::vector<Alphabet> axes_;
    std::vector<Atom> atoms_;
};

}  // namespace obliv
