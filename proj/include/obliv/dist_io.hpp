#pragma once

// File format for joint tables:
//   {"x_alphabet":[...], "y_alphabet":[...], "mass":[["1/8", ...], ...]}
// mass is row-major by x symbol; entries are rational strings "p/q" (or "p").
// A loader without allow_subnormalized rejects tables whose total is not 1.

#include "obliv/dist.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace obliv {

inline nlohmann::ordered_json joint_to_json(const JointDist& j) {
    nlohmann::ordered_json out;
    out["x_alphabet"] = j.x_alphabet().labels();
    out["y_alphabet"] = j.y_alphabet().labels();
    std::vector<std::vector<std::string>> mass(
        j.x_alphabet().size(), std::vector<std::string>(j.y_alphabet().size(), "0"));
    for (const auto& a : j.atoms()) mass[a.x][a.y] = format_rational(a.p);
    out["mass"] = mass;
    return out;
}

struct LoadedTable {
    SubDist table;
    bool normalized = false;

    JointDist to_joint() const {
        if (!normalized) throw_domain("table is sub-normalized; pass --subnormalized to load it");
        return JointDist(table.x_alphabet, table.y_alphabet, table.atoms);
    }
};

inline LoadedTable joint_from_json(const nlohmann::json& in, bool allow_subnormalized = false) {
    if (!in.is_object() || !in.contains("x_alphabet") || !in.contains("y_alphabet") ||
        !in.contains("mass"))
        throw_parse("table file must contain x_alphabet, y_alphabet and mass");
    Alphabet xa, ya;
    for (const auto& l : in.at("x_alphabet")) {
        if (!l.is_string()) throw_parse("alphabet labels must be strings");
        if (xa.find(l.get<std::string>())) throw_parse("duplicate x label");
        xa.intern(l.get<std::string>());
    }
    for (const auto& l : in.at("y_alphabet")) {
        if (!l.is_string()) throw_parse("alphabet labels must be strings");
        if (ya.find(l.get<std::string>())) throw_parse("duplicate y label");
        ya.intern(l.get<std::string>());
    }
    const auto& mass = in.at("mass");
    if (!mass.is_array() || mass.size() != xa.size()) throw_parse("mass must have one row per x label");
    std::vector<JointAtom> atoms;
    Rational total = 0;
    for (std::uint32_t x = 0; x < xa.size(); ++x) {
        const auto& row = mass.at(x);
        if (!row.is_array() || row.size() != ya.size())
            throw_parse("mass rows must have one entry per y label");
        for (std::uint32_t y = 0; y < ya.size(); ++y) {
            const auto& cell = row.at(y);
            if (!cell.is_string()) throw_parse("mass entries must be rational strings");
            Rational p = parse_rational(cell.get<std::string>());
            if (p < 0) throw_parse("negative mass entry");
            total += p;
            if (p > 0) atoms.push_back(JointAtom{x, y, std::move(p)});
        }
    }
    if (total > 1 || (!allow_subnormalized && total != 1))
        throw_parse("table total mass is " + format_rational(total) +
                    (total < 1 ? " (pass --subnormalized to accept)" : ""));
    LoadedTable out;
    out.table = SubDist{std::move(xa), std::move(ya), detail::normalize_atoms(std::move(atoms))};
    out.normalized = total == 1;
    return out;
}

inline LoadedTable load_joint_file(const std::string& path, bool allow_subnormalized = false) {
    std::ifstream f(path);
    if (!f) throw_parse("cannot open table file: " + path);
    nlohmann::json in;
    try {
        f >> in;
    } catch (const nlohmann::json::exception& e) {
        throw_parse("invalid table file " + path + ": " + e.what());
    }
    return joint_from_json(in, allow_subnormalized);
}

inline void dump_joint_file(const JointDist& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw_parse("cannot write table file: " + path);
    f << joint_to_json(j).dump(2) << "\n";
}

}  // namespace obliv
