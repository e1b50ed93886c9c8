#include "ellthree/surface_tables.hpp"
#include "ellthree/upoly.hpp"

#include <algorithm>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace ellthree {

std::string to_string(JCase j) {
    switch (j) {
    case JCase::Zero: return "0";
    case JCase::TwelveTwentyEight: return "1728";
    case JCase::Generic: return "generic";
    }
    return "?";
}

JCase parse_jcase(const std::string& text) {
    if (text == "0")
        return JCase::Zero;
    if (text == "1728")
        return JCase::TwelveTwentyEight;
    if (text == "generic")
        return JCase::Generic;
    throw std::invalid_argument("j must be 0, 1728 or generic, got '" + text + "'");
}

int MWGroup::torsion_order() const {
    int n = 1;
    for (int t : torsion)
        n *= t;
    return n;
}

std::string MWGroup::torsion_str() const {
    if (torsion.empty())
        return "0";
    if (torsion.size() == 2 && torsion[0] == torsion[1])
        return "(Z/" + std::to_string(torsion[0]) + "Z)^2";
    std::string s;
    for (int t : torsion)
        s += (s.empty() ? "" : " x ") + ("Z/" + std::to_string(t) + "Z");
    return s;
}

std::string MWGroup::str() const {
    std::string free = rank == 0 ? "" : rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    if (torsion.empty())
        return free.empty() ? "0" : free;
    return free.empty() ? torsion_str() : torsion_str() + " x " + free;
}

std::vector<int> torsion_from_order(int order) {
    switch (order) {
    case 1: return {};
    case 2: return {2};
    case 3: return {3};
    case 4: return {2, 2}; // two D4 fibres: full two-torsion
    }
    throw std::invalid_argument("no rational elliptic surface with constant j has torsion of order " +
                                std::to_string(order));
}

const std::vector<SurfaceClass>& surface_rows(JCase j) {
    using V = std::vector<int>;
    static const std::vector<SurfaceClass> zero{
        {JCase::Zero, V{1, 1, 1, 1, 1, 1}, "-", 8, 1},
        {JCase::Zero, V{2, 1, 1, 1, 1}, "A2", 6, 1},
        {JCase::Zero, V{2, 2, 1, 1}, "2A2", 4, 1},
        {JCase::Zero, V{2, 2, 2}, "3A2", 2, 3},
        {JCase::Zero, V{3, 1, 1, 1}, "D4", 4, 1},
        {JCase::Zero, V{3, 2, 1}, "D4+A2", 2, 1},
        {JCase::Zero, V{3, 3}, "2D4", 0, 4},
        {JCase::Zero, V{4, 1, 1}, "E6", 2, 1},
        {JCase::Zero, V{4, 2}, "E6+A2", 0, 3},
        {JCase::Zero, V{5, 1}, "E8", 0, 1},
    };
    static const std::vector<SurfaceClass> twelve{
        {JCase::TwelveTwentyEight, V{1, 1, 1, 1}, "4A1", 4, 2},
        {JCase::TwelveTwentyEight, V{2, 1, 1}, "D4+2A1", 2, 2},
        {JCase::TwelveTwentyEight, V{2, 2}, "2D4", 0, 4},
        {JCase::TwelveTwentyEight, V{3, 1}, "E7+A1", 0, 2},
    };
    static const std::vector<SurfaceClass> generic{
        {JCase::Generic, V{1, 1}, "2D4", 0, 4},
    };
    switch (j) {
    case JCase::Zero: return zero;
    case JCase::TwelveTwentyEight: return twelve;
    case JCase::Generic: return generic;
    }
    return generic;
}

SurfaceClass lookup_surface(JCase j, const std::vector<int>& pattern) {
    std::vector<int> p = pattern;
    std::sort(p.rbegin(), p.rend());
    for (const auto& row : surface_rows(j))
        if (row.pattern == p)
            return row;
    const int total = [&] {
        int s = 0;
        for (int x : p)
            s += x;
        return s;
    }();
    std::string why;
    if (j == JCase::Zero && total != 6)
        why = "multiplicities must sum to 6";
    else if (j == JCase::TwelveTwentyEight && total != 4)
        why = "multiplicities must sum to 4";
    else if (j == JCase::Generic)
        why = "the conic must meet the line in two distinct points";
    else
        why = "a root of multiplicity " + std::to_string(p.front()) +
              " makes the surface a product or gives a non-minimal Weierstrass model";
    throw std::invalid_argument("no rational elliptic surface with j = " + to_string(j) + " and pattern " +
                                pattern_string(p) + ": " + why);
}

int lattice_rank(const std::string& lattice) {
    if (lattice == "-" || lattice.empty())
        return 0;
    static const std::regex term(R"((\d*)([ADE])(\d+))");
    int total = 0;
    std::stringstream ss(lattice);
    std::string part;
    while (std::getline(ss, part, '+')) {
        std::smatch m;
        if (!std::regex_match(part, m, term))
            throw std::invalid_argument("bad lattice term '" + part + "'");
        const int mult = m[1].length() ? std::stoi(m[1]) : 1;
        total += mult * std::stoi(m[3]);
    }
    return total;
}

std::vector<GroupDescriptor> enumerate_possible_groups(JCase j) {
    using T = std::vector<int>;
    switch (j) {
    case JCase::Generic: return {{{0, T{2, 2}}, false}};
    case JCase::TwelveTwentyEight:
        return {{{0, T{2}}, false}, {{2, T{2}}, false}, {{4, T{2}}, true}, {{0, T{2, 2}}, false}};
    case JCase::Zero:
        return {{{0, T{}}, false},  {{0, T{3}}, false}, {{0, T{2, 2}}, false}, {{2, T{}}, false},
                {{4, T{}}, false},  {{6, T{}}, false},  {{8, T{}}, true},      {{2, T{3}}, true}};
    }
    return {};
}

bool is_possible_group(JCase j, const MWGroup& g) {
    for (const auto& d : enumerate_possible_groups(j))
        if (d.group == g && !d.cone_only)
            return true;
    return false;
}

std::string dump_tables() {
    std::ostringstream out;
    for (JCase j : {JCase::Zero, JCase::TwelveTwentyEight, JCase::Generic}) {
        out << "j = " << to_string(j) << "\n";
        out << std::left << std::setw(16) << "pattern" << std::setw(10) << "lattice" << std::setw(6) << "rank"
            << "torsion\n";
        for (const auto& r : surface_rows(j))
            out << std::left << std::setw(16) << pattern_string(r.pattern) << std::setw(10) << r.lattice
                << std::setw(6) << r.mw_rank << r.torsion_order << "\n";
        out << "\n";
    }
    for (JCase j : {JCase::Zero, JCase::TwelveTwentyEight, JCase::Generic})
        for (const auto& r : surface_rows(j))
            out << "j=" << to_string(j) << " pattern=" << pattern_string(r.pattern) << " lattice=" << r.lattice
                << " rank=" << r.mw_rank << " torsion=" << r.torsion_order << "\n";
    return out.str();
}

} // namespace ellthree
