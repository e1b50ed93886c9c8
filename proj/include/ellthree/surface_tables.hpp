#pragma once

// Mordell-Weil data of rational elliptic surfaces with constant j, keyed by
// the multiplicity pattern of the discriminant factor restricted to P^1.

#include <string>
#include <vector>

namespace ellthree {

enum class JCase { Zero, TwelveTwentyEight, Generic };

std::string to_string(JCase j);
/// Accepts "0", "1728" and "generic".
JCase parse_jcase(const std::string& text);

/// Finitely generated abelian group Z^rank x prod Z/n_i (invariant factors).
struct MWGroup {
    int rank = 0;
    std::vector<int> torsion;

    int torsion_order() const;
    std::string torsion_str() const; // "0", "Z/3Z", "(Z/2Z)^2"
    std::string str() const;         // "Z/2Z x Z^2", "0"
    friend bool operator==(const MWGroup&, const MWGroup&) = default;
};

/// Torsion group of a rational elliptic surface with constant j from its order.
std::vector<int> torsion_from_order(int order);

struct SurfaceClass {
    JCase j = JCase::Zero;
    std::vector<int> pattern; // descending
    std::string lattice;      // "-", "A2", "D4+A2", ...
    int mw_rank = 0;
    int torsion_order = 1;

    MWGroup group() const { return {mw_rank, torsion_from_order(torsion_order)}; }
};

/// Rows in table order. Generic j has one row, pattern [1,1] (the conic P
/// restricted to the line).
const std::vector<SurfaceClass>& surface_rows(JCase j);

SurfaceClass lookup_surface(JCase j, const std::vector<int>& pattern);

/// Rank of a root lattice written as a sum like "2A2", "D4+2A1", "E7+A1" or "-".
int lattice_rank(const std::string& lattice);

struct GroupDescriptor {
    MWGroup group;
    bool cone_only = false; // realised only by the excluded cone construction
};

/// The possible Mordell-Weil groups of a degree one elliptic threefold with
/// the given constant j.
std::vector<GroupDescriptor> enumerate_possible_groups(JCase j);

/// Whether g is one of the possible groups that does not require a cone.
bool is_possible_group(JCase j, const MWGroup& g);

/// Aligned text tables followed by one machine line per row.
std::string dump_tables();

} // namespace ellthree
