#pragma once

// Singularities of the discriminant curve that occur for constant-j
// threefolds, with the local equation of Y above them.

#include "ellthree/local_cohomology.hpp"

#include <string>
#include <vector>

namespace ellthree {

enum class EntryKind {
    Reduced,     // weighted homogeneous, reduced curve germ
    NonReduced,  // weighted homogeneous, non-reduced curve germ
    Table,       // not quasihomogeneous: encoded table
    Unsupported, // no method available
};

std::string to_string(EntryKind k);

struct CatalogueEntry {
    JCase j = JCase::Zero;
    EntryKind kind = EntryKind::Reduced;
    std::string name;
    std::string curve; // g(s, t); empty for table entries
    int a = 0, b = 0;  // curve weights of s, t

    WeightedGerm<Rational> germ() const;
};

/// Every reduced and non-reduced type the tool knows, in a fixed order:
/// j = 0 reduced, j = 0 table, j = 0 non-reduced, j = 1728, unsupported.
const std::vector<CatalogueEntry>& catalogue();

/// Routed h4 for one entry (Table entries via lookup_nonqh). Throws for
/// unsupported entries.
H4Report<Rational> catalogue_h4(const CatalogueEntry& e);

/// Lookup by (j, name); throws if absent.
const CatalogueEntry& catalogue_entry(JCase j, const std::string& name);

} // namespace ellthree
