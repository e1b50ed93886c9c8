#include "ellthree/catalogue.hpp"

namespace ellthree {

std::string to_string(EntryKind k) {
    switch (k) {
    case EntryKind::Reduced: return "reduced";
    case EntryKind::NonReduced: return "non-reduced";
    case EntryKind::Table: return "table";
    case EntryKind::Unsupported: return "unsupported";
    }
    return "?";
}

WeightedGerm<Rational> CatalogueEntry::germ() const {
    if (curve.empty())
        throw std::invalid_argument(name + " has no weighted homogeneous local equation");
    return threefold_germ(j, parse_poly(curve, {"s", "t"}), a, b);
}

namespace {

std::string num(int k) { return std::to_string(k); }
std::string idx(const std::string& base, int k) { return base + "_" + num(k); }
std::string idx2(const std::string& base, int k, int l) { return base + "_{" + num(k) + "," + num(l) + "}"; }

std::vector<CatalogueEntry> build() {
    std::vector<CatalogueEntry> out;
    auto add = [&](JCase j, EntryKind kind, std::string name, std::string curve, int a, int b) {
        out.push_back({j, kind, std::move(name), std::move(curve), a, b});
    };
    const auto Z = JCase::Zero, T = JCase::TwelveTwentyEight;
    const auto R = EntryKind::Reduced, N = EntryKind::NonReduced;

    // sextics, reduced
    for (int k = 1; k <= 19; ++k)
        add(Z, R, idx("A", k), "t^2 + s^" + num(k + 1), 2, k + 1);
    for (int k = 4; k <= 19; ++k)
        add(Z, R, idx("D", k), "s*t^2 + s^" + num(k - 1), 2, k - 2);
    add(Z, R, "E_6", "t^3 + s^4", 3, 4);
    add(Z, R, "E_7", "t^3 + s^3*t", 2, 3);
    add(Z, R, "E_8", "t^3 + s^5", 3, 5);
    std::vector<std::pair<int, int>> bkl;
    for (int l = 6; l <= 12; ++l)
        bkl.emplace_back(3, l);
    for (int k = 4; k <= 6; ++k)
        for (int l = k; l <= 6; ++l)
            if (k < 6) // a sextic with a sixfold point is six concurrent lines
                bkl.emplace_back(k, l);
    for (auto [k, l] : bkl)
        add(Z, R, idx2("B", k, l), "t^" + num(k) + " + s^" + num(l), k, l);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 5}})
        add(Z, R, idx2("xB", k, l), "t*(t^" + num(k) + " + s^" + num(l) + ")", k, l);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{3, 4}, {3, 5}, {3, 6}, {4, 5}})
        add(Z, R, idx2("yB", k, l), "s*(t^" + num(k) + " + s^" + num(l) + ")", k, l);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}})
        add(Z, R, idx2("xyB", k, l), "s*t*(t^" + num(k) + " + s^" + num(l) + ")", k, l);

    for (const auto& key : nonqh_catalogue())
        add(Z, EntryKind::Table, key.str(), "", 0, 0);

    // sextics, non-reduced
    add(Z, N, "t^2*s", "t^2*s", 1, 1);
    add(Z, N, "t^2*(t-s^3)", "t^2*(t - s^3)", 1, 3);
    add(Z, N, "t^3*s", "t^3*s", 3, 1);
    add(Z, N, "t^3*(t-s^2)", "t^3*(t - s^2)", 1, 2);
    add(Z, N, "t^4*s", "t^4*s", 2, 1);
    add(Z, N, "t^2*s^2", "t^2*s^2", 2, 1);
    for (int k = 1; k <= 2; ++k)
        add(Z, N, "bitangent_" + num(k), "t^2*(t + s^" + num(2 * k) + ")", 1, 2 * k);
    for (int k = 1; k <= 7; ++k)
        add(Z, N, "(A_" + num(k) + ",2)", "s^2*(t^2 + s^" + num(k + 1) + ")", 2, k + 1);
    add(Z, N, "(A_2,3)", "t^2*(t^2 + s^3)", 2, 3);
    add(Z, N, "(A_3,4)", "t^2*(t^2 + s^4)", 1, 2);
    add(Z, N, "triple_flex", "t^3*(t + s^3)", 1, 3);

    // quartics
    for (int k = 1; k <= 7; ++k)
        add(T, R, idx("A", k), "t^" + num(k + 1) + " - s^2", k + 1, 2);
    for (int k = 4; k <= 7; ++k)
        add(T, R, idx("D", k), "t*(t^" + num(k - 2) + " - s^2)", k - 2, 2);
    add(T, R, "E_6", "s^3 + t^4", 4, 3);
    add(T, R, "E_7", "s^3 + s*t^3", 3, 2);
    add(T, N, "s^2*t", "s^2*t", 1, 2);
    add(T, N, "s^2*(s-t^2)", "s^2*(s - t^2)", 2, 1);

    // no method: the (A_k,4) tangency for k >= 4 and a node met by the
    // double line with contact 3 or 4
    for (int k = 4; k <= 7; ++k)
        add(Z, EntryKind::Unsupported, "(A_" + num(k) + ",4)", "", 0, 0);
    for (int k = 3; k <= 4; ++k)
        add(Z, EntryKind::Unsupported, "(A_1," + num(k) + ")", "", 0, 0);
    return out;
}

} // namespace

const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> entries = build();
    return entries;
}

H4Report<Rational> catalogue_h4(const CatalogueEntry& e) {
    switch (e.kind) {
    case EntryKind::Table: return lookup_nonqh(parse_sing_key(e.name));
    case EntryKind::Unsupported:
        throw std::invalid_argument("no method computes h4 for the singularity " + e.name);
    default: return compute_h4(e.germ());
    }
}

const CatalogueEntry& catalogue_entry(JCase j, const std::string& name) {
    for (const auto& e : catalogue())
        if (e.j == j && e.name == name)
            return e;
    throw std::invalid_argument("no catalogue entry '" + name + "' for j = " + to_string(j));
}

} // namespace ellthree
