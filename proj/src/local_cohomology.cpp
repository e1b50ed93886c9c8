#include "ellthree/local_cohomology.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace ellthree {

std::string to_string(H4Method m) {
    switch (m) {
    case H4Method::Dimca: return "Dimca";
    case H4Method::HK: return "HK";
    case H4Method::ThreeWeights: return "ThreeWeights";
    case H4Method::Table: return "Table";
    }
    return "?";
}

Weights germ_weights(JCase j, int a, int b, int D) {
    std::vector<int> w;
    switch (j) {
    case JCase::Zero: w = {6 * a, 6 * b, 2 * D, 3 * D}; break;
    case JCase::TwelveTwentyEight: w = {4 * a, 4 * b, 2 * D, 3 * D}; break;
    case JCase::Generic: throw std::invalid_argument("generic j has no weighted homogeneous local model");
    }
    int g = 0;
    for (int x : w)
        g = std::gcd(g, x);
    for (int& x : w)
        x /= g;
    return Weights(std::move(w));
}

// ---------------------------------------------------------------------------
// Critical points of y^2 - x^3 - g and y^2 - x^3 - g x

namespace {

// Extended Euclid: returns (alpha, beta) with p*alpha - q*beta = 1.
std::pair<long, long> bezout(long p, long q) {
    long r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long k = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
    }
    if (r0 != 1)
        throw std::logic_error("bezout: arguments not coprime");
    return {s0, -t0};
}

Rational rpow(const Rational& u, long e) {
    return e >= 0 ? power(u, static_cast<unsigned>(e)) : Rational(1) / power(u, static_cast<unsigned>(-e));
}

} // namespace

std::vector<HKPoint<Rational>> find_hk_points(const WeightedGerm<Rational>& g) {
    const auto& f = g.f;
    if (f.nvars() != 4)
        throw std::invalid_argument("find_hk_points: expected a germ in (s, t, x, y)");
    // Shape check: y^2, x^3, and terms g0(s,t) or x*g1(s,t).
    bool pure = false, linear_x = false;
    for (const auto& [m, c] : f.terms()) {
        if (m == Monomial{0, 0, 0, 2} || m == Monomial{0, 0, 3, 0})
            continue;
        if (m[3] == 0 && m[2] == 0)
            pure = true;
        else if (m[3] == 0 && m[2] == 1)
            linear_x = true;
        else
            throw std::invalid_argument("cannot locate critical points of " + f.str() +
                                        " automatically: supply [hk_point] blocks");
    }
    if (is_zero(f.coefficient({0, 0, 0, 2})) || is_zero(f.coefficient({0, 0, 3, 0})) || (pure && linear_x))
        throw std::invalid_argument("cannot locate critical points of " + f.str() +
                                    " automatically: supply [hk_point] blocks");

    // Every critical point has x = y = 0; what remains are binary forms in s, t.
    const std::vector<std::string> st{"s", "t"};
    const std::vector<Poly<Rational>> sub{Poly<Rational>::variable(st, 0), Poly<Rational>::variable(st, 1),
                                          Poly<Rational>(st), Poly<Rational>(st)};
    std::vector<Poly<Rational>> eqs;
    for (const auto& d : partials(f)) {
        auto r = compose(d, sub);
        if (!r.is_zero())
            eqs.push_back(std::move(r));
    }
    if (linear_x) { // x-coefficient g1 itself must vanish
        Poly<Rational> g1(st);
        for (const auto& [m, c] : f.terms())
            if (m[2] == 1 && m[3] == 0)
                g1.add_term({m[0], m[1]}, c);
        eqs.push_back(std::move(g1));
    }

    const int a = g.weights[0], b = g.weights[1];
    const int gab = std::gcd(a, b), ap = a / gab, bp = b / gab;
    std::vector<std::vector<Rational>> found;
    auto vanishes = [&](const std::vector<Rational>& p) {
        for (const auto& e : eqs)
            if (!is_zero(evaluate(e, p)))
                return false;
        return true;
    };
    if (vanishes({Rational(1), Rational(0)}))
        found.push_back({Rational(1), Rational(0)});
    if (vanishes({Rational(0), Rational(1)}))
        found.push_back({Rational(0), Rational(1)});

    // On the torus: u = s^b' / t^a', each form is s^i0 t^jmax H(u).
    std::optional<UPoly<Rational>> common;
    for (const auto& e : eqs) {
        int i0 = 1 << 30, jmax = -1;
        for (const auto& [m, c] : e.terms()) {
            i0 = std::min(i0, m[0]);
            jmax = std::max(jmax, m[1]);
        }
        std::vector<Rational> h;
        for (const auto& [m, c] : e.terms()) {
            if ((m[0] - i0) % bp != 0)
                throw std::logic_error("find_hk_points: form is not weighted homogeneous");
            const auto k = static_cast<std::size_t>((m[0] - i0) / bp);
            if (h.size() <= k)
                h.resize(k + 1, Rational(0));
            h[k] += c;
        }
        UPoly<Rational> H(std::move(h));
        common = common ? gcd(*common, H) : H.monic();
    }
    if (!common)
        throw std::invalid_argument("critical locus of " + f.str() + " is not finite: supply [hk_point] blocks");
    if (common->degree() > 0) {
        // strip u = 0 (those are the coordinate points)
        UPoly<Rational> h = *common;
        while (h.degree() > 0 && is_zero(h[0]))
            h = h.divmod(UPoly<Rational>({Rational(0), Rational(1)})).first;
        const auto roots = rational_roots(h);
        int sqfree_degree = 0;
        for (const auto& fac : squarefree_decomposition(h))
            sqfree_degree += fac.factor.degree();
        if (static_cast<int>(roots.size()) != sqfree_degree)
            throw std::invalid_argument("critical points of " + f.str() +
                                        " are not all rational: supply [hk_point] blocks");
        const auto [alpha, beta] = bezout(bp, ap);
        for (const auto& u : roots)
            found.push_back({rpow(u, alpha), rpow(u, beta)});
    }

    std::vector<HKPoint<Rational>> out;
    for (auto& p : found) {
        std::vector<Rational> c{p[0], p[1], Rational(0), Rational(0)};
        auto q = make_hk_point(g.weights, std::move(c));
        validate_hk_point(f, q);
        out.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Table of non-quasihomogeneous types

std::string SingKey::str() const {
    if (family == "S")
        return "S_" + std::to_string(k);
    return family + "_{" + std::to_string(k) + "," + std::to_string(l) + "}";
}

SingKey parse_sing_key(const std::string& name) {
    static const std::regex two(R"(\s*(C|yC|D|F)_?\{?\s*(\d+)\s*,\s*(\d+)\s*\}?\s*)");
    static const std::regex one(R"(\s*S_?\{?(\d+)\}?\s*)");
    std::smatch m;
    if (std::regex_match(name, m, two))
        return {m[1], std::stoi(m[2]), std::stoi(m[3])};
    if (std::regex_match(name, m, one))
        return {"S", std::stoi(m[1]), 0};
    throw std::invalid_argument("unknown singularity name '" + name + "'");
}

bool in_table_range(const SingKey& key) {
    const int k = key.k, l = key.l;
    auto hyperbolic = [&] { return k <= l && 2 * (k + l) <= k * l; };
    if (key.family == "C") {
        static const int bound[] = {15, 14, 14, 12, 11, 11, 9}; // largest l for k = 3..9
        return k >= 3 && k <= 9 && hyperbolic() && l <= bound[k - 3];
    }
    if (key.family == "yC") {
        if (!hyperbolic())
            return false;
        return (k == 3 && l >= 7 && l <= 12) || (k == 5 && (l == 5 || l == 6));
    }
    if (key.family == "D") {
        if (k == 3)
            return l >= 9 && l <= 13;
        static const std::set<std::pair<int, int>> rest{{4, 7}, {5, 6}, {5, 7}, {6, 5}, {6, 6}, {6, 7}};
        return rest.contains({k, l});
    }
    if (key.family == "F")
        return 6 <= k && k <= l && l <= 7;
    if (key.family == "S")
        return k >= 1 && k <= 6;
    return false;
}

H4Report<Rational> lookup_nonqh(const SingKey& key) {
    // Below the hyperbolic range x^3 + y^l + x^2 y^2 (l = 3, 4, 5) is
    // semi-quasihomogeneous with principal part x^3 + y^l: D_4, E_6, E_8.
    if (key.family == "C" && key.k == 3 && key.l >= 3 && key.l <= 5) {
        const auto g = threefold_germ(JCase::Zero, parse_poly("t^3 + s^" + std::to_string(key.l), {"s", "t"}), 3,
                                      key.l);
        auto rep = compute_h4(g);
        rep.provenance += "; principal part t^3 + s^" + std::to_string(key.l) + " of " + key.str();
        return rep;
    }
    if (!in_table_range(key))
        throw std::invalid_argument("singularity " + key.str() + " is not in the encoded table");
    H4Report<Rational> rep;
    rep.method = H4Method::Table;
    rep.provenance = "encoded table (monodromy on the Brieskorn lattice, not computed here)";
    int h = 0;
    if (key.family == "C") {
        const int div = (key.k % 3 == 0) + (key.l % 3 == 0);
        h = div == 2 ? 4 : div == 1 ? 2 : 0;
    } else if (key.family == "S") {
        h = (key.k == 3 || key.k == 6) ? 2 : 0;
    }
    // Pure (2,2) type: the eigenvalue-one part sits in the middle weight.
    rep.h22 = h;
    return rep;
}

std::vector<SingKey> nonqh_catalogue() {
    std::vector<SingKey> out;
    for (const std::string fam : {"C", "yC", "D", "F"})
        for (int k = 1; k <= 15; ++k)
            for (int l = 1; l <= 15; ++l)
                if (in_table_range({fam, k, l}))
                    out.push_back({fam, k, l});
    for (int k = 1; k <= 6; ++k)
        out.push_back({"S", k, 0});
    return out;
}

// ---------------------------------------------------------------------------
// Monodromy rotations

namespace {
Rational frac(const Rational& r) {
    const mpz_class n = r.numerator(), d = r.denominator();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r - Rational(q);
}
} // namespace

std::vector<Rational> suspension_eigenvalues(const std::vector<Rational>& eigs, int d) {
    if (d < 2)
        throw std::invalid_argument("suspension_eigenvalues: d must be at least 2");
    std::vector<Rational> out;
    for (const auto& e : eigs)
        for (int j = 1; j < d; ++j)
            out.push_back(frac(e + Rational(j, d)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> wh_spectrum(const Poly<Rational>& f, const Weights& w) {
    const auto d = is_weighted_homogeneous(f, w);
    if (!d)
        throw std::invalid_argument("wh_spectrum: " + f.str() + " is not weighted homogeneous");
    const auto g = WeightedGerm<Rational>::make(f, w);
    if (!is_isolated(g))
        throw std::invalid_argument("wh_spectrum: " + f.str() + " is not isolated");
    std::vector<Rational> out;
    for (int k = 0; k <= std::max(0, socle_degree(g)); ++k) {
        const GradedPiece<Rational> piece(g, k);
        for (const auto& m : piece.basis()) {
            long num = 0;
            for (std::size_t i = 0; i < m.size(); ++i)
                num += static_cast<long>(m[i] + 1) * w[i];
            out.push_back(frac(Rational(num, *d)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int h4_from_curve_spectrum(const std::vector<Rational>& curve_rotations) {
    const auto three = suspension_eigenvalues(suspension_eigenvalues(curve_rotations, 2), 3);
    return static_cast<int>(std::count_if(three.begin(), three.end(), [](const Rational& r) { return is_zero(r); }));
}

bool is_unsupported_type(const std::string& label) {
    static const std::regex re(R"(\s*\(\s*A_?\{?(\d+)\}?\s*,\s*(\d+)\s*\)\s*)");
    std::smatch m;
    if (!std::regex_match(label, m, re))
        return false;
    const int k = std::stoi(m[1]), c = std::stoi(m[2]);
    return (c == 4 && k >= 4 && k <= 7) || (k == 1 && (c == 3 || c == 4));
}

} // namespace ellthree
