#pragma once

// Local cohomology h^4_p(Y) of a singular point of a constant-j Weierstrass
// threefold: Dimca's graded formula for isolated germs, the kernel of the
// evaluation into local Milnor algebras for non-isolated ones, the three
// weights reduction, and an encoded table for the non-quasihomogeneous types.

#include "ellthree/graded_jacobian.hpp"
#include "ellthree/surface_tables.hpp"
#include "ellthree/upoly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ellthree {

enum class H4Method { Dimca, HK, ThreeWeights, Table };

std::string to_string(H4Method m);

/// A point of the critical locus of f_p in weighted projective space.
template <ExactField F>
struct HKPoint {
    std::vector<F> coords;          // (s, t, x, y)
    std::size_t chart = 0;          // coordinate kept fixed in the affine slice
    DiagonalCharacter stabilizer;   // on all four variables; chart entry unused
    std::string label;              // optional transversal type annotation
    // filled in by hk_h4
    int milnor_dim = 0;
    int invariant_dim = 0;
    int jet_order = 0;
};

template <ExactField F>
struct H4Report {
    int h31 = 0, h22 = 0, h13 = 0;
    H4Method method = H4Method::Dimca;
    std::string provenance;
    std::vector<std::string> notes;
    std::vector<Poly<F>> generators;

    // Localisation data for the middle piece R_{2d-w} of the germ itself.
    std::optional<WeightedGerm<F>> germ;
    std::shared_ptr<const GradedPiece<F>> middle;
    Matrix<F> middle_kernel; // columns: generators of the (2,2) part in middle-basis coordinates
    std::vector<HKPoint<F>> points;

    int h4() const { return h31 + h22 + h13; }
};

// ---------------------------------------------------------------------------
// Weights and the three weights trick

/// Divides all weights and the degree by their common gcd.
template <ExactField F>
WeightedGerm<F> normalize_weights(const WeightedGerm<F>& g) {
    int c = std::gcd(g.weights.gcd(), g.degree);
    if (c <= 1)
        return g;
    std::vector<int> w = g.weights.w;
    for (int& x : w)
        x /= c;
    return WeightedGerm<F>{g.f, Weights(std::move(w)), g.degree / c};
}

struct ThreeWeightsStep {
    std::size_t index; // the distinguished variable
    int gamma;         // common divisor of the other three weights
};

/// An index i whose complementary weights share gamma > 1 with gamma not
/// dividing w_i, such that every exponent of v_i in f is divisible by gamma.
template <ExactField F>
std::optional<ThreeWeightsStep> three_weights_step(const WeightedGerm<F>& g) {
    const auto& w = g.weights;
    // Last variable first: for Weierstrass germs this prefers y, then x.
    for (std::size_t i = w.size(); i-- > 0;) {
        int gamma = 0;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (j != i)
                gamma = std::gcd(gamma, w[j]);
        if (gamma <= 1 || w[i] % gamma == 0)
            continue;
        bool divisible = true;
        for (const auto& [m, c] : g.f.terms())
            if (m[i] % gamma != 0)
                divisible = false;
        if (divisible)
            return ThreeWeightsStep{i, gamma};
    }
    return std::nullopt;
}

/// One application of the three weights isomorphism: v_i^gamma -> v_i, the
/// other weights divided by gamma.
template <ExactField F>
WeightedGerm<F> three_weights_reduce(const WeightedGerm<F>& g) {
    const auto step = three_weights_step(g);
    if (!step)
        throw std::invalid_argument("three weights trick not applicable: no three weights share a divisor "
                                    "coprime to the fourth");
    Poly<F> f(g.f.variables());
    for (const auto& [m, c] : g.f.terms()) {
        Monomial r = m;
        r[step->index] /= step->gamma;
        f.add_term(r, c);
    }
    std::vector<int> w = g.weights.w;
    for (std::size_t j = 0; j < w.size(); ++j)
        if (j != step->index)
            w[j] /= step->gamma;
    return normalize_weights(WeightedGerm<F>::make(std::move(f), Weights(std::move(w))));
}

/// True when f has a term of total degree 1, i.e. 1 lies in its Jacobian ideal.
template <ExactField F>
bool has_linear_term(const Poly<F>& f) {
    for (const auto& [m, c] : f.terms())
        if (total_degree(m) == 1)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Dimca

template <ExactField F>
H4Report<F> dimca_h4(const WeightedGerm<F>& g) {
    if (!is_isolated(g))
        throw std::invalid_argument("dimca_h4: germ " + g.f.str() + " has a non-isolated singularity");
    H4Report<F> rep;
    rep.method = H4Method::Dimca;
    rep.provenance = "Dimca: H^4_p = R_{d-w} + R_{2d-w} + R_{3d-w}";
    rep.germ = g;
    const int d = g.degree, w = g.total_weight();
    GradedPiece<F> low(g, d - w), high(g, 3 * d - w);
    rep.middle = std::make_shared<const GradedPiece<F>>(g, 2 * d - w);
    rep.h31 = low.dim();
    rep.h22 = rep.middle->dim();
    rep.h13 = high.dim();
    for (const GradedPiece<F>* piece : {static_cast<const GradedPiece<F>*>(&low), rep.middle.get(), static_cast<const GradedPiece<F>*>(&high)})
        for (const auto& m : piece->basis())
            rep.generators.push_back(Poly<F>::monomial(g.f.variables(), m));
    rep.middle_kernel = Matrix<F>::Identity(rep.h22, rep.h22);
    if (d >= w)
        rep.notes.push_back("d >= w: the (3,1) and (1,3) parts need not vanish");
    return rep;
}

// ---------------------------------------------------------------------------
// Non-isolated germs: kernel of the evaluation into local Milnor algebras

/// Variables and the local generators of the Milnor algebra of S_p at q in
/// the affine slice v_chart = q_chart: all partials of f restricted to the
/// slice and translated to q.
template <ExactField F>
std::pair<std::vector<std::string>, std::vector<Poly<F>>> local_slice(const Poly<F>& f, const HKPoint<F>& q,
                                                                       std::vector<std::size_t>& others) {
    const auto& vars = f.variables();
    std::vector<std::string> lv;
    others.clear();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (i != q.chart) {
            others.push_back(i);
            lv.push_back(vars[i]);
        }
    std::vector<Poly<F>> images;
    for (std::size_t i = 0, k = 0; i < vars.size(); ++i) {
        if (i == q.chart) {
            images.push_back(Poly<F>::constant(lv, q.coords[i]));
        } else {
            Poly<F> img = Poly<F>::variable(lv, k++);
            img += Poly<F>::constant(lv, q.coords[i]);
            images.push_back(std::move(img));
        }
    }
    std::vector<Poly<F>> gens;
    for (const auto& d : partials(f))
        gens.push_back(compose(d, images));
    return {lv, gens};
}

/// Evaluation of a global polynomial in the slice at q.
template <ExactField F>
Poly<F> to_slice(const Poly<F>& h, const HKPoint<F>& q, const std::vector<std::string>& lv) {
    std::vector<Poly<F>> images;
    for (std::size_t i = 0, k = 0; i < h.nvars(); ++i) {
        if (i == q.chart) {
            images.push_back(Poly<F>::constant(lv, q.coords[i]));
        } else {
            Poly<F> img = Poly<F>::variable(lv, k++);
            img += Poly<F>::constant(lv, q.coords[i]);
            images.push_back(std::move(img));
        }
    }
    return compose(h, images);
}

/// Stabiliser of q in the slice group mu_{w_chart}: the subgroup mu_g with g
/// the gcd of the weights of the nonzero coordinates, acting by zeta^{w_i}.
template <ExactField F>
DiagonalCharacter point_stabilizer(const Weights& w, const std::vector<F>& q) {
    int g = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!is_zero(q[i]))
            g = std::gcd(g, w[i]);
    DiagonalCharacter c;
    c.order = g;
    for (std::size_t i = 0; i < q.size(); ++i)
        c.exponents.push_back(w[i] % g);
    return c;
}

template <ExactField F>
HKPoint<F> make_hk_point(const Weights& w, std::vector<F> coords, std::string label = {}) {
    HKPoint<F> q;
    q.chart = default_chart(coords);
    q.stabilizer = point_stabilizer(w, coords);
    q.coords = std::move(coords);
    q.label = std::move(label);
    return q;
}

/// Critical points of germs y^2 = x^3 + g(s,t) or y^2 = x^3 + g(s,t) x (any
/// signs and scalars). For these shapes every critical point has x = y = 0,
/// and (s:t) runs over the common zeros of the restricted partials in
/// P(w_s, w_t). Throws when a zero is not rational.
std::vector<HKPoint<Rational>> find_hk_points(const WeightedGerm<Rational>& g);

/// f itself when every coefficient is rational.
template <ExactField F>
std::optional<Poly<Rational>> rational_form(const Poly<F>& f) {
    if constexpr (std::same_as<F, Rational>) {
        return f;
    } else {
        Poly<Rational> out(f.variables());
        for (const auto& [m, c] : f.terms()) {
            if (!c.is_rational())
                return std::nullopt;
            out.add_term(m, c.re());
        }
        return out;
    }
}

template <ExactField F>
void validate_hk_point(const Poly<F>& f, const HKPoint<F>& q) {
    if (q.coords.size() != f.nvars())
        throw std::invalid_argument("singular point has the wrong number of coordinates");
    if (q.chart >= q.coords.size() || is_zero(q.coords[q.chart]))
        throw std::invalid_argument("singular point chart coordinate is zero");
    for (const auto& d : partials(f))
        if (!is_zero(evaluate(d, q.coords)))
            throw std::invalid_argument("supplied point is not a critical point of " + f.str());
}

template <ExactField F>
std::string point_string(const std::vector<F>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? ":" : "") + to_string(p[i]);
    return s + ")";
}

/// h22 = dim ker(R_{2d-w} -> sum_q M_q^{G_q}), h31 = h13 = dim R_{d-w}.
template <ExactField F>
H4Report<F> hk_h4(const WeightedGerm<F>& g, std::vector<HKPoint<F>> points, bool points_found = false) {
    H4Report<F> rep;
    rep.method = H4Method::HK;
    rep.provenance = "evaluation kernel: h22 = dim ker(R_{2d-w} -> sum of local Milnor algebras)";
    rep.germ = g;
    const int d = g.degree, w = g.total_weight();
    GradedPiece<F> low(g, d - w);
    rep.h31 = rep.h13 = low.dim();
    rep.middle = std::make_shared<const GradedPiece<F>>(g, 2 * d - w);
    const int r = rep.middle->dim();

    std::vector<std::vector<Vector<F>>> rows; // per point, per basis element
    int total_rows = 0;
    for (auto& q : points) {
        validate_hk_point(g.f, q);
        std::vector<std::size_t> others;
        auto [lv, gens] = local_slice(g.f, q, others);
        auto milnor = stable_milnor_algebra(gens, lv, 3, 40, point_string(q.coords));
        DiagonalCharacter local_action;
        local_action.order = q.stabilizer.order;
        for (std::size_t i : others)
            local_action.exponents.push_back(q.stabilizer.exponents.at(i));
        const auto inv = invariant_subalgebra(milnor, local_action);
        q.milnor_dim = milnor.dim();
        q.invariant_dim = inv.dim();
        q.jet_order = milnor.order;
        std::vector<int> keep;
        for (int b = 0; b < milnor.dim(); ++b)
            if (local_action.fixes(milnor.basis[static_cast<std::size_t>(b)]))
                keep.push_back(b);
        std::vector<Vector<F>> cols;
        for (const auto& m : rep.middle->basis()) {
            const auto full = milnor.algebra->coordinates(to_slice(Poly<F>::monomial(g.f.variables(), m), q, lv));
            Vector<F> v(static_cast<Eigen::Index>(keep.size()));
            for (std::size_t k = 0; k < keep.size(); ++k)
                v(static_cast<Eigen::Index>(k)) = full(keep[k]);
            cols.push_back(std::move(v));
        }
        total_rows += static_cast<int>(keep.size());
        rows.push_back(std::move(cols));
    }
    Matrix<F> E = Matrix<F>::Zero(total_rows, r);
    int row0 = 0;
    for (const auto& per_point : rows) {
        const int n = per_point.empty() ? 0 : static_cast<int>(per_point.front().size());
        for (int c = 0; c < r; ++c)
            for (int i = 0; i < n; ++i)
                E(row0 + i, c) = per_point[static_cast<std::size_t>(c)](i);
        row0 += n;
    }
    rep.middle_kernel = total_rows == 0 ? Matrix<F>(Matrix<F>::Identity(r, r)) : kernel<F>(E);
    rep.h22 = static_cast<int>(rep.middle_kernel.cols());
    for (const auto& m : low.basis())
        rep.generators.push_back(Poly<F>::monomial(g.f.variables(), m));
    for (Eigen::Index k = 0; k < rep.middle_kernel.cols(); ++k)
        rep.generators.push_back(rep.middle->combination(rep.middle_kernel.col(k)));
    for (const auto& m : low.basis()) // (1,3) part, dual to (3,1)
        rep.generators.push_back(Poly<F>::monomial(g.f.variables(), m));
    rep.points = std::move(points);
    rep.notes.push_back(points_found ? "critical points found from the germ's normal form"
                                     : "critical points supplied by the caller; completeness is asserted");
    return rep;
}

// ---------------------------------------------------------------------------
// Routing

template <ExactField F>
struct H4Options {
    std::optional<std::vector<HKPoint<F>>> points; // supplied critical points (HK case)
    bool try_three_weights = true;
};

/// Dimca for isolated germs, the evaluation kernel otherwise; the three weights
/// trick first whenever it proves vanishing.
template <ExactField F>
H4Report<F> compute_h4(const WeightedGerm<F>& g0, const H4Options<F>& opt = {}) {
    const WeightedGerm<F> g = normalize_weights(g0);
    if (opt.try_three_weights) {
        WeightedGerm<F> cur = g;
        std::string chain;
        for (int guard = 0; guard < 8; ++guard) {
            const auto step = three_weights_step(cur);
            if (!step)
                break;
            cur = three_weights_reduce(cur);
            chain += (chain.empty() ? "" : "; ") + cur.f.str() + " in P(" + [&] {
                std::string s;
                for (std::size_t i = 0; i < cur.weights.size(); ++i)
                    s += (i ? "," : "") + std::to_string(cur.weights[i]);
                return s;
            }() + ")";
            if (has_linear_term(cur.f)) {
                H4Report<F> rep;
                rep.method = H4Method::ThreeWeights;
                rep.provenance = "three weights trick: reduced germ has a linear term, so R = 0";
                rep.notes.push_back("reduction: " + chain);
                rep.germ = g;
                return rep;
            }
        }
    }
    if (is_isolated(g))
        return dimca_h4(g);
    if (opt.points)
        return hk_h4(g, *opt.points, false);
    if constexpr (std::same_as<F, Rational>) {
        return hk_h4(g, find_hk_points(g), true);
    } else {
        // A germ with rational coefficients still has its points found over Q.
        auto gq = rational_form(g.f);
        if (!gq)
            throw std::invalid_argument("non-isolated germ over an extension field: supply its critical points");
        std::vector<HKPoint<F>> pts;
        for (const auto& q : find_hk_points(WeightedGerm<Rational>{*gq, g.weights, g.degree})) {
            std::vector<F> c;
            for (const auto& x : q.coords)
                c.push_back(embed<F>(x));
            pts.push_back(make_hk_point(g.weights, std::move(c), q.label));
        }
        return hk_h4(g, std::move(pts), true);
    }
}

// ---------------------------------------------------------------------------
// Germ construction from a plane curve germ


/// Weights of (s, t, x, y) for y^2 = x^3 + g (j = 0) or y^2 = x^3 + g x
/// (j = 1728), from curve weights (a, b) of (s, t) and the curve degree D.
Weights germ_weights(JCase j, int a, int b, int D);

/// f = y^2 - x^3 - g  or  y^2 - x^3 - g x  over (s, t, x, y).
template <ExactField F>
WeightedGerm<F> threefold_germ(JCase j, const Poly<F>& g_st, int a, int b) {
    if (g_st.nvars() != 2)
        throw std::invalid_argument("curve germ must be in (s, t)");
    auto D = is_weighted_homogeneous(g_st, Weights{a, b});
    if (!D)
        throw std::invalid_argument("curve germ " + g_st.str() + " is not weighted homogeneous for weights (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
    static const std::vector<std::string> V{"s", "t", "x", "y"};
    std::vector<Poly<F>> lift{Poly<F>::variable(V, 0), Poly<F>::variable(V, 1)};
    const Poly<F> g4 = compose(g_st.with_variables({"s", "t"}), lift);
    const Poly<F> x = Poly<F>::variable(V, 2), y = Poly<F>::variable(V, 3);
    Poly<F> f = y * y - x * x * x;
    f -= (j == JCase::TwelveTwentyEight) ? g4 * x : g4;
    return normalize_weights(WeightedGerm<F>::make(std::move(f), germ_weights(j, a, b, *D)));
}

// ---------------------------------------------------------------------------
// Non-quasihomogeneous table and monodromy bookkeeping

struct SingKey {
    std::string family; // "C", "yC", "D", "F", "S"
    int k = 0;
    int l = 0;          // unused for S
    std::string str() const;
};

/// Parses names such as "C_{3,6}", "yC_{3,7}", "S_3", "S3".
SingKey parse_sing_key(const std::string& name);

/// Whether (family, k, l) lies in the encoded parameter ranges.
bool in_table_range(const SingKey& key);

H4Report<Rational> lookup_nonqh(const SingKey& key);

/// Every key in the encoded ranges.
std::vector<SingKey> nonqh_catalogue();

/// { e + j/d mod 1 : e in eigs, j = 1..d-1 }, sorted.
std::vector<Rational> suspension_eigenvalues(const std::vector<Rational>& eigs, int d);

/// Rotation numbers of the monodromy of a weighted homogeneous isolated
/// germ: (sum_i (e_i + 1) w_i) / d mod 1 for each Milnor basis monomial.
std::vector<Rational> wh_spectrum(const Poly<Rational>& f, const Weights& w);

/// h^4_p of y^2 + x^3 + g from the monodromy rotations of the curve g: the
/// multiplicity of rotation 0 after suspending by 2 and then by 3.
int h4_from_curve_spectrum(const std::vector<Rational>& curve_rotations);

/// The types without a method: (A_k,4) for k >= 4 and the node met by the
/// line with contact 3 or 4.
bool is_unsupported_type(const std::string& label);

} // namespace ellthree
