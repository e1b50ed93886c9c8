#pragma once

// Mordell-Weil group of y^2 = x^3 + A P^2 x + B P^3, y^2 = x^3 + Q x or
// y^2 = x^3 + R over P^2: torsion from the shape of the discriminant factor,
// rank as twice the cokernel of the global-to-local evaluation map on the
// x-eigenspace, the cusp theorem, and specialization bounds from lines.

#include "ellthree/local_cohomology.hpp"
#include "ellthree/surface_tables.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ellthree {

/// Two independent computations disagree. The CLI maps this to exit code 2.
struct CrossCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& plane_variables() {
    static const std::vector<std::string> v{"z0", "z1", "z2"};
    return v;
}
inline const std::vector<std::string>& germ_variables() {
    static const std::vector<std::string> v{"s", "t", "x", "y"};
    return v;
}

/// Degree of the curve C for each case: P (2), Q (4), R (6).
int curve_degree(JCase j);

template <ExactField F>
struct SingularPointAnnotation {
    std::vector<F> point;                  // (z0:z1:z2)
    std::vector<F> u, v;                   // local frame: z = p + s u + t v
    int a = 0, b = 0;                      // weights of (s, t) for the curve germ
    std::optional<Poly<F>> germ;           // local equation over (s, t, x, y); checked, not trusted
    std::vector<std::vector<F>> hk_points; // critical points of the germ, (s, t, x, y)
    std::string label;
};

template <ExactField F>
struct CuspConfig {
    std::vector<std::vector<F>> points;
    std::vector<std::vector<F>> directions;
};

template <ExactField F>
struct SectionWitness {
    Poly<F> x, y; // in z0, z1, z2
};

template <ExactField F>
struct ThreefoldInput {
    JCase j = JCase::Zero;
    Poly<Rational> C{plane_variables()}; // P, Q or R
    Rational A, B;                       // generic j only
    std::vector<SingularPointAnnotation<F>> points;
    std::optional<CuspConfig<F>> cusps;
    std::vector<SectionWitness<F>> sections;
};

// ---------------------------------------------------------------------------
// Torsion

struct TorsionWitness {
    std::string x, y;
    std::string field; // "Q", or Q adjoined a named root with its relation
    int order = 0;
    bool verified = false;
};

struct TorsionResult {
    std::vector<int> torsion; // invariant factors
    std::vector<TorsionWitness> witnesses;
    std::string reason;
};

/// The vertex p when C is a union of lines through p (possibly with
/// multiplicities). Such a C depends on two linear forms only, so the
/// directional derivative along p vanishes identically; conversely a kernel
/// vector of (d/dz0 C, d/dz1 C, d/dz2 C) is a vertex.
std::optional<std::vector<Rational>> cone_vertex(const Poly<Rational>& C);

/// Rejects a zero or wrongly graded C, a cone, and for generic j a singular
/// conic or a singular cubic X^3 + A X + B.
void validate_curve(JCase j, const Poly<Rational>& C, const Rational& A, const Rational& B);

/// Torsion and its sections; every section is substituted into the
/// Weierstrass equation over Q or over Q with one adjoined root.
TorsionResult detect_torsion(JCase j, const Poly<Rational>& C, const Rational& A = {}, const Rational& B = {});

// ---------------------------------------------------------------------------
// Specialization to lines

struct LineBound {
    std::vector<Rational> a, b; // the line through a and b
    std::vector<int> pattern;
    SurfaceClass surface;
};

struct SpecializationResult {
    std::vector<LineBound> samples;
    LineBound best; // minimum rank among samples with the most distinct roots
    std::string note;
};

LineBound restrict_along(JCase j, const Poly<Rational>& C, const std::vector<Rational>& a,
                         const std::vector<Rational>& b);

/// k lines through two random points with coordinates in [-1000, 1000].
SpecializationResult specialize_to_line(JCase j, const Poly<Rational>& C, std::uint64_t seed = 1, int k = 5);

// ---------------------------------------------------------------------------
// Reports

struct PointLine {
    std::string point;
    std::string label;
    int h4 = 0;
    bool known = true;
    std::string method; // Dimca, HK, ThreeWeights, Table, unsupported
    std::string ref;
    std::vector<std::string> generators;
    int x_rows = 0;
};

struct CuspSummary {
    int m = 0;
    int conic_coker = 0;
    int quartic_coker = 0;
    std::string conic_matrix, quartic_matrix;
};

struct MWReport {
    JCase j = JCase::Zero;
    std::vector<int> torsion;
    std::vector<TorsionWitness> torsion_witnesses;
    int rank_lo = 0, rank_hi = 0;
    std::optional<MWGroup> group;
    std::vector<PointLine> per_point;
    int total_h4 = 0;
    int eval_rows = 0, eval_rank = 0;
    std::string eval_matrix;
    std::optional<CuspSummary> cusp;
    std::optional<LineBound> bound;
    std::vector<std::string> notes;

    bool exact() const { return rank_lo == rank_hi; }
    std::string rank_str() const;
    std::string torsion_str() const;
    std::string group_str() const;
    /// RANK=.. TORSION=.. GROUP=.. and one POINT= line per annotation.
    std::string machine_block() const;
    std::string human(bool verbose = false) const;
};

std::string compact_monomial(const Monomial& m); // x, y, t, s order: "xts", "ts^3"
std::string compact_poly(const Poly<Rational>& p);

template <ExactField F>
std::string compact_poly(const Poly<F>& p) {
    if constexpr (std::same_as<F, Rational>) {
        return compact_poly(static_cast<const Poly<Rational>&>(p));
    } else {
        std::string out;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            const std::string c = to_string(it->second);
            out += (out.empty() ? "" : "+") + (c == "1" ? "" : c + "*") + compact_monomial(it->first);
        }
        return out.empty() ? "0" : out;
    }
}

/// Generators ordered x-part first, as printed by reports.
template <ExactField F>
std::vector<std::string> generator_names(const H4Report<F>& r) {
    std::vector<std::string> xs, rest;
    for (const auto& g : r.generators) {
        bool has_x = false;
        for (const auto& [m, c] : g.terms())
            has_x = has_x || m[2] > 0;
        (has_x ? xs : rest).push_back(compact_poly(g));
    }
    xs.insert(xs.end(), rest.begin(), rest.end());
    return xs;
}

template <ExactField F>
std::string matrix_string(const Matrix<F>& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s += "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += (j ? " " : "") + to_string(m(i, j));
        s += "]\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Per-point local data and the evaluation matrix

template <ExactField F>
struct PointAnalysis {
    SingularPointAnnotation<F> ann;
    std::optional<H4Report<F>> report;
    bool known = true;    // false for the unsupported types
    bool has_rows = true; // false for table values (no generators)
    int h4 = 0;
    std::string method, ref;
    Poly<F> local_curve{local_variables()}; // principal part of C at the point
    std::vector<int> x_index;               // middle-basis positions in the x-eigenspace
    Matrix<F> x_kernel;                     // columns: x-part of the (2,2) generators, rows: x_index
    Poly<F> phi_s{local_variables()}, phi_t{local_variables()}; // frame adapted to the principal part
    bool frame_adapted = true; // false: rows depend on the frame and are left out
    std::vector<std::string> notes;
    int rows() const { return static_cast<int>(x_kernel.cols()); }
};

/// The six monomials of C[z]_2 and fifteen of C[z]_4, descending.
const std::vector<Monomial>& plane_monomials(int degree);

namespace detail {

template <ExactField F>
std::vector<F> embed_point(const std::vector<Rational>& p) {
    std::vector<F> out;
    for (const auto& x : p)
        out.push_back(embed<F>(x));
    return out;
}

template <ExactField F>
bool on_singular_locus(const Poly<F>& C, const std::vector<F>& p) {
    if (!is_zero(evaluate(C, p)))
        return false;
    for (const auto& d : partials(C))
        if (!is_zero(evaluate(d, p)))
            return false;
    return true;
}

/// h(s, t) as a polynomial over (s, t, x, y).
template <ExactField F>
Poly<F> lift_st(const Poly<F>& h) {
    const auto& V = germ_variables();
    return compose(h.with_variables(local_variables()), {Poly<F>::variable(V, 0), Poly<F>::variable(V, 1)});
}

/// Curve part of a Weierstrass germ: the terms free of x and y (j = 0) or
/// linear in x and free of y (j = 1728), as a polynomial in (s, t).
template <ExactField F>
Poly<F> curve_part(JCase j, const Poly<F>& germ) {
    Poly<F> out(local_variables());
    const int xe = j == JCase::TwelveTwentyEight ? 1 : 0;
    for (const auto& [m, c] : germ.terms())
        if (m[2] == xe && m[3] == 0 && (m[0] + m[1] > 0))
            out.add_term(Monomial{m[0], m[1]}, c);
    return out;
}

template <ExactField F>
bool proportional(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero())
        return a.is_zero() && b.is_zero();
    const auto& [m, c] = a.leading_term();
    const F bc = b.coefficient(m);
    if (is_zero(bc))
        return false;
    return a * bc == b * c;
}

/// Coordinates (s, t) -> (phi_s, phi_t), the identity plus terms of higher
/// weighted degree, with loc(phi) = g0 up to weighted degree D + order, g0
/// the principal part of degree D. Order by order this solves
/// d_s g0 * da + d_t g0 * db = -error; g0 itself lies in its Jacobian ideal,
/// so no unit factor is needed. Throws when the error leaves the ideal, i.e.
/// C is not equivalent to its principal part to that order.
template <ExactField F>
std::pair<Poly<F>, Poly<F>> adapt_coordinates(const Poly<F>& loc, const Weights& w, int D, int order,
                                              const std::string& where) {
    const auto& lv = local_variables();
    Poly<F> a = Poly<F>::variable(lv, 0), b = Poly<F>::variable(lv, 1);
    const Poly<F> g0 = weighted_part(loc, w, D);
    const Poly<F> ds = derivative(g0, 0), dt = derivative(g0, 1);
    for (int k = 1; k <= order; ++k) {
        const Poly<F> err = weighted_part(compose(loc, {a, b}), w, D + k);
        if (err.is_zero())
            continue;
        const auto ma = monomials_of_weighted_degree(w, w[0] + k);
        const auto mb = monomials_of_weighted_degree(w, w[1] + k);
        const auto target = monomials_of_weighted_degree(w, D + k);
        std::map<Monomial, Eigen::Index> row;
        for (std::size_t i = 0; i < target.size(); ++i)
            row[target[i]] = static_cast<Eigen::Index>(i);
        Matrix<F> M = Matrix<F>::Zero(static_cast<Eigen::Index>(target.size()),
                                      static_cast<Eigen::Index>(ma.size() + mb.size()));
        auto fill = [&](const Poly<F>& image, std::size_t col) {
            for (const auto& [m, c] : image.terms())
                M(row.at(m), static_cast<Eigen::Index>(col)) = c;
        };
        for (std::size_t i = 0; i < ma.size(); ++i)
            fill(ds * Poly<F>::monomial(lv, ma[i]), i);
        for (std::size_t i = 0; i < mb.size(); ++i)
            fill(dt * Poly<F>::monomial(lv, mb[i]), ma.size() + i);
        Vector<F> rhs = Vector<F>::Zero(static_cast<Eigen::Index>(target.size()));
        for (const auto& [m, c] : err.terms())
            rhs(row.at(m)) = -c;
        const auto sol = solve<F>(M, rhs);
        if (!sol)
            throw std::invalid_argument("C is not equivalent to its principal part " + g0.str() + " at " + where +
                                        " up to weighted order " + std::to_string(D + k) +
                                        "; the frame does not give a weighted homogeneous germ");
        for (std::size_t i = 0; i < ma.size(); ++i)
            a.add_term(ma[i], (*sol)(static_cast<Eigen::Index>(i)));
        for (std::size_t i = 0; i < mb.size(); ++i)
            b.add_term(mb[i], (*sol)(static_cast<Eigen::Index>(ma.size() + i)));
    }
    return {a, b};
}

template <ExactField F>
Poly<F> jacobian_determinant(const Poly<F>& a, const Poly<F>& b) {
    return derivative(a, 0) * derivative(b, 1) - derivative(a, 1) * derivative(b, 0);
}

} // namespace detail

/// Local cohomology at one annotated point, with the x-eigenspace part of
/// the (2,2) generators.
template <ExactField F>
PointAnalysis<F> analyze_point(JCase j, const Poly<Rational>& C, const SingularPointAnnotation<F>& ann) {
    PointAnalysis<F> pa;
    pa.ann = ann;
    const Poly<F> CF = to_field<F>(C);
    const std::string where = point_string(ann.point);
    if (ann.point.size() != 3)
        throw std::invalid_argument("annotation point " + where + " needs three coordinates");
    if (!detail::on_singular_locus(CF, ann.point))
        throw std::invalid_argument("annotated point " + where + " is not a singular point of C");

    if (!ann.label.empty() && is_unsupported_type(ann.label)) {
        pa.known = false;
        pa.has_rows = false;
        pa.method = "unsupported";
        pa.ref = "no method for " + ann.label + "; h4 in {0, 2, 4} assumed";
        return pa;
    }
    if (!ann.label.empty()) {
        std::optional<SingKey> key;
        try {
            key = parse_sing_key(ann.label);
        } catch (const std::invalid_argument&) {
        }
        if (key) {
            const auto rep = lookup_nonqh(*key);
            pa.h4 = rep.h4();
            pa.has_rows = false;
            pa.method = to_string(rep.method);
            pa.ref = rep.provenance;
            return pa;
        }
    }

    if (ann.a <= 0 || ann.b <= 0)
        throw std::invalid_argument("annotation at " + where + " needs positive curve weights");
    const std::size_t chart = default_chart(ann.point);
    const Poly<F> local = local_expand(CF, ann.point, chart, ann.u, ann.v);
    const Weights cw{ann.a, ann.b};
    const auto low = lowest_weighted_degree(local, cw);
    if (!low)
        throw std::invalid_argument("C vanishes identically near " + where);
    pa.local_curve = weighted_part(local, cw, *low);
    if (ann.germ) {
        const Poly<F> cp = detail::curve_part(j, *ann.germ);
        if (!detail::proportional(cp, pa.local_curve))
            throw std::invalid_argument("annotation germ at " + where + " has curve part " + cp.str() +
                                        " but C expands to " + pa.local_curve.str() + " in the given frame");
    }
    const WeightedGerm<F> germ = threefold_germ(j, pa.local_curve, ann.a, ann.b);
    H4Options<F> opt;
    if (!ann.hk_points.empty()) {
        std::vector<HKPoint<F>> pts;
        for (const auto& q : ann.hk_points)
            pts.push_back(make_hk_point(germ.weights, q));
        opt.points = std::move(pts);
    }
    H4Report<F> rep = compute_h4(germ, opt);
    pa.h4 = rep.h4();
    pa.method = to_string(rep.method);
    pa.ref = rep.provenance;
    if (rep.method == H4Method::ThreeWeights || rep.h22 == 0) {
        pa.x_kernel = Matrix<F>(0, 0);
        pa.report = std::move(rep);
        return pa;
    }
    if (rep.h31 != 0)
        pa.notes.push_back("h31 = h13 = " + std::to_string(rep.h31) + " at " + where +
                           " do not meet the global (2,2) piece");

    // x-eigenspace of the middle basis; sigma multiplies x by a primitive
    // cube root (j = 0) or -1 (j = 1728)
    const int order = j == JCase::TwelveTwentyEight ? 2 : 3;
    const auto& basis = rep.middle->basis();
    std::vector<int> other;
    for (int b = 0; b < static_cast<int>(basis.size()); ++b)
        (basis[static_cast<std::size_t>(b)][2] % order == 1 ? pa.x_index : other).push_back(b);
    const Matrix<F>& K = rep.middle_kernel;
    Matrix<F> Kother(static_cast<Eigen::Index>(other.size()), K.cols());
    for (std::size_t r = 0; r < other.size(); ++r)
        Kother.row(static_cast<Eigen::Index>(r)) = K.row(other[r]);
    const Matrix<F> sub = K * kernel<F>(Kother);
    pa.x_kernel = Matrix<F>(static_cast<Eigen::Index>(pa.x_index.size()), sub.cols());
    for (std::size_t r = 0; r < pa.x_index.size(); ++r)
        pa.x_kernel.row(static_cast<Eigen::Index>(r)) = sub.row(pa.x_index[r]);
    if (2 * pa.x_kernel.cols() != rep.h22)
        throw CrossCheckError("eigenspaces of H4 at " + where + " differ in dimension: x-part " +
                              std::to_string(pa.x_kernel.cols()) + ", h22 = " + std::to_string(rep.h22));
    // x*m_j is read in degree 2d - w; corrections to the frame of relative
    // order k (curve weights) reach germ degree w_x + k * w_s / a.
    // For an isolated germ two adapted frames differ by a vector field
    // killing g0, a Koszul combination of its partials, and the change of
    // x*m_j*Jacobian is its divergence, which lies in the Jacobian ideal.
    // For a non-isolated germ that fails (t^2 (s^2 + t) is killed by
    // (3t + 2s^2, -2st)), so only frames in which C is already weighted
    // homogeneous to that order are used.
    const auto& gw = rep.germ->weights;
    const int reach = (rep.germ->middle_degree() - gw[2]) * ann.a / gw[0];
    if (rep.method == H4Method::Dimca) {
        std::tie(pa.phi_s, pa.phi_t) = detail::adapt_coordinates(local, cw, *low, reach, where);
    } else {
        pa.phi_s = Poly<F>::variable(local_variables(), 0);
        pa.phi_t = Poly<F>::variable(local_variables(), 1);
        for (int k = 1; k <= reach && pa.frame_adapted; ++k)
            pa.frame_adapted = weighted_part(local, cw, *low + k).is_zero();
        if (!pa.frame_adapted)
            pa.notes.push_back("C is not weighted homogeneous in the frame at " + where + " up to weighted order " +
                               std::to_string(*low + reach) + "; its rows depend on the frame and are left out");
    }
    pa.report = std::move(rep);
    return pa;
}

template <ExactField F>
struct EvaluationMatrix {
    Matrix<F> M;                         // rows: x-part generators, columns: x*m for m in C[z]_2
    std::vector<std::string> row_labels;
    std::vector<std::string> notes;
};

/// Row block of one point: the coordinates of the local class of x*m_j along
/// the x-part generators, complemented by quotient-basis monomials.
template <ExactField F>
Matrix<F> evaluation_rows(const PointAnalysis<F>& pa, std::vector<std::string>* notes = nullptr) {
    const int r = pa.rows();
    const auto& quads = plane_monomials(2);
    Matrix<F> out = Matrix<F>::Zero(r, static_cast<Eigen::Index>(quads.size()));
    if (r == 0)
        return out;
    const auto& rep = *pa.report;
    const auto& germ = *rep.germ;
    const int n = static_cast<int>(pa.x_index.size());
    // [x_kernel | unit vectors off its pivot rows] is invertible
    const auto piv = rref<F>(Matrix<F>(pa.x_kernel.transpose())).pivots;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int p : piv)
        used[static_cast<std::size_t>(p)] = true;
    Matrix<F> basis = Matrix<F>::Zero(n, n);
    basis.leftCols(r) = pa.x_kernel;
    int c = r;
    for (int i = 0; i < n; ++i)
        if (!used[static_cast<std::size_t>(i)])
            basis(i, c++) = F(1);
    const Poly<F> x = Poly<F>::variable(germ_variables(), 2);
    const Poly<F> jac = detail::jacobian_determinant(pa.phi_s, pa.phi_t);
    const std::size_t chart = default_chart(pa.ann.point);
    for (std::size_t col = 0; col < quads.size(); ++col) {
        const Poly<F> m = Poly<F>::monomial(plane_variables(), quads[col]);
        const Poly<F> ml = compose(local_expand(m, pa.ann.point, chart, pa.ann.u, pa.ann.v), {pa.phi_s, pa.phi_t});
        const Poly<F> h = detail::lift_st(ml * jac) * x;
        const Vector<F> full = rep.middle->coordinates(weighted_part(h, germ.weights, germ.middle_degree()));
        if (notes && !solve<F>(rep.middle_kernel, full))
            notes->push_back("local class of x*" + monomial_string(quads[col], plane_variables()) + " at " +
                             point_string(pa.ann.point) + " lies outside the kernel; projected");
        Vector<F> xc(n);
        for (int i = 0; i < n; ++i)
            xc(i) = full(pa.x_index[static_cast<std::size_t>(i)]);
        const auto alpha = solve<F>(basis, xc);
        if (!alpha)
            throw std::logic_error("evaluation_rows: complement is not a basis");
        for (int i = 0; i < r; ++i)
            out(i, static_cast<Eigen::Index>(col)) = (*alpha)(i);
    }
    return out;
}

template <ExactField F>
EvaluationMatrix<F> evaluation_matrix(const std::vector<PointAnalysis<F>>& pts) {
    EvaluationMatrix<F> em;
    int rows = 0;
    for (const auto& p : pts)
        rows += p.frame_adapted ? p.rows() : 0;
    em.M = Matrix<F>::Zero(rows, 6);
    int r0 = 0;
    for (const auto& p : pts) {
        if (p.rows() == 0 || !p.frame_adapted)
            continue;
        em.M.middleRows(r0, p.rows()) = evaluation_rows(p, &em.notes);
        for (int i = 0; i < p.rows(); ++i)
            em.row_labels.push_back(point_string(p.ann.point) + " #" + std::to_string(i));
        r0 += p.rows();
    }
    return em;
}

template <ExactField F>
EvaluationMatrix<F> evaluation_matrix(const ThreefoldInput<F>& in) {
    std::vector<PointAnalysis<F>> pts;
    for (const auto& a : in.points)
        pts.push_back(analyze_point(in.j, in.C, a));
    return evaluation_matrix(pts);
}

// ---------------------------------------------------------------------------
// Cusps

template <ExactField F>
struct CuspResult {
    int m = 0;
    Matrix<F> conic, quartic; // m x 6 and m x 15
    int conic_coker = 0, quartic_coker = 0;
    bool quartic_exact = false; // computed from the sextic rather than the plain derivative
    int rank() const { return 2 * conic_coker; }
};

namespace detail {

template <ExactField F>
bool collinear(const std::vector<F>& a, const std::vector<F>& b, const std::vector<F>& c) {
    Matrix<F> m(3, 3);
    for (int i = 0; i < 3; ++i) {
        m(0, i) = a[static_cast<std::size_t>(i)];
        m(1, i) = b[static_cast<std::size_t>(i)];
        m(2, i) = c[static_cast<std::size_t>(i)];
    }
    return rank<F>(m) < 3;
}

template <ExactField F>
Matrix<F> veronese(const std::vector<std::vector<F>>& pts, int degree) {
    const auto& mons = plane_monomials(degree);
    Matrix<F> m(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(mons.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < mons.size(); ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                evaluate(Poly<F>::monomial(plane_variables(), mons[k]), pts[i]);
    return m;
}

/// Direction moved into the tangent space of the chart where p has a 1.
template <ExactField F>
std::pair<std::vector<F>, std::vector<F>> chart_normalize(std::vector<F> p, std::vector<F> l) {
    const std::size_t c = default_chart(p);
    const F inv = F(1) / p[c];
    for (auto& x : p)
        x *= inv;
    const F lc = l[c];
    for (std::size_t i = 0; i < l.size(); ++i)
        l[i] -= lc * p[i];
    return {p, l};
}

inline std::string subset_string(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += (i ? "," : "") + std::to_string(idx[i] + 1);
    return s + "}";
}

} // namespace detail

/// Throws with the offending subset when four cusps are collinear or seven
/// lie on a conic; also rejects repeated points and zero directions.
template <ExactField F>
void check_cusp_hypotheses(const CuspConfig<F>& cfg) {
    const auto& P = cfg.points;
    const std::size_t m = P.size();
    if (m < 1 || m > 9)
        throw std::invalid_argument("a sextic has between 1 and 9 cusps, got " + std::to_string(m));
    if (cfg.directions.size() != m)
        throw std::invalid_argument("one direction per cusp is required");
    for (std::size_t i = 0; i < m; ++i) {
        if (P[i].size() != 3 || cfg.directions[i].size() != 3)
            throw std::invalid_argument("cusp points and directions need three coordinates");
        auto [p, l] = detail::chart_normalize(P[i], cfg.directions[i]);
        if (std::all_of(l.begin(), l.end(), [](const F& x) { return is_zero(x); }))
            throw std::invalid_argument("direction at cusp " + std::to_string(i + 1) + " is zero or equals the point");
        for (std::size_t k = i + 1; k < m; ++k) {
            Matrix<F> two(2, 3);
            for (int c = 0; c < 3; ++c) {
                two(0, c) = P[i][static_cast<std::size_t>(c)];
                two(1, c) = P[k][static_cast<std::size_t>(c)];
            }
            if (rank<F>(two) < 2)
                throw std::invalid_argument("cusps " + detail::subset_string({i, k}) + " coincide");
        }
    }
    // four on a line: some triple is collinear and a fourth point joins it
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                if (!detail::collinear(P[a], P[b], P[c]))
                    continue;
                for (std::size_t d = c + 1; d < m; ++d)
                    if (detail::collinear(P[a], P[b], P[d]))
                        throw std::invalid_argument("cusps " + detail::subset_string({a, b, c, d}) +
                                                    " are collinear");
            }
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != 7)
            continue;
        std::vector<std::size_t> idx;
        std::vector<std::vector<F>> sub;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) {
                idx.push_back(i);
                sub.push_back(P[i]);
            }
        if (rank<F>(detail::veronese(sub, 2)) < 6)
            throw std::invalid_argument("cusps " + detail::subset_string(idx) + " lie on a conic");
    }
}

/// The cuspidal tangent of C at p as a vector, from the quadratic part of
/// the local expansion (a perfect square L^2; the direction is ker L).
/// Throws unless p is an ordinary cusp.
template <ExactField F>
std::vector<F> cusp_direction(const Poly<Rational>& C, const std::vector<F>& p) {
    const Poly<F> CF = to_field<F>(C);
    if (!detail::on_singular_locus(CF, p))
        throw std::invalid_argument("cusp " + point_string(p) + " is not a singular point of C");
    const std::size_t c = default_chart(p);
    std::vector<F> e1(3, F(0)), e2(3, F(0));
    e1[(c + 1) % 3] = F(1);
    e2[(c + 2) % 3] = F(1);
    const Poly<F> loc = local_expand(CF, p, c, e1, e2);
    const F A = loc.coefficient({2, 0}), B = loc.coefficient({1, 1}), Cc = loc.coefficient({0, 2});
    if ((is_zero(A) && is_zero(B) && is_zero(Cc)) || !is_zero(B * B - F(4) * A * Cc))
        throw std::invalid_argument("C has no cusp at " + point_string(p) + ": tangent cone is not a double line");
    // L = alpha s + beta t with L^2 proportional to A s^2 + B st + C t^2
    F ds, dt; // kernel direction of L
    if (!is_zero(A)) {
        ds = -B / (F(2) * A);
        dt = F(1);
    } else {
        ds = F(1);
        dt = F(0);
    }
    F cubic(0);
    for (const auto& [m, coef] : loc.terms())
        if (m[0] + m[1] == 3)
            cubic += coef * power(ds, static_cast<unsigned>(m[0])) * power(dt, static_cast<unsigned>(m[1]));
    if (is_zero(cubic))
        throw std::invalid_argument("the cusp of C at " + point_string(p) + " is not ordinary");
    std::vector<F> dir(3);
    for (std::size_t i = 0; i < 3; ++i)
        dir[i] = ds * e1[i] + dt * e2[i];
    return dir;
}

/// Validates the configuration against C (ordinary cusp, matching tangent).
template <ExactField F>
void validate_cusps(const Poly<Rational>& C, const CuspConfig<F>& cfg) {
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        const auto dir = cusp_direction(C, cfg.points[i]);
        auto [p, l] = detail::chart_normalize(cfg.points[i], cfg.directions[i]);
        auto [p2, d] = detail::chart_normalize(cfg.points[i], dir);
        Matrix<F> two(2, 3);
        for (int k = 0; k < 3; ++k) {
            two(0, k) = l[static_cast<std::size_t>(k)];
            two(1, k) = d[static_cast<std::size_t>(k)];
        }
        if (rank<F>(two) != 1)
            throw std::invalid_argument("direction at cusp " + point_string(cfg.points[i]) +
                                        " is not the cuspidal tangent of C");
    }
}

/// Coefficients (alpha_i) of the functional f4 -> class of f4 * Omega / f^2
/// at an ordinary cusp, in the generator s of the non-x part of H4_p.
/// Local coordinates along (l, v) are adapted so that C = lambda t^2 + mu s^3
/// up to weighted order 8, enough for the s-coefficient of f4 * Jacobian.
template <ExactField F>
Vector<F> cusp_quartic_row(const Poly<Rational>& C, const std::vector<F>& p0, const std::vector<F>& l0) {
    auto [p, l] = detail::chart_normalize(p0, l0);
    const std::size_t c = default_chart(p);
    std::vector<F> v(3, F(0));
    for (std::size_t k = 0; k < 3; ++k) {
        if (k == c)
            continue;
        std::vector<F> e(3, F(0));
        e[k] = F(1);
        Matrix<F> two(2, 3);
        for (int i = 0; i < 3; ++i) {
            two(0, i) = l[static_cast<std::size_t>(i)];
            two(1, i) = e[static_cast<std::size_t>(i)];
        }
        if (rank<F>(two) == 2) {
            v = e;
            break;
        }
    }
    const Poly<F> loc = local_expand(to_field<F>(C), p, c, l, v);
    const Weights w{2, 3};
    const auto& lv = local_variables();
    const F mu = loc.coefficient({3, 0}), lambda = loc.coefficient({0, 2});
    if (is_zero(mu) || is_zero(lambda) || weighted_part(loc, w, 6) != Poly<F>::monomial(lv, {3, 0}, mu) +
                                                                      Poly<F>::monomial(lv, {0, 2}, lambda))
        throw std::invalid_argument("no ordinary cusp with tangent " + point_string(l0) + " at " + point_string(p0));
    const auto [a, b] = detail::adapt_coordinates(loc, w, 6, 2, point_string(p0));
    const Poly<F> J = detail::jacobian_determinant(a, b);
    std::vector<Poly<F>> img;
    for (std::size_t i = 0; i < 3; ++i)
        img.push_back(Poly<F>::constant(lv, p[i]) + a * l[i] + b * v[i]);
    const auto& quart = plane_monomials(4);
    Vector<F> out(static_cast<Eigen::Index>(quart.size()));
    for (std::size_t k = 0; k < quart.size(); ++k) {
        const Poly<F> h = compose(Poly<F>::monomial(plane_variables(), quart[k]), img) * J;
        out(static_cast<Eigen::Index>(k)) = h.coefficient({1, 0});
    }
    return out;
}

/// Conic map f2 -> (f2(p_i)) and quartic map on C[z]_4. With the sextic the
/// quartic map is the exact localisation (cusp_quartic_row); without it the
/// plain derivative f4 -> d f4/d l_i (p_i) in the chart of p_i stands in,
/// which is only compared for m <= 5. Equal cokernels are asserted.
template <ExactField F>
CuspResult<F> cusp_rank(const CuspConfig<F>& cfg, const Poly<Rational>* curve = nullptr) {
    check_cusp_hypotheses(cfg);
    CuspResult<F> res;
    res.m = static_cast<int>(cfg.points.size());
    std::vector<std::vector<F>> pts;
    res.quartic = Matrix<F>(res.m, 15);
    const auto& quart = plane_monomials(4);
    for (int i = 0; i < res.m; ++i) {
        const auto& P = cfg.points[static_cast<std::size_t>(i)];
        const auto& L = cfg.directions[static_cast<std::size_t>(i)];
        auto [p, l] = detail::chart_normalize(P, L);
        pts.push_back(p);
        if (curve) {
            res.quartic.row(i) = cusp_quartic_row(*curve, P, L).transpose();
            continue;
        }
        for (std::size_t k = 0; k < quart.size(); ++k) {
            const Poly<F> f4 = Poly<F>::monomial(plane_variables(), quart[k]);
            F dl(0);
            const auto d = partials(f4);
            for (std::size_t c = 0; c < 3; ++c)
                dl += l[c] * evaluate(d[c], p);
            res.quartic(i, static_cast<Eigen::Index>(k)) = dl;
        }
    }
    res.conic = detail::veronese(pts, 2);
    res.conic_coker = cokernel_dim<F>(res.conic);
    res.quartic_coker = cokernel_dim<F>(res.quartic);
    res.quartic_exact = curve != nullptr;
    if ((curve || res.m <= 5) && res.conic_coker != res.quartic_coker)
        throw CrossCheckError("eigenspaces of the cusp cokernel differ: conic map " +
                              std::to_string(res.conic_coker) + ", quartic map " +
                              std::to_string(res.quartic_coker));
    return res;
}

/// An A_2 annotation at a cusp of C: s along the cuspidal tangent.
template <ExactField F>
SingularPointAnnotation<F> cusp_annotation(const Poly<Rational>& C, const std::vector<F>& p) {
    SingularPointAnnotation<F> a;
    a.point = p;
    a.u = cusp_direction(C, p);
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<F> e(3, F(0));
        e[k] = F(1);
        Matrix<F> m(3, 3);
        for (int c = 0; c < 3; ++c) {
            m(0, c) = p[static_cast<std::size_t>(c)];
            m(1, c) = a.u[static_cast<std::size_t>(c)];
            m(2, c) = e[static_cast<std::size_t>(c)];
        }
        if (rank<F>(m) == 3) {
            a.v = e;
            break;
        }
    }
    a.a = 2;
    a.b = 3;
    a.label = "A_2";
    return a;
}

// ---------------------------------------------------------------------------
// Sections

/// x^3 + A P^2 x + B P^3, x^3 + Q x or x^3 + R.
template <ExactField F>
Poly<F> weierstrass_rhs(JCase j, const Poly<Rational>& C, const Rational& A, const Rational& B, const Poly<F>& x) {
    const Poly<F> c = to_field<F>(C);
    switch (j) {
    case JCase::Zero: return x * x * x + c;
    case JCase::TwelveTwentyEight: return x * x * x + c * x;
    case JCase::Generic:
        return x * x * x + c * c * x * embed<F>(A) + c * c * c * embed<F>(B);
    }
    return x;
}

template <ExactField F>
bool is_section(const ThreefoldInput<F>& in, const SectionWitness<F>& s) {
    return s.y * s.y == weierstrass_rhs(in.j, in.C, in.A, in.B, s.x);
}

/// Torsion sections have y = 0 or (j = 0) x = 0; anything else has infinite order.
template <ExactField F>
bool is_non_torsion(JCase j, const SectionWitness<F>& s) {
    if (s.y.is_zero())
        return false;
    return j != JCase::Zero || !s.x.is_zero();
}

// ---------------------------------------------------------------------------
// Classification

struct ClassifyOptions {
    std::uint64_t seed = 1;
    int lines = 5;
    bool specialize = true;
};

namespace detail {
MWReport finish_report(MWReport rep, JCase j, const Poly<Rational>& C, const ClassifyOptions& opt, int witnessed);
} // namespace detail

/// Torsion, rank from the evaluation matrix (and the cusp theorem when a
/// [cusps] block is given), specialization and group cross-checks.
template <ExactField F>
MWReport classify(const ThreefoldInput<F>& in, const ClassifyOptions& opt = {}) {
    validate_curve(in.j, in.C, in.A, in.B);
    MWReport rep;
    rep.j = in.j;
    const auto tor = detect_torsion(in.j, in.C, in.A, in.B);
    rep.torsion = tor.torsion;
    rep.torsion_witnesses = tor.witnesses;
    rep.notes.push_back("torsion: " + tor.reason);

    std::vector<SingularPointAnnotation<F>> anns = in.points;
    std::optional<CuspResult<F>> cusp;
    if (in.cusps) {
        if (in.j != JCase::Zero)
            throw std::invalid_argument("a [cusps] block requires j = 0");
        validate_cusps(in.C, *in.cusps);
        cusp = cusp_rank(*in.cusps, &in.C);
        rep.cusp = CuspSummary{cusp->m, cusp->conic_coker, cusp->quartic_coker, matrix_string(cusp->conic),
                               matrix_string(cusp->quartic)};
        for (const auto& p : in.cusps->points) {
            const bool annotated = std::any_of(anns.begin(), anns.end(), [&](const auto& a) {
                Matrix<F> two(2, 3);
                for (int k = 0; k < 3; ++k) {
                    two(0, k) = a.point[static_cast<std::size_t>(k)];
                    two(1, k) = p[static_cast<std::size_t>(k)];
                }
                return rank<F>(two) == 1;
            });
            if (!annotated)
                anns.push_back(cusp_annotation(in.C, p));
        }
    }

    std::vector<PointAnalysis<F>> pts;
    int unknown_hi = 0;
    for (const auto& a : anns) {
        pts.push_back(analyze_point(in.j, in.C, a));
        const auto& pa = pts.back();
        PointLine pl;
        pl.point = point_string(a.point);
        pl.label = a.label;
        pl.h4 = pa.h4;
        pl.known = pa.known;
        pl.method = pa.method;
        pl.ref = pa.ref;
        pl.x_rows = pa.rows();
        if (pa.report)
            pl.generators = generator_names(*pa.report);
        rep.per_point.push_back(pl);
        for (const auto& n : pa.notes)
            rep.notes.push_back(n);
        if (!pa.known) {
            unknown_hi += 2;
            rep.notes.push_back("warning: " + (a.label.empty() ? pl.point : a.label) +
                                " has no method; rank is an interval");
        } else {
            rep.total_h4 += pa.h4;
            // each left-out row raises the cokernel by at most one
            if (!pa.frame_adapted)
                unknown_hi += 2 * pa.rows();
            if (!pa.has_rows) {
                unknown_hi += pa.h4;
                rep.notes.push_back("h4 at " + pl.point + " is a table value without generators; rank is an interval");
            }
        }
    }
    if (anns.empty())
        rep.notes.push_back("no annotated points: every singular point of C is assumed to have h4 = 0");
    else
        rep.notes.push_back("unlisted singular points of C are assumed to have h4 = 0");

    const auto em = evaluation_matrix(pts);
    rep.eval_rows = static_cast<int>(em.M.rows());
    rep.eval_rank = rank<F>(em.M);
    rep.eval_matrix = matrix_string(em.M);
    for (const auto& n : em.notes)
        rep.notes.push_back(n);
    const int coker = rep.eval_rows - rep.eval_rank;
    rep.rank_lo = 2 * coker;
    rep.rank_hi = rep.rank_lo + unknown_hi;

    if (cusp && cusp->conic_coker != coker)
        throw CrossCheckError("cusp theorem gives cokernel " + std::to_string(cusp->conic_coker) +
                              " but the evaluation matrix gives " + std::to_string(coker));

    int witnessed = 0;
    for (const auto& s : in.sections) {
        if (!is_section(in, s))
            throw std::invalid_argument("supplied section x = " + s.x.str() + ", y = " + s.y.str() +
                                        " does not satisfy the Weierstrass equation");
        if (is_non_torsion(in.j, s)) {
            witnessed = 2;
            rep.notes.push_back("verified section of infinite order: x = " + s.x.str() + ", y = " + s.y.str());
        }
    }
    return detail::finish_report(std::move(rep), in.j, in.C, opt, witnessed);
}

/// Field needed for the coordinates of an input file.
enum class FieldKind { Rational, Gaussian, Eisenstein };

} // namespace ellthree
