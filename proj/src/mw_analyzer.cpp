#include "ellthree/mw_analyzer.hpp"

#include <random>
#include <sstream>

namespace ellthree {

int curve_degree(JCase j) {
    switch (j) {
    case JCase::Zero: return 6;
    case JCase::TwelveTwentyEight: return 4;
    case JCase::Generic: return 2;
    }
    return 0;
}

const std::vector<Monomial>& plane_monomials(int degree) {
    static const std::vector<Monomial> two = monomials_of_weighted_degree(Weights{1, 1, 1}, 2);
    static const std::vector<Monomial> four = monomials_of_weighted_degree(Weights{1, 1, 1}, 4);
    if (degree == 2)
        return two;
    if (degree == 4)
        return four;
    throw std::invalid_argument("plane_monomials: only degrees 2 and 4 are used");
}

std::optional<std::vector<Rational>> cone_vertex(const Poly<Rational>& C) {
    const auto d = partials(C);
    std::map<Monomial, int> index;
    for (const auto& p : d)
        for (const auto& [m, c] : p.terms())
            index.emplace(m, 0);
    int k = 0;
    for (auto& [m, i] : index)
        i = k++;
    Matrix<Rational> M = Matrix<Rational>::Zero(k, 3);
    for (int c = 0; c < 3; ++c)
        for (const auto& [m, v] : d[static_cast<std::size_t>(c)].terms())
            M(index.at(m), c) = v;
    const Matrix<Rational> K = kernel<Rational>(M);
    if (K.cols() == 0)
        return std::nullopt;
    std::vector<Rational> p;
    for (int i = 0; i < 3; ++i)
        p.push_back(K(i, 0));
    return p;
}

void validate_curve(JCase j, const Poly<Rational>& C, const Rational& A, const Rational& B) {
    if (C.variables() != plane_variables())
        throw std::invalid_argument("C must be a polynomial in z0, z1, z2");
    if (C.is_zero())
        throw std::invalid_argument("C is zero");
    if (!C.is_homogeneous() || C.degree() != curve_degree(j))
        throw std::invalid_argument("C must be homogeneous of degree " + std::to_string(curve_degree(j)) +
                                    " for j = " + to_string(j));
    if (auto v = cone_vertex(C))
        throw std::invalid_argument("C is a union of lines through " + point_string(*v) +
                                    ": the cone construction is excluded");
    if (j == JCase::Generic && (Rational(-4) * A * A * A - Rational(27) * B * B).is_zero())
        throw std::invalid_argument("X^3 + A X + B must have distinct roots");
}

namespace {

std::optional<Rational> rational_root(const Rational& c, int k) {
    if (c.sign() < 0) {
        if (k % 2 == 0)
            return std::nullopt;
        auto r = rational_root(-c, k);
        return r ? std::optional<Rational>(-*r) : std::nullopt;
    }
    mpz_class n = c.numerator(), d = c.denominator(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)) ||
        !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k)))
        return std::nullopt;
    return Rational(mpq_class(rn, rd));
}

/// Q[z0, z1, z2] with adjoined algebraic numbers, each reduced by a monic
/// relation root^k = tail(root).
class AdjoinedRing {
public:
    explicit AdjoinedRing(std::vector<std::string> roots) : roots_(std::move(roots)) {
        vars_ = plane_variables();
        vars_.insert(vars_.end(), roots_.begin(), roots_.end());
        rels_.resize(roots_.size());
    }
    const std::vector<std::string>& vars() const { return vars_; }
    Poly<Rational> var(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name)
                return Poly<Rational>::variable(vars_, i);
        throw std::logic_error("unknown variable " + name);
    }
    Poly<Rational> constant(const Rational& c) const { return Poly<Rational>::constant(vars_, c); }
    Poly<Rational> lift(const Poly<Rational>& p) const {
        std::vector<Poly<Rational>> img;
        for (std::size_t i = 0; i < 3; ++i)
            img.push_back(Poly<Rational>::variable(vars_, i));
        return compose(p, img);
    }
    /// root^k = tail
    void relate(const std::string& root, int k, const Poly<Rational>& tail) {
        for (std::size_t i = 0; i < roots_.size(); ++i)
            if (roots_[i] == root) {
                rels_[i] = {k, tail};
                text_ += std::string(text_.empty() ? "" : ", ") + root + "^" + std::to_string(k) + " = " + tail.str();
                return;
            }
        throw std::logic_error("unknown root " + root);
    }
    Poly<Rational> reduce(Poly<Rational> p) const {
        for (int guard = 0; guard < 10000; ++guard) {
            bool changed = false;
            for (const auto& [m, c] : p.terms()) {
                for (std::size_t r = 0; r < roots_.size(); ++r) {
                    const auto& [k, tail] = rels_[r];
                    const std::size_t v = 3 + r;
                    if (k > 0 && m[v] >= k) {
                        Monomial rest = m;
                        rest[v] -= k;
                        Poly<Rational> repl = Poly<Rational>::monomial(vars_, rest, c) * tail;
                        Poly<Rational> term = Poly<Rational>::monomial(vars_, m, c);
                        p = p - term + repl;
                        changed = true;
                        break;
                    }
                }
                if (changed)
                    break;
            }
            if (!changed)
                return p;
        }
        throw std::logic_error("AdjoinedRing::reduce did not terminate");
    }
    std::string field() const { return text_.empty() ? "Q" : "Q(" + join() + "), " + text_; }

private:
    std::string join() const {
        std::string s;
        for (const auto& r : roots_)
            s += (s.empty() ? "" : ",") + r;
        return s;
    }
    std::vector<std::string> roots_;
    std::vector<std::string> vars_;
    std::vector<std::pair<int, Poly<Rational>>> rels_;
    std::string text_;
};

/// y^2 - rhs(x) reduces to zero in the ring.
TorsionWitness check_witness(const AdjoinedRing& R, JCase j, const Poly<Rational>& C, const Rational& A,
                             const Rational& B, const Poly<Rational>& x, const Poly<Rational>& y, int order) {
    const Poly<Rational> c = R.lift(C);
    Poly<Rational> rhs = x * x * x;
    if (j == JCase::Zero)
        rhs += c;
    else if (j == JCase::TwelveTwentyEight)
        rhs += c * x;
    else
        rhs += c * c * x * A + c * c * c * B;
    TorsionWitness w;
    w.x = x.str();
    w.y = y.str();
    w.field = R.field();
    w.order = order;
    w.verified = R.reduce(y * y - rhs).is_zero();
    return w;
}

} // namespace

TorsionResult detect_torsion(JCase j, const Poly<Rational>& C, const Rational& A, const Rational& B) {
    validate_curve(j, C, A, B);
    TorsionResult res;
    auto require = [](const TorsionWitness& w) {
        if (!w.verified)
            throw CrossCheckError("torsion section x = " + w.x + ", y = " + w.y + " does not satisfy the equation");
        return w;
    };
    if (j == JCase::Generic) {
        res.torsion = {2, 2};
        res.reason = "x = alpha P for the three roots alpha of X^3 + A X + B";
        const UPoly<Rational> cubic(std::vector<Rational>{B, A, Rational(0), Rational(1)});
        const auto roots = rational_roots(cubic);
        AdjoinedRing Q0({});
        for (const auto& r : roots)
            res.witnesses.push_back(require(check_witness(Q0, j, C, A, B, Q0.lift(C) * r,
                                                          Poly<Rational>(Q0.vars()), 2)));
        if (roots.size() < 3) {
            AdjoinedRing R({"a"});
            R.relate("a", 3, R.var("a") * (-A) - R.constant(B));
            res.witnesses.push_back(
                require(check_witness(R, j, C, A, B, R.lift(C) * R.var("a"), Poly<Rational>(R.vars()), 2)));
        }
        return res;
    }
    if (j == JCase::TwelveTwentyEight) {
        AdjoinedRing Q0({});
        const Poly<Rational> zero(Q0.vars());
        res.witnesses.push_back(require(check_witness(Q0, j, C, A, B, zero, zero, 2)));
        const auto sq = perfect_power_root(C, 2);
        if (!sq) {
            res.torsion = {2};
            res.reason = "Q is not a square: only the section (0, 0)";
            return res;
        }
        res.torsion = {2, 2};
        res.reason = "Q = c q^2 is a double conic: x^2 = -Q has the solutions x = +-sqrt(-c) q";
        const Rational minus_c = -sq->scalar;
        std::optional<AdjoinedRing> R;
        Poly<Rational> root;
        if (auto r = rational_root(minus_c, 2)) {
            R.emplace(std::vector<std::string>{});
            root = Poly<Rational>::constant(R->vars(), *r);
        } else if (auto r2 = rational_root(sq->scalar, 2)) {
            R.emplace(std::vector<std::string>{"i"});
            R->relate("i", 2, R->constant(Rational(-1)));
            root = R->var("i") * *r2;
        } else {
            R.emplace(std::vector<std::string>{"r"});
            R->relate("r", 2, R->constant(minus_c));
            root = R->var("r");
        }
        const Poly<Rational> q = R->lift(sq->root);
        for (int sign : {1, -1})
            res.witnesses.push_back(
                require(check_witness(*R, j, C, A, B, root * q * Rational(sign), Poly<Rational>(R->vars()), 2)));
        return res;
    }
    const auto sq = perfect_power_root(C, 2);
    const auto cb = perfect_power_root(C, 3);
    if (sq) {
        res.torsion = {3};
        res.reason = "R = c f^2 is a double cubic: x = 0, y = +-sqrt(c) f have order 3";
        std::optional<AdjoinedRing> R;
        Poly<Rational> root;
        if (auto r = rational_root(sq->scalar, 2)) {
            R.emplace(std::vector<std::string>{});
            root = Poly<Rational>::constant(R->vars(), *r);
        } else if (auto r2 = rational_root(-sq->scalar, 2)) {
            R.emplace(std::vector<std::string>{"i"});
            R->relate("i", 2, R->constant(Rational(-1)));
            root = R->var("i") * *r2;
        } else {
            R.emplace(std::vector<std::string>{"r"});
            R->relate("r", 2, R->constant(sq->scalar));
            root = R->var("r");
        }
        const Poly<Rational> f = R->lift(sq->root);
        for (int sign : {1, -1})
            res.witnesses.push_back(
                require(check_witness(*R, j, C, A, B, Poly<Rational>(R->vars()), root * f * Rational(sign), 3)));
        return res;
    }
    if (cb) {
        res.torsion = {2, 2};
        res.reason = "R = c g^3 is a triple conic: x = -w^i c^(1/3) g, y = 0 for i = 0, 1, 2";
        std::optional<AdjoinedRing> R;
        Poly<Rational> root;
        if (auto r = rational_root(cb->scalar, 3)) {
            R.emplace(std::vector<std::string>{"w"});
            root = Poly<Rational>::constant(R->vars(), *r);
        } else {
            R.emplace(std::vector<std::string>{"w", "r"});
            R->relate("r", 3, R->constant(cb->scalar));
            root = R->var("r");
        }
        R->relate("w", 2, -R->var("w") - R->constant(Rational(1)));
        const Poly<Rational> g = R->lift(cb->root);
        Poly<Rational> wi = Poly<Rational>::constant(R->vars(), Rational(1));
        for (int i = 0; i < 3; ++i) {
            res.witnesses.push_back(
                require(check_witness(*R, j, C, A, B, R->reduce(-(wi * root * g)), Poly<Rational>(R->vars()), 2)));
            wi = R->reduce(wi * R->var("w"));
        }
        return res;
    }
    res.reason = "R is neither a square nor a cube";
    return res;
}

LineBound restrict_along(JCase j, const Poly<Rational>& C, const std::vector<Rational>& a,
                         const std::vector<Rational>& b) {
    const Poly<Rational> form = restrict_to_line(C, a, b);
    if (form.is_zero())
        throw std::invalid_argument("the line through " + point_string(a) + " and " + point_string(b) +
                                    " lies in C");
    LineBound lb;
    lb.a = a;
    lb.b = b;
    lb.pattern = multiplicity_pattern(form);
    lb.surface = lookup_surface(j, lb.pattern);
    return lb;
}

SpecializationResult specialize_to_line(JCase j, const Poly<Rational>& C, std::uint64_t seed, int k) {
    if (k < 1)
        throw std::invalid_argument("need at least one line");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    SpecializationResult res;
    int skipped = 0;
    for (int attempt = 0; static_cast<int>(res.samples.size()) < k; ++attempt) {
        if (attempt > 50 * k)
            throw std::runtime_error("no usable random line found");
        std::vector<Rational> a, b;
        for (int i = 0; i < 3; ++i)
            a.emplace_back(coord(rng));
        for (int i = 0; i < 3; ++i)
            b.emplace_back(coord(rng));
        try {
            res.samples.push_back(restrict_along(j, C, a, b));
        } catch (const std::invalid_argument&) {
            ++skipped; // coincident points, a line inside C, or a degenerate pattern
        }
    }
    std::size_t most = 0;
    for (const auto& s : res.samples)
        most = std::max(most, s.pattern.size());
    bool first = true;
    for (const auto& s : res.samples)
        if (s.pattern.size() == most && (first || s.surface.mw_rank < res.best.surface.mw_rank)) {
            res.best = s;
            first = false;
        }
    res.note = "bound from " + std::to_string(k) + " random lines (seed " + std::to_string(seed) +
               "); a line that is not very general can only weaken it";
    if (skipped)
        res.note += "; " + std::to_string(skipped) + " degenerate samples skipped";
    return res;
}

// ---------------------------------------------------------------------------
// Reports

std::string compact_monomial(const Monomial& m) {
    // germ variables are (s, t, x, y); print x, y, t, s
    static const char* names[] = {"s", "t", "x", "y"};
    std::string out;
    for (int v : {2, 3, 1, 0}) {
        const int e = m.at(static_cast<std::size_t>(v));
        if (e == 0)
            continue;
        out += names[v];
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

std::string compact_poly(const Poly<Rational>& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const Rational mag = c.sign() < 0 ? -c : c;
        out += c.sign() < 0 ? "-" : (out.empty() ? "" : "+");
        const std::string mono = compact_monomial(m);
        if (mono == "1")
            out += mag.str();
        else
            out += (mag.is_one() ? "" : mag.str() + "*") + mono;
    }
    return out;
}

std::string MWReport::rank_str() const {
    return exact() ? std::to_string(rank_lo) : std::to_string(rank_lo) + ".." + std::to_string(rank_hi);
}

std::string MWReport::torsion_str() const { return MWGroup{0, torsion}.torsion_str(); }

std::string MWReport::group_str() const { return group ? group->str() : "undetermined"; }

std::string MWReport::machine_block() const {
    std::ostringstream out;
    out << "RANK=" << rank_str() << " TORSION=" << torsion_str() << " GROUP=" << group_str() << "\n";
    for (const auto& p : per_point)
        out << "POINT=" << p.point << " H4=" << (p.known ? std::to_string(p.h4) : "?") << " METHOD=" << p.method
            << " REF=\"" << p.ref << "\"\n";
    return out.str();
}

std::string MWReport::human(bool verbose) const {
    std::ostringstream out;
    out << "j = " << to_string(j) << "\n";
    out << "torsion: " << torsion_str() << "\n";
    for (const auto& w : torsion_witnesses)
        out << "  order " << w.order << " section x = " << w.x << ", y = " << w.y << " over " << w.field
            << (w.verified ? "  [verified]" : "  [NOT verified]") << "\n";
    out << "singular points: " << per_point.size() << ", total h4 = " << total_h4 << "\n";
    for (const auto& p : per_point) {
        out << "  " << p.point << (p.label.empty() ? "" : " " + p.label) << ": h4 = "
            << (p.known ? std::to_string(p.h4) : "?") << " (" << p.method << "; " << p.ref << ")";
        if (!p.generators.empty()) {
            out << " basis {";
            for (std::size_t i = 0; i < p.generators.size(); ++i)
                out << (i ? ", " : "") << p.generators[i];
            out << "}";
        }
        out << "\n";
    }
    out << "evaluation matrix: " << eval_rows << " x 6, rank " << eval_rank << ", cokernel "
        << eval_rows - eval_rank << "\n";
    if (verbose && eval_rows > 0)
        out << eval_matrix;
    if (cusp) {
        out << "cusp theorem: m = " << cusp->m << ", conic map cokernel " << cusp->conic_coker
            << ", quartic map cokernel " << cusp->quartic_coker << "\n";
        if (verbose)
            out << "conic map:\n" << cusp->conic_matrix << "quartic map:\n" << cusp->quartic_matrix;
    }
    if (bound)
        out << "specialization: line through " << point_string(bound->a) << " and " << point_string(bound->b)
            << ", pattern " << pattern_string(bound->pattern) << " (" << bound->surface.lattice << "), MW rank <= "
            << bound->surface.mw_rank << ", torsion order | " << bound->surface.torsion_order << "\n";
    out << "rank: " << rank_str() << (exact() ? "" : " (interval)") << "\n";
    out << "group: " << group_str() << "\n";
    for (const auto& n : notes)
        out << "note: " << n << "\n";
    out << machine_block();
    return out.str();
}

namespace detail {

MWReport finish_report(MWReport rep, JCase j, const Poly<Rational>& C, const ClassifyOptions& opt, int witnessed) {
    if (rep.exact() && rep.rank_lo < witnessed)
        throw CrossCheckError("a verified section of infinite order contradicts rank " + rep.rank_str());
    rep.rank_lo = std::max(rep.rank_lo, witnessed);
    rep.rank_hi = std::max(rep.rank_hi, rep.rank_lo);
    if (opt.specialize) {
        const auto spec = specialize_to_line(j, C, opt.seed, opt.lines);
        rep.bound = spec.best;
        rep.notes.push_back(spec.note);
        const auto& s = spec.best.surface;
        if (rep.rank_lo > s.mw_rank)
            throw CrossCheckError("rank " + std::to_string(rep.rank_lo) + " exceeds the specialization bound " +
                                  std::to_string(s.mw_rank) + " (pattern " + pattern_string(s.pattern) +
                                  "): an annotation is wrong");
        if (s.torsion_order % MWGroup{0, rep.torsion}.torsion_order() != 0)
            throw CrossCheckError("torsion " + rep.torsion_str() + " does not embed in the torsion of order " +
                                  std::to_string(s.torsion_order) + " of the restricted surface");
        if (rep.rank_hi > s.mw_rank) {
            rep.notes.push_back("upper end lowered to the specialization bound " + std::to_string(s.mw_rank));
            rep.rank_hi = s.mw_rank;
        }
    }
    if (rep.rank_lo % 2 != 0)
        throw CrossCheckError("odd rank " + std::to_string(rep.rank_lo));
    if (rep.exact()) {
        rep.group = MWGroup{rep.rank_lo, rep.torsion};
        if (!is_possible_group(j, *rep.group))
            throw CrossCheckError("group " + rep.group->str() + " is not a possible Mordell-Weil group for j = " +
                                  to_string(j));
    } else {
        rep.notes.push_back("warning: rank not determined; reported as the interval " + rep.rank_str());
    }
    return rep;
}

} // namespace detail

} // namespace ellthree
