#pragma once

// Exact multivariate polynomials with weighted gradings.

#include "ellthree/field.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ellthree {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Graded lexicographic order, first variable largest.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

struct Weights {
    std::vector<int> w;

    Weights() = default;
    Weights(std::initializer_list<int> init) : w(init) { validate(); }
    explicit Weights(std::vector<int> v) : w(std::move(v)) { validate(); }

    std::size_t size() const { return w.size(); }
    int operator[](std::size_t i) const { return w[i]; }
    int total() const { return std::accumulate(w.begin(), w.end(), 0); }
    int gcd() const {
        int g = 0;
        for (int x : w)
            g = std::gcd(g, x);
        return g;
    }
    friend bool operator==(const Weights&, const Weights&) = default;

private:
    void validate() const {
        for (int x : w)
            if (x < 1)
                throw std::invalid_argument("weights must be positive integers");
    }
};

int weighted_degree(const Monomial& m, const Weights& w);
std::string monomial_string(const Monomial& m, const std::vector<std::string>& vars);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

namespace detail {
template <ExactField F>
int coefficient_sign(const F& c) {
    if constexpr (std::same_as<F, Rational>) {
        return c.sign();
    } else {
        if (c.is_rational())
            return c.re().sign();
        return 1;
    }
}
} // namespace detail

template <ExactField F>
class Poly {
public:
    using Scalar = F;
    using Terms = std::map<Monomial, F, GrlexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const F& c) {
        Poly p(std::move(vars));
        p.add_term(Monomial(p.nvars(), 0), c);
        return p;
    }
    static Poly variable(std::vector<std::string> vars, std::size_t i) {
        Poly p(std::move(vars));
        Monomial m(p.nvars(), 0);
        m.at(i) = 1;
        p.add_term(m, F(1));
        return p;
    }
    static Poly monomial(std::vector<std::string> vars, Monomial m, const F& c = F(1)) {
        Poly p(std::move(vars));
        if (m.size() != p.nvars())
            throw std::invalid_argument("monomial length does not match variable count");
        p.add_term(m, c);
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    F coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? F(0) : it->second;
    }

    void add_term(const Monomial& m, const F& c) {
        if (is_zero_scalar(c))
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_scalar(it->second))
                terms_.erase(it);
        }
    }

    /// -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

    bool is_homogeneous() const {
        if (terms_.empty())
            return true;
        const int d = degree();
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& kv) { return total_degree(kv.first) == d; });
    }

    /// Largest term in grlex order.
    const std::pair<const Monomial, F>& leading_term() const {
        if (terms_.empty())
            throw std::logic_error("leading_term of zero polynomial");
        return *terms_.rbegin();
    }

    Poly& operator+=(const Poly& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const F& s) {
        if (is_zero_scalar(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_)
            kv.second *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const F& s) { return a *= s; }
    friend Poly operator*(const F& s, Poly a) { return a *= s; }
    Poly operator-() const { return *this * F(-1); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_compatible(b);
        Poly out(a.vars_);
        Monomial m(a.nvars());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Canonical text in the input grammar, terms in descending grlex order.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            const int sgn = detail::coefficient_sign(c);
            const F mag = sgn < 0 ? -c : c;
            if (first)
                out += sgn < 0 ? "-" : "";
            else
                out += sgn < 0 ? " - " : " + ";
            first = false;
            const bool constant = total_degree(m) == 0;
            const bool unit = mag == F(1);
            std::string mono = monomial_string(m, vars_);
            if (constant)
                out += to_string(mag);
            else if (unit)
                out += mono;
            else
                out += to_string(mag) + "*" + mono;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

    template <ExactField G, class Fn>
    Poly<G> map_coefficients(Fn&& fn) const {
        Poly<G> out(vars_);
        for (const auto& [m, c] : terms_)
            out.add_term(m, fn(c));
        return out;
    }

    /// Same terms over a different (same-length) variable list.
    Poly with_variables(std::vector<std::string> vars) const {
        if (vars.size() != nvars())
            throw std::invalid_argument("with_variables: variable count mismatch");
        Poly out(std::move(vars));
        out.terms_ = terms_;
        return out;
    }

private:
    static bool is_zero_scalar(const F& c) { return ellthree::is_zero(c); }
    void check_compatible(const Poly& o) const {
        if (vars_ != o.vars_)
            throw std::invalid_argument("polynomials over different variable lists");
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

/// Parses the polynomial grammar (with parentheses and powers of groups as an
/// extension) over the declared variables.
Poly<Rational> parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Parses a scalar; for quadratic extensions the generator symbol ("w" or "i")
/// may appear, e.g. "1/2 - 3*w".
template <ExactField F>
F parse_scalar(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
Eisenstein parse_scalar<Eisenstein>(std::string_view text);
template <>
Gaussian parse_scalar<Gaussian>(std::string_view text);

template <ExactField F>
Poly<F> to_field(const Poly<Rational>& p) {
    return p.template map_coefficients<F>([](const Rational& c) { return embed<F>(c); });
}

template <ExactField F>
Poly<F> pow(const Poly<F>& base, unsigned exp) {
    Poly<F> result = Poly<F>::constant(base.variables(), F(1));
    Poly<F> b = base;
    while (exp) {
        if (exp & 1u)
            result = result * b;
        exp >>= 1;
        if (exp)
            b = b * b;
    }
    return result;
}

template <ExactField F>
Poly<F> derivative(const Poly<F>& f, std::size_t var) {
    if (var >= f.nvars())
        throw std::out_of_range("derivative: no such variable");
    Poly<F> out(f.variables());
    for (const auto& [m, c] : f.terms()) {
        if (m[var] == 0)
            continue;
        Monomial dm = m;
        dm[var] -= 1;
        out.add_term(dm, c * F(m[var]));
    }
    return out;
}

template <ExactField F>
std::vector<Poly<F>> partials(const Poly<F>& f) {
    std::vector<Poly<F>> out;
    out.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i)
        out.push_back(derivative(f, i));
    return out;
}

template <ExactField F>
F evaluate(const Poly<F>& f, std::span<const F> point) {
    if (point.size() != f.nvars())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    F acc(0);
    for (const auto& [m, c] : f.terms()) {
        F term = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i])
                term *= power(point[i], static_cast<unsigned>(m[i]));
        acc += term;
    }
    return acc;
}

template <ExactField F>
F evaluate(const Poly<F>& f, const std::vector<F>& point) {
    return evaluate(f, std::span<const F>(point));
}

/// f(images[0], ..., images[n-1]); all images share one variable list.
template <ExactField F>
Poly<F> compose(const Poly<F>& f, const std::vector<Poly<F>>& images) {
    if (images.size() != f.nvars())
        throw std::invalid_argument("compose: wrong number of images");
    if (images.empty())
        return f;
    const auto& vars = images.front().variables();
    std::vector<std::vector<Poly<F>>> powers(images.size());
    Poly<F> out(vars);
    for (const auto& [m, c] : f.terms()) {
        Poly<F> term = Poly<F>::constant(vars, c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i])
                continue;
            auto& cache = powers[i];
            if (cache.empty())
                cache.push_back(Poly<F>::constant(vars, F(1)));
            while (static_cast<int>(cache.size()) <= m[i])
                cache.push_back(cache.back() * images[i]);
            term = term * cache[static_cast<std::size_t>(m[i])];
        }
        out += term;
    }
    return out;
}

/// Terms of weighted degree exactly k.
template <ExactField F>
Poly<F> weighted_part(const Poly<F>& f, const Weights& w, int k) {
    Poly<F> out(f.variables());
    for (const auto& [m, c] : f.terms())
        if (weighted_degree(m, w) == k)
            out.add_term(m, c);
    return out;
}

/// Smallest weighted degree present; empty for the zero polynomial.
template <ExactField F>
std::optional<int> lowest_weighted_degree(const Poly<F>& f, const Weights& w) {
    std::optional<int> best;
    for (const auto& [m, c] : f.terms()) {
        const int d = weighted_degree(m, w);
        if (!best || d < *best)
            best = d;
    }
    return best;
}

/// The common weighted degree when every term has it. Throws on zero input.
template <ExactField F>
std::optional<int> is_weighted_homogeneous(const Poly<F>& f, const Weights& w) {
    if (f.is_zero())
        throw std::invalid_argument("is_weighted_homogeneous: zero polynomial");
    if (w.size() != f.nvars())
        throw std::invalid_argument("is_weighted_homogeneous: weight count mismatch");
    std::optional<int> d;
    for (const auto& [m, c] : f.terms()) {
        const int dm = weighted_degree(m, w);
        if (d && *d != dm)
            return std::nullopt;
        d = dm;
    }
    return d;
}

inline const std::vector<std::string>& local_variables() {
    static const std::vector<std::string> v{"s", "t"};
    return v;
}

/// G(p + s*u + t*v) in the affine chart where coordinate `chart` equals 1.
/// p is rescaled so p[chart] = 1; u and v are moved into the chart's tangent
/// space (their chart coordinate is cleared along p).
template <ExactField F>
Poly<F> local_expand(const Poly<F>& g, std::vector<F> p, std::size_t chart, std::vector<F> u,
                     std::vector<F> v) {
    const std::size_t n = g.nvars();
    if (p.size() != n || u.size() != n || v.size() != n)
        throw std::invalid_argument("local_expand: dimension mismatch");
    if (chart >= n || is_zero(p[chart]))
        throw std::invalid_argument("local_expand: point has zero coordinate in the requested chart");
    const F inv = F(1) / p[chart];
    for (auto& x : p)
        x *= inv;
    const F uc = u[chart], vc = v[chart];
    for (std::size_t i = 0; i < n; ++i) {
        u[i] -= uc * p[i];
        v[i] -= vc * p[i];
    }
    // u, v independent?
    bool dependent = true;
    for (std::size_t i = 0; i < n && dependent; ++i)
        for (std::size_t j = i + 1; j < n && dependent; ++j)
            if (!is_zero(u[i] * v[j] - u[j] * v[i]))
                dependent = false;
    if (dependent)
        throw std::invalid_argument("local_expand: frame directions are linearly dependent");
    const auto& lv = local_variables();
    std::vector<Poly<F>> images;
    for (std::size_t i = 0; i < n; ++i) {
        Poly<F> img = Poly<F>::constant(lv, p[i]);
        img += Poly<F>::variable(lv, 0) * u[i];
        img += Poly<F>::variable(lv, 1) * v[i];
        images.push_back(std::move(img));
    }
    return compose(g, images);
}

/// Picks the first chart with p[j] != 0.
template <ExactField F>
std::size_t default_chart(const std::vector<F>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!is_zero(p[i]))
            return i;
    throw std::invalid_argument("projective point with all coordinates zero");
}

/// C(a*A + b*B) as a binary form in (a, b).
template <ExactField F>
Poly<F> restrict_to_line(const Poly<F>& c, const std::vector<F>& a_pt, const std::vector<F>& b_pt) {
    const std::size_t n = c.nvars();
    if (a_pt.size() != n || b_pt.size() != n)
        throw std::invalid_argument("restrict_to_line: dimension mismatch");
    bool proportional = true;
    for (std::size_t i = 0; i < n && proportional; ++i)
        for (std::size_t j = i + 1; j < n && proportional; ++j)
            if (!is_zero(a_pt[i] * b_pt[j] - a_pt[j] * b_pt[i]))
                proportional = false;
    if (proportional)
        throw std::invalid_argument("restrict_to_line: points coincide");
    const std::vector<std::string> ab{"a", "b"};
    std::vector<Poly<F>> images;
    for (std::size_t i = 0; i < n; ++i) {
        Poly<F> img = Poly<F>::variable(ab, 0) * a_pt[i];
        img += Poly<F>::variable(ab, 1) * b_pt[i];
        images.push_back(std::move(img));
    }
    return compose(c, images);
}

template <ExactField F>
struct PowerRoot {
    Poly<F> root;  // g
    F scalar;      // f = scalar * g^k, g monic in grlex order
};

/// g with g^k = f / lc(f), found by leading-term elimination; empty when no
/// such g exists over F.
template <ExactField F>
std::optional<PowerRoot<F>> perfect_power_root(const Poly<F>& f, int k) {
    if (k < 2)
        throw std::invalid_argument("perfect_power_root: k must be at least 2");
    if (f.is_zero())
        return std::nullopt;
    const auto& [lm, lc] = f.leading_term();
    Poly<F> h = f * (F(1) / lc);
    for (int e : lm)
        if (e % k != 0)
            return std::nullopt;
    Monomial root_lm(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i)
        root_lm[i] = lm[i] / k;
    Poly<F> g = Poly<F>::monomial(f.variables(), root_lm);
    const Poly<F> lead_pow = pow(g, static_cast<unsigned>(k - 1)) * F(k);
    const auto& [dlm, dlc] = lead_pow.leading_term();
    // Each step fixes the largest remaining term; the number of candidate
    // monomials below root_lm bounds the iteration.
    for (std::size_t guard = 0; guard < 100000; ++guard) {
        Poly<F> r = h - pow(g, static_cast<unsigned>(k));
        if (r.is_zero())
            return PowerRoot<F>{g, lc};
        const auto& [rm, rc] = r.leading_term();
        Monomial delta(rm.size());
        for (std::size_t i = 0; i < rm.size(); ++i) {
            delta[i] = rm[i] - dlm[i];
            if (delta[i] < 0)
                return std::nullopt;
        }
        if (!GrlexLess{}(delta, root_lm))
            return std::nullopt;
        g.add_term(delta, rc / dlc);
    }
    return std::nullopt;
}

} // namespace ellthree
