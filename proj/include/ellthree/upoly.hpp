#pragma once

// Dense univariate polynomials and the binary-form multiplicity pattern.

#include "ellthree/poly.hpp"

#include <vector>

namespace ellthree {

/// Coefficients low to high; no trailing zeros (the zero polynomial is empty).
template <ExactField F>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F operator[](int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : F(0); }
    F lead() const { return c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            r[i] += b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * F(-1); }
    friend UPoly operator*(const UPoly& a, const F& s) {
        std::vector<F> r = a.c_;
        for (auto& x : r)
            x *= s;
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    UPoly derivative() const {
        std::vector<F> r;
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.push_back(c_[i] * F(static_cast<long>(i)));
        return UPoly(std::move(r));
    }

    UPoly monic() const { return is_zero() ? *this : *this * (F(1) / lead()); }

    F eval(const F& x) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    /// Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero())
            throw std::domain_error("UPoly: division by zero polynomial");
        std::vector<F> r = c_;
        const int dd = d.degree();
        std::vector<F> q(static_cast<std::size_t>(std::max(0, degree() - dd + 1)), F(0));
        const F inv = F(1) / d.lead();
        for (int i = degree(); i >= dd; --i) {
            const F f = r[static_cast<std::size_t>(i)] * inv;
            if (ellthree::is_zero(f))
                continue;
            q[static_cast<std::size_t>(i - dd)] = f;
            for (int j = 0; j <= dd; ++j)
                r[static_cast<std::size_t>(i - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

private:
    void trim() {
        while (!c_.empty() && ellthree::is_zero(c_.back()))
            c_.pop_back();
    }
    std::vector<F> c_;
};

template <ExactField F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <ExactField F>
struct SquarefreeFactor {
    UPoly<F> factor; // monic, squarefree, degree >= 1
    int multiplicity;
};

/// Yun's algorithm: f = lc * prod factor_i ^ multiplicity_i.
template <ExactField F>
std::vector<SquarefreeFactor<F>> squarefree_decomposition(const UPoly<F>& f) {
    if (f.is_zero())
        throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<SquarefreeFactor<F>> out;
    if (f.degree() == 0)
        return out;
    const UPoly<F> df = f.derivative();
    UPoly<F> a = gcd(f, df);
    UPoly<F> b = f.divmod(a).first;
    UPoly<F> c = df.divmod(a).first;
    UPoly<F> d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        UPoly<F> g = gcd(b, d);
        if (g.degree() > 0)
            out.push_back({g, i});
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    return out;
}

/// The univariate polynomial f(a, 1) of a binary form in (a, b).
template <ExactField F>
UPoly<F> dehomogenize_binary(const Poly<F>& f) {
    if (f.nvars() != 2)
        throw std::invalid_argument("expected a binary form");
    std::vector<F> c(static_cast<std::size_t>(std::max(0, f.degree() + 1)), F(0));
    for (const auto& [m, x] : f.terms())
        c[static_cast<std::size_t>(m[0])] += x;
    return UPoly<F>(std::move(c));
}

/// Root multiplicities over the algebraic closure, sorted descending. A
/// squarefree factor of degree e at multiplicity m contributes e copies of m.
template <ExactField F>
std::vector<int> multiplicity_pattern(const Poly<F>& form) {
    if (form.is_zero())
        throw std::invalid_argument("multiplicity_pattern: zero form");
    if (!form.is_homogeneous())
        throw std::invalid_argument("multiplicity_pattern: form is not homogeneous");
    const int d = form.degree();
    const UPoly<F> u = dehomogenize_binary(form);
    std::vector<int> pattern;
    if (d - u.degree() > 0)
        pattern.push_back(d - u.degree()); // root at (1:0)
    for (const auto& [fac, m] : squarefree_decomposition(u))
        for (int i = 0; i < fac.degree(); ++i)
            pattern.push_back(m);
    std::sort(pattern.rbegin(), pattern.rend());
    return pattern;
}

std::string pattern_string(const std::vector<int>& pattern);

/// Distinct rational roots (candidates p/q with p | a_0 and q | a_n).
std::vector<Rational> rational_roots(const UPoly<Rational>& f);

} // namespace ellthree
