#pragma once

// Graded pieces of Jacobian rings, Milnor numbers and truncated local Milnor
// algebras, all by exact linear algebra one degree (or one jet order) at a time.

#include "ellthree/linalg.hpp"
#include "ellthree/poly.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ellthree {

template <ExactField F>
struct WeightedGerm {
    Poly<F> f;
    Weights weights;
    int degree = 0;

    /// Throws unless f is weighted homogeneous for w.
    static WeightedGerm make(Poly<F> f, Weights w) {
        if (w.size() != f.nvars())
            throw std::invalid_argument("germ: " + std::to_string(w.size()) + " weights for " +
                                        std::to_string(f.nvars()) + " variables");
        auto d = is_weighted_homogeneous(f, w);
        if (!d)
            throw std::invalid_argument("germ " + f.str() + " is not weighted homogeneous for the given weights");
        return WeightedGerm{std::move(f), std::move(w), *d};
    }

    int total_weight() const { return weights.total(); }
    /// Degree of the middle piece R_{2d-w}.
    int middle_degree() const { return 2 * degree - total_weight(); }
};

/// All monomials of weighted degree k, in descending grlex order.
std::vector<Monomial> monomials_of_weighted_degree(const Weights& w, int k);

/// All monomials in n variables of total degree at most N, highest degree first.
std::vector<Monomial> monomials_up_to_degree(std::size_t n, int N);

struct GradedBasis {
    int degree = 0;
    std::vector<Monomial> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

/// R(f)_k = C[v]_k / J_k with J the ideal of partials. Keeps the echelon form
/// of J_k so that classes of arbitrary degree-k polynomials can be read off.
template <ExactField F>
class GradedPiece {
public:
    GradedPiece(const WeightedGerm<F>& g, int k) : k_(k), vars_(g.f.variables()) {
        monomials_ = monomials_of_weighted_degree(g.weights, k);
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            index_.emplace(monomials_[i], static_cast<int>(i));
        const auto d = partials(g.f);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i].is_zero())
                continue;
            const int shift = k - (g.degree - g.weights[i]);
            for (const auto& m : monomials_of_weighted_degree(g.weights, shift)) {
                SparseVec<F> row;
                for (const auto& [dm, c] : d[i].terms()) {
                    Monomial prod = dm;
                    for (std::size_t j = 0; j < prod.size(); ++j)
                        prod[j] += m[j];
                    row[index_.at(prod)] += c;
                }
                std::erase_if(row, [](const auto& kv) { return is_zero(kv.second); });
                ideal_.insert(std::move(row));
            }
        }
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            if (!ideal_.is_pivot(static_cast<int>(i))) {
                basis_cols_.push_back(static_cast<int>(i));
                basis_.push_back(monomials_[i]);
            }
    }

    int degree() const { return k_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<std::string>& variables() const { return vars_; }
    GradedBasis graded_basis() const { return {k_, basis_}; }

    /// Coordinates of the class of h in the quotient basis. Terms of h of
    /// other weighted degrees are an error.
    Vector<F> coordinates(const Poly<F>& h) const {
        SparseVec<F> v;
        for (const auto& [m, c] : h.terms()) {
            auto it = index_.find(m);
            if (it == index_.end())
                throw std::invalid_argument("GradedPiece: term " + monomial_string(m, vars_) +
                                            " is not of weighted degree " + std::to_string(k_));
            v[it->second] += c;
        }
        std::erase_if(v, [](const auto& kv) { return is_zero(kv.second); });
        v = ideal_.reduce(std::move(v));
        Vector<F> out = Vector<F>::Zero(dim());
        for (int b = 0; b < dim(); ++b) {
            auto it = v.find(basis_cols_[static_cast<std::size_t>(b)]);
            if (it != v.end())
                out(b) = it->second;
        }
        return out;
    }

    /// The polynomial sum_b coeffs(b) * basis[b].
    Poly<F> combination(const Vector<F>& coeffs) const {
        Poly<F> out(vars_);
        for (int b = 0; b < dim(); ++b)
            out.add_term(basis_[static_cast<std::size_t>(b)], coeffs(b));
        return out;
    }

private:
    int k_;
    std::vector<std::string> vars_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, int> index_;
    SparseEchelon<F> ideal_;
    std::vector<int> basis_cols_;
    std::vector<Monomial> basis_;
};

template <ExactField F>
GradedBasis jacobian_graded_piece(const WeightedGerm<F>& g, int k) {
    return GradedPiece<F>(g, k).graded_basis();
}

/// Socle degree sum_i (d - 2 w_i) of an isolated weighted homogeneous germ.
template <ExactField F>
int socle_degree(const WeightedGerm<F>& g) {
    return static_cast<int>(g.weights.size()) * g.degree - 2 * g.total_weight();
}

/// Exact isolatedness test. If the critical locus of f is a curve through the
/// origin, some variable v_i does not vanish on it, so no power of v_i lies in
/// J and R(f) is nonzero in every degree n*w_i. An isolated singularity has
/// R(f)_k = 0 beyond the socle degree. A window of length max(w) past the
/// socle therefore decides.
template <ExactField F>
bool is_isolated(const WeightedGerm<F>& g) {
    const int start = std::max(socle_degree(g), 0);
    const int wmax = *std::max_element(g.weights.w.begin(), g.weights.w.end());
    for (int k = start + 1; k <= start + wmax; ++k)
        if (GradedPiece<F>(g, k).dim() != 0)
            return false;
    return true;
}

/// Milnor-Orlik product prod_i (d - w_i) / w_i; throws if not integral.
int milnor_number_wh(const Weights& w, int d);

template <ExactField F>
int milnor_number_wh(const WeightedGerm<F>& g) {
    return milnor_number_wh(g.weights, g.degree);
}

/// sum_k dim R(f)_k over 0 <= k <= socle degree.
template <ExactField F>
int total_jacobian_dimension(const WeightedGerm<F>& g) {
    int total = 0;
    for (int k = 0; k <= socle_degree(g); ++k)
        total += GradedPiece<F>(g, k).dim();
    return total;
}

/// Diagonal action v_i -> zeta_n^{a_i} v_i of the cyclic group of order n.
struct DiagonalCharacter {
    int order = 1;
    std::vector<int> exponents;

    bool fixes(const Monomial& m) const {
        if (m.size() != exponents.size())
            throw std::invalid_argument("character length does not match monomial");
        long s = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            s += static_cast<long>(m[i]) * exponents[i];
        return ((s % order) + order) % order == 0;
    }
    bool trivial() const {
        return order == 1 || std::all_of(exponents.begin(), exponents.end(),
                                         [this](int a) { return a % order == 0; });
    }
    std::string str(const std::vector<std::string>& vars) const;
};

/// Jets of order <= N modulo the ideal generated by the given functions (by
/// default the partials of f). Basis monomials are chosen of lowest order.
template <ExactField F>
class LocalMilnorAlgebra {
public:
    LocalMilnorAlgebra(const std::vector<Poly<F>>& generators, std::size_t nvars, int N)
        : N_(N), nvars_(nvars) {
        monomials_ = monomials_up_to_degree(nvars, N);
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            index_.emplace(monomials_[i], static_cast<int>(i));
        const auto all = monomials_;
        for (const auto& g : generators) {
            if (g.nvars() != nvars)
                throw std::invalid_argument("LocalMilnorAlgebra: variable count mismatch");
            if (g.is_zero())
                continue;
            int order = N + 1;
            for (const auto& [m, c] : g.terms())
                order = std::min(order, total_degree(m));
            for (const auto& mult : all) {
                if (total_degree(mult) + order > N)
                    continue;
                SparseVec<F> row;
                for (const auto& [gm, c] : g.terms()) {
                    Monomial prod = gm;
                    for (std::size_t j = 0; j < prod.size(); ++j)
                        prod[j] += mult[j];
                    if (total_degree(prod) > N)
                        continue;
                    row[index_.at(prod)] += c;
                }
                std::erase_if(row, [](const auto& kv) { return is_zero(kv.second); });
                ideal_.insert(std::move(row));
            }
        }
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            if (!ideal_.is_pivot(static_cast<int>(i))) {
                basis_cols_.push_back(static_cast<int>(i));
                basis_.push_back(monomials_[i]);
            }
    }

    int order() const { return N_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Monomial>& basis() const { return basis_; }

    /// Coordinates of the class of h (terms above order N are dropped).
    Vector<F> coordinates(const Poly<F>& h) const {
        SparseVec<F> v;
        for (const auto& [m, c] : h.terms())
            if (total_degree(m) <= N_)
                v[index_.at(m)] += c;
        std::erase_if(v, [](const auto& kv) { return is_zero(kv.second); });
        v = ideal_.reduce(std::move(v));
        Vector<F> out = Vector<F>::Zero(dim());
        for (int b = 0; b < dim(); ++b) {
            auto it = v.find(basis_cols_[static_cast<std::size_t>(b)]);
            if (it != v.end())
                out(b) = it->second;
        }
        return out;
    }

private:
    int N_;
    std::size_t nvars_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, int> index_;
    SparseEchelon<F> ideal_;
    std::vector<int> basis_cols_;
    std::vector<Monomial> basis_;
};

template <ExactField F>
struct LocalMilnorData {
    std::string label;
    int order = 0;
    std::vector<Monomial> basis;
    bool stabilized = false;
    std::vector<std::string> variables;
    std::shared_ptr<const LocalMilnorAlgebra<F>> algebra;

    int dim() const { return static_cast<int>(basis.size()); }
};

/// Milnor algebra of the ideal generated by `generators`, truncated at order
/// N. Equal dimensions at N-1 and N mean m^N lies in the ideal plus m^(N+1),
/// so by Nakayama in the ideal itself: the truncation is then exact.
template <ExactField F>
LocalMilnorData<F> truncated_milnor_algebra(const std::vector<Poly<F>>& generators,
                                            const std::vector<std::string>& vars, int N,
                                            std::string label = {}) {
    auto algebra = std::make_shared<const LocalMilnorAlgebra<F>>(generators, vars.size(), N);
    const LocalMilnorAlgebra<F> lower(generators, vars.size(), N - 1);
    LocalMilnorData<F> out;
    out.label = std::move(label);
    out.order = N;
    out.basis = algebra->basis();
    out.stabilized = N >= 1 && lower.dim() == algebra->dim();
    out.variables = vars;
    out.algebra = std::move(algebra);
    return out;
}

template <ExactField F>
LocalMilnorData<F> truncated_milnor_algebra(const Poly<F>& f_local, int N, std::string label = {}) {
    return truncated_milnor_algebra(partials(f_local), f_local.variables(), N, std::move(label));
}

/// Raises N from `start` until the dimension stabilises (at most `max_order`).
template <ExactField F>
LocalMilnorData<F> stable_milnor_algebra(const std::vector<Poly<F>>& generators,
                                         const std::vector<std::string>& vars, int start = 3,
                                         int max_order = 30, std::string label = {}) {
    std::optional<LocalMilnorAlgebra<F>> prev;
    for (int N = std::max(start, 1); N <= max_order; ++N) {
        auto cur = std::make_shared<const LocalMilnorAlgebra<F>>(generators, vars.size(), N);
        const int prev_dim = prev ? prev->dim() : LocalMilnorAlgebra<F>(generators, vars.size(), N - 1).dim();
        if (prev_dim == cur->dim()) {
            LocalMilnorData<F> out;
            out.label = label;
            out.order = N;
            out.basis = cur->basis();
            out.stabilized = true;
            out.variables = vars;
            out.algebra = std::move(cur);
            return out;
        }
        prev.emplace(*cur);
    }
    throw std::runtime_error("local Milnor algebra " + label + " did not stabilise up to order " +
                             std::to_string(max_order) + " (singularity not isolated?)");
}

/// Restricts the basis to monomials fixed by a diagonal character.
template <ExactField F>
LocalMilnorData<F> invariant_subalgebra(const LocalMilnorData<F>& m, const DiagonalCharacter& action) {
    if (action.order < 1)
        throw std::invalid_argument("invariant_subalgebra: group order must be positive");
    LocalMilnorData<F> out = m;
    out.basis.clear();
    for (const auto& b : m.basis)
        if (action.fixes(b))
            out.basis.push_back(b);
    return out;
}

} // namespace ellthree
