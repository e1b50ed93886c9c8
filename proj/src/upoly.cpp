#include "ellthree/upoly.hpp"

#include <set>

namespace ellthree {

std::string pattern_string(const std::vector<int>& pattern) {
    std::string out = "[";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(pattern[i]);
    }
    return out + "]";
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
        if (d > 10000000)
            throw std::runtime_error("rational_roots: coefficient too large to factor");
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace

std::vector<Rational> rational_roots(const UPoly<Rational>& f) {
    if (f.is_zero())
        throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<Rational> roots;
    std::vector<Rational> c = f.coeffs();
    std::size_t shift = 0;
    while (shift < c.size() && c[shift].is_zero())
        ++shift;
    if (shift > 0)
        roots.push_back(Rational(0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
    UPoly<Rational> g(c);
    if (g.degree() < 1)
        return roots;
    mpz_class lcm = 1;
    for (const auto& x : g.coeffs())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
    const mpz_class a0 = (g[0] * Rational(lcm)).numerator();
    const mpz_class an = (g.lead() * Rational(lcm)).numerator();
    std::set<Rational> found;
    for (const auto& p : divisors(a0))
        for (const auto& q : divisors(an))
            for (int sgn : {1, -1}) {
                Rational r(mpq_class(sgn * p, q));
                if (g.eval(r).is_zero())
                    found.insert(r);
            }
    roots.insert(roots.end(), found.begin(), found.end());
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace ellthree
