#include "ellthree/graded_jacobian.hpp"

#include <functional>

namespace ellthree {

std::vector<Monomial> monomials_of_weighted_degree(const Weights& w, int k) {
    std::vector<Monomial> out;
    if (k < 0)
        return out;
    Monomial m(w.size(), 0);
    std::function<void(std::size_t, int)> fill = [&](std::size_t i, int rest) {
        if (i + 1 == w.size()) {
            if (rest % w[i] == 0) {
                m[i] = rest / w[i];
                out.push_back(m);
            }
            return;
        }
        for (int e = 0; e * w[i] <= rest; ++e) {
            m[i] = e;
            fill(i + 1, rest - e * w[i]);
        }
        m[i] = 0;
    };
    if (w.size() == 0) {
        if (k == 0)
            out.push_back(m);
        return out;
    }
    fill(0, k);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return GrlexLess{}(b, a); });
    return out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t n, int N) {
    std::vector<Monomial> out;
    const Weights ones(std::vector<int>(n, 1));
    for (int d = N; d >= 0; --d) {
        auto layer = monomials_of_weighted_degree(ones, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

int milnor_number_wh(const Weights& w, int d) {
    Rational mu(1);
    for (int wi : w.w) {
        if (d < wi)
            throw std::invalid_argument("milnor_number_wh: degree below a weight");
        mu *= Rational(d - wi, wi);
    }
    if (!mu.is_integer())
        throw std::invalid_argument("milnor_number_wh: non-integral Milnor-Orlik product " + mu.str() +
                                    " (singularity not isolated or weights wrong)");
    return static_cast<int>(mu.numerator().get_si());
}

std::string DiagonalCharacter::str(const std::vector<std::string>& vars) const {
    if (trivial())
        return "trivial";
    std::string out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        const int a = ((exponents[i] % order) + order) % order;
        if (a == 0)
            continue;
        if (!out.empty())
            out += ", ";
        out += vars.at(i) + "->z" + std::to_string(order) + "^" + std::to_string(a) + "*" + vars.at(i);
    }
    return out;
}

} // namespace ellthree
