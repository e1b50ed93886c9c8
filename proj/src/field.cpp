#include "ellthree/field.hpp"

#include <cctype>

namespace ellthree {

Rational Rational::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+'))
            d.remove_prefix(1);
        if (d.empty())
            return false;
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10), d(den, 10);
    if (d == 0)
        throw std::domain_error("Rational: zero denominator");
    return Rational(mpq_class(n, d));
}

Rational pow(const Rational& base, unsigned exp) { return power(base, exp); }

} // namespace ellthree
