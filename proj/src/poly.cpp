#include "ellthree/poly.hpp"

#include <algorithm>
#include <cctype>

namespace ellthree {

int weighted_degree(const Monomial& m, const Weights& w) {
    if (m.size() != w.size())
        throw std::invalid_argument("weighted_degree: " + std::to_string(m.size()) + " exponents but " +
                                    std::to_string(w.size()) + " weights");
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * w[i];
    return d;
}

std::string monomial_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += vars.at(i);
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

namespace {

// Recursive descent over
//   expr    := sign? term (('+'|'-') term)*
//   term    := factor ('*'? factor)*
//   factor  := primary ('^' uint)?
//   primary := int ('/' uint)? | name | '(' expr ')'
class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    Poly<Rational> run() {
        skip();
        if (at_end())
            throw ParseError("empty polynomial", pos_);
        Poly<Rational> p = expr();
        skip();
        if (!at_end())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() {
        skip();
        return at_end() ? '\0' : s_[pos_];
    }

    Poly<Rational> expr() {
        Poly<Rational> acc(vars_);
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = s_[pos_] == '-';
            ++pos_;
        }
        Poly<Rational> t = term();
        acc += negate ? -t : t;
        while (peek() == '+' || peek() == '-') {
            negate = s_[pos_] == '-';
            ++pos_;
            t = term();
            acc += negate ? -t : t;
        }
        return acc;
    }

    Poly<Rational> term() {
        Poly<Rational> acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Poly<Rational> factor() {
        Poly<Rational> base = primary();
        if (peek() == '^') {
            ++pos_;
            skip();
            const std::size_t at = pos_;
            const std::string e = digits();
            if (e.empty())
                throw ParseError("expected exponent", at);
            if (e.size() > 4)
                throw ParseError("exponent too large", at);
            return pow(base, static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }

    Poly<Rational> primary() {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            Poly<Rational> inner = expr();
            if (peek() != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            if (peek() == '/') {
                ++pos_;
                skip();
                const std::size_t dat = pos_;
                den = digits();
                if (den.empty())
                    throw ParseError("expected denominator", dat);
                if (mpz_class(den) == 0)
                    throw ParseError("zero denominator", dat);
            }
            return Poly<Rational>::constant(vars_, Rational(mpq_class(mpz_class(num), mpz_class(den))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name.push_back(s_[pos_++]);
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end())
                throw ParseError("unknown variable '" + name + "'", at);
            return Poly<Rational>::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
        }
        if (at_end())
            throw ParseError("unexpected end of input", at);
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }

    std::string digits() {
        std::string d;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            d.push_back(s_[pos_++]);
        return d;
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace

Poly<Rational> parse_poly(std::string_view text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
    return evaluate(parse_poly(text, {}), std::vector<Rational>{});
}

template <>
Eisenstein parse_scalar<Eisenstein>(std::string_view text) {
    return evaluate(to_field<Eisenstein>(parse_poly(text, {EisensteinTag::symbol})),
                    std::vector<Eisenstein>{Eisenstein::generator()});
}

template <>
Gaussian parse_scalar<Gaussian>(std::string_view text) {
    return evaluate(to_field<Gaussian>(parse_poly(text, {GaussianTag::symbol})),
                    std::vector<Gaussian>{Gaussian::generator()});
}

} // namespace ellthree
