#pragma once

// Exact scalar types. Everything in the library is templated on one of these:
//   Rational            the rationals, GMP backed
//   QuadExt<Tag>        Q(theta) with theta^2 = Tag::p * theta + Tag::q
//   Eisenstein          Q(w), w^2 = -w - 1 (cube roots of unity)
//   Gaussian            Q(i), i^2 = -1

#include <Eigen/Core>
#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellthree {

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(v) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& z) : v_(z) {}
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "a", "-a" or "a/b".
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational inverse() const { return Rational(1) / *this; }
    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline std::string to_string(const Rational& r) { return r.str(); }
Rational pow(const Rational& base, unsigned exp);

/// Q(theta) where theta is a root of X^2 - p X - q (irreducible over Q).
template <class Tag>
class QuadExt {
public:
    using tag = Tag;

    QuadExt() = default;
    QuadExt(long v) : a_(v) {}
    QuadExt(int v) : a_(v) {}
    QuadExt(Rational a) : a_(std::move(a)) {}
    QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadExt generator() { return QuadExt(Rational(0), Rational(1)); }

    const Rational& re() const { return a_; }
    const Rational& im() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadExt& operator+=(const QuadExt& o) { a_ += o.a_; b_ += o.b_; return *this; }
    QuadExt& operator-=(const QuadExt& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    QuadExt& operator*=(const QuadExt& o) {
        const Rational p(Tag::p), q(Tag::q);
        Rational bd = b_ * o.b_;
        Rational na = a_ * o.a_ + bd * q;
        Rational nb = a_ * o.b_ + b_ * o.a_ + bd * p;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }
    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
    QuadExt operator-() const { return QuadExt(-a_, -b_); }
    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    /// Image under the nontrivial automorphism theta -> p - theta.
    QuadExt conjugate() const {
        const Rational p(Tag::p);
        return QuadExt(a_ + b_ * p, -b_);
    }
    Rational norm() const {
        const Rational p(Tag::p), q(Tag::q);
        return a_ * a_ + a_ * b_ * p - b_ * b_ * q;
    }
    QuadExt inverse() const {
        Rational n = norm();
        if (n.is_zero())
            throw std::domain_error("QuadExt: division by zero");
        QuadExt c = conjugate();
        return QuadExt(c.a_ / n, c.b_ / n);
    }

    std::string str() const {
        if (b_.is_zero())
            return a_.str();
        std::string gen = std::string(Tag::symbol);
        std::string bpart = b_.is_one() ? gen : (b_ == Rational(-1) ? "-" + gen : b_.str() + "*" + gen);
        if (a_.is_zero())
            return bpart;
        return "(" + a_.str() + (b_.sign() > 0 ? "+" : "") + bpart + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

private:
    Rational a_, b_;
};

template <class Tag>
bool is_zero(const QuadExt<Tag>& x) { return x.is_zero(); }
template <class Tag>
std::string to_string(const QuadExt<Tag>& x) { return x.str(); }

struct EisensteinTag {
    static constexpr long p = -1;
    static constexpr long q = -1;
    static constexpr const char* symbol = "w";
};
struct GaussianTag {
    static constexpr long p = 0;
    static constexpr long q = -1;
    static constexpr const char* symbol = "i";
};

using Eisenstein = QuadExt<EisensteinTag>;
using Gaussian = QuadExt<GaussianTag>;

template <class F>
concept ExactField = requires(F a, F b) {
    { a + b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { to_string(a) } -> std::convertible_to<std::string>;
    F(0);
    F(1);
};

/// Embedding of the rationals into F.
template <ExactField F>
F embed(const Rational& r) {
    if constexpr (std::same_as<F, Rational>)
        return r;
    else
        return F(r);
}

template <ExactField F>
F power(F base, unsigned exp) {
    F result(1);
    while (exp) {
        if (exp & 1u)
            result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

} // namespace ellthree

namespace Eigen {

template <>
struct NumTraits<ellthree::Rational> : GenericNumTraits<ellthree::Rational> {
    using Real = ellthree::Rational;
    using NonInteger = ellthree::Rational;
    using Literal = ellthree::Rational;
    using Nested = ellthree::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
};

template <class Tag>
struct NumTraits<ellthree::QuadExt<Tag>> : GenericNumTraits<ellthree::QuadExt<Tag>> {
    using Real = ellthree::QuadExt<Tag>;
    using NonInteger = ellthree::QuadExt<Tag>;
    using Literal = ellthree::QuadExt<Tag>;
    using Nested = ellthree::QuadExt<Tag>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 128
    };
};

} // namespace Eigen
