#pragma once

// Threefold fixtures shared by the unit tests and the acceptance binary.

#include "ellthree/mw_analyzer.hpp"
#include "ellthree/upoly.hpp"

#include <random>

namespace fx {

using namespace ellthree;
using R = Rational;
using G = Gaussian;
using E = Eisenstein;

inline Poly<R> plane(const char* text) { return parse_poly(text, plane_variables()); }

template <ExactField F>
SingularPointAnnotation<F> annotate(std::vector<F> p, std::vector<F> u, std::vector<F> v, int a, int b,
                                    std::string label = {}) {
    SingularPointAnnotation<F> s;
    s.point = std::move(p);
    s.u = std::move(u);
    s.v = std::move(v);
    s.a = a;
    s.b = b;
    s.label = std::move(label);
    return s;
}

/// j = 1728, Q = sign * (z0^4 - z1^2 z2^2): two A3 points at (0:1:0), (0:0:1).
/// The witness x = z0^2, y = z0 z1 z2 lies on y^2 = x^3 + Q x for sign = -1.
inline ThreefoldInput<R> two_a3(int sign = 1) {
    ThreefoldInput<R> in;
    in.j = JCase::TwelveTwentyEight;
    in.C = plane("z0^4 - z1^2*z2^2") * R(sign);
    in.points.push_back(annotate<R>({0, 1, 0}, {1, 0, 0}, {0, 0, 1}, 1, 2, "A_3"));
    in.points.push_back(annotate<R>({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 1, 2, "A_3"));
    if (sign < 0)
        in.sections.push_back({plane("z0^2"), plane("z0*z1*z2")});
    return in;
}

/// j = 0, R = z0^3 (z0 z1^2 - z2^3): triple line through the flex (0:1:0) of
/// a cuspidal cubic, plus its cusp at (1:0:0).
inline ThreefoldInput<R> triple_flex() {
    ThreefoldInput<R> in;
    in.j = JCase::Zero;
    in.C = plane("z0^3*(z0*z1^2 - z2^3)");
    in.points.push_back(annotate<R>({0, 1, 0}, {0, 0, 1}, {1, 0, 0}, 1, 3));
    in.points.push_back(cusp_annotation(in.C, std::vector<R>{1, 0, 0}));
    in.sections.push_back({plane("z0*z2"), plane("z0^2*z1")});
    return in;
}

/// j = 0, R = (z0^2 + z1 z2) z1^2 z2^2: conic with two tangent double lines.
inline ThreefoldInput<R> conic_double_lines() {
    ThreefoldInput<R> in;
    in.j = JCase::Zero;
    in.C = plane("(z0^2 + z1*z2)*z1^2*z2^2");
    in.points.push_back(annotate<R>({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 1, 2));
    in.points.push_back(annotate<R>({0, 1, 0}, {1, 0, 0}, {0, 0, 1}, 1, 2));
    in.points.push_back(annotate<R>({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 1, 1));
    in.sections.push_back({plane("-z1*z2"), plane("z0*z1*z2")});
    return in;
}

/// j = 0, R = (z0^2 + z1 z2)(alpha z0^2 + z1 z2)^2 over Q(i), alpha = 2.
inline ThreefoldInput<G> conic_double_conic() {
    ThreefoldInput<G> in;
    in.j = JCase::Zero;
    in.C = plane("(z0^2 + z1*z2)*(2*z0^2 + z1*z2)^2");
    in.points.push_back(annotate<G>({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 1, 2));
    in.points.push_back(annotate<G>({0, 1, 0}, {1, 0, 0}, {0, 0, 1}, 1, 2));
    const auto F = to_field<G>(plane("2*z0^2 + z1*z2"));
    in.sections.push_back({-F, to_field<G>(plane("z0")) * F * G::generator()});
    return in;
}

/// Cubic K with K(t^2, 1, t) = t (t - 1)(t + 1)(t - 2)(t - 3)(t - 4), solved
/// from the 7 x 10 coefficient system, so that (z2^2 - z0 z1)^3 + K^2 has
/// cusps at the six points (t^2 : 1 : t) of the conic.
inline Poly<R> six_cusp_cubic() {
    const std::vector<long> ts{0, 1, -1, 2, 3, 4};
    const auto& cub = monomials_of_weighted_degree(Weights{1, 1, 1}, 3);
    Matrix<R> M = Matrix<R>::Zero(7, 10);
    for (int k = 0; k < 10; ++k) {
        const auto& m = cub[static_cast<std::size_t>(k)];
        M(2 * m[0] + m[2], k) += R(1);
    }
    UPoly<R> target(std::vector<R>{R(1)});
    for (long t : ts)
        target = target * UPoly<R>(std::vector<R>{R(-t), R(1)});
    Vector<R> b(7);
    for (int i = 0; i < 7; ++i)
        b(i) = target[static_cast<std::size_t>(i)];
    const auto x = solve<R>(M, b);
    Poly<R> K(plane_variables());
    for (int k = 0; k < 10; ++k)
        K.add_term(cub[static_cast<std::size_t>(k)], (*x)(k));
    return K;
}

inline ThreefoldInput<R> six_cusps_on_conic() {
    ThreefoldInput<R> in;
    in.j = JCase::Zero;
    const Poly<R> q = plane("z2^2 - z0*z1"), K = six_cusp_cubic();
    in.C = q * q * q + K * K;
    CuspConfig<R> cfg;
    for (long t : {0L, 1L, -1L, 2L, 3L, 4L}) {
        std::vector<R> p{R(t * t), R(1), R(t)};
        cfg.points.push_back(p);
        cfg.directions.push_back(cusp_direction(in.C, p));
    }
    in.cusps = cfg;
    return in;
}

/// The dual of the Fermat cubic: nine cusps at (0:1:z), (z:0:1), (1:z:0), z^3 = 1.
inline ThreefoldInput<E> nine_cusps() {
    ThreefoldInput<E> in;
    in.j = JCase::Zero;
    in.C = plane("z0^6 + z1^6 + z2^6 - 2*z0^3*z1^3 - 2*z1^3*z2^3 - 2*z2^3*z0^3");
    CuspConfig<E> cfg;
    const E w = E::generator();
    for (E z : {E(1), w, w * w})
        for (auto p : {std::vector<E>{0, 1, z}, std::vector<E>{z, 0, 1}, std::vector<E>{1, z, 0}}) {
            cfg.points.push_back(p);
            cfg.directions.push_back(cusp_direction(in.C, p));
        }
    in.cusps = cfg;
    return in;
}

// ---------------------------------------------------------------------------
// Projective changes of coordinates

/// Random invertible integer matrix with entries in [-range, range].
inline Matrix<R> random_gl3(std::mt19937_64& rng, int range = 3) {
    std::uniform_int_distribution<int> d(-range, range);
    for (;;) {
        Matrix<R> T(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                T(i, j) = R(d(rng));
        if (rank<R>(T) == 3)
            return T;
    }
}

inline Matrix<R> inverse(const Matrix<R>& T) {
    Matrix<R> out(3, 3);
    for (int c = 0; c < 3; ++c) {
        Vector<R> e = Vector<R>::Zero(3);
        e(c) = R(1);
        out.col(c) = *solve<R>(T, e);
    }
    return out;
}

/// C o T^{-1}: the curve in the coordinates z' = T z.
template <ExactField F>
Poly<F> transform_curve(const Poly<F>& C, const Matrix<R>& T) {
    const Matrix<R> Ti = inverse(T);
    std::vector<Poly<F>> images;
    for (int i = 0; i < 3; ++i) {
        Poly<F> l(plane_variables());
        for (int k = 0; k < 3; ++k)
            l.add_term(Monomial{k == 0, k == 1, k == 2}, embed<F>(Ti(i, k)));
        images.push_back(l);
    }
    return compose(C, images);
}

template <ExactField F>
std::vector<F> transform_point(const Matrix<R>& T, const std::vector<F>& p) {
    std::vector<F> out(3, F(0));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            out[static_cast<std::size_t>(i)] += embed<F>(T(i, k)) * p[static_cast<std::size_t>(k)];
    return out;
}

/// The input in new coordinates. Frames are carried along; the caller picks
/// T so that the weighted principal parts survive (weights (1,1), (1,2) and
/// cusps always do).
template <ExactField F>
ThreefoldInput<F> transform_input(const ThreefoldInput<F>& in, const Matrix<R>& T) {
    ThreefoldInput<F> out = in;
    out.C = transform_curve(in.C, T);
    for (auto& a : out.points) {
        a.point = transform_point(T, a.point);
        a.u = transform_point(T, a.u);
        a.v = transform_point(T, a.v);
        a.germ.reset();
    }
    if (out.cusps) {
        for (auto& p : out.cusps->points)
            p = transform_point(T, p);
        for (auto& l : out.cusps->directions)
            l = transform_point(T, l);
    }
    for (auto& s : out.sections) {
        s.x = transform_curve(s.x, T);
        s.y = transform_curve(s.y, T);
    }
    return out;
}

} // namespace fx
