#pragma once

// Text input: threefold files (j, C, [point], [hk_point], [cusps],
// [section] blocks) and germ files (weights header, f or j/curve,
// [sing_point] blocks). Reading is two-step: a field-independent pass keeps
// every value with its line and column, and build_* converts over the field
// that the coordinates need.

#include "ellthree/mw_analyzer.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellthree {

/// Malformed input; the message starts with "source:line:column: ".
struct InputError : std::invalid_argument {
    InputError(const std::string& source, int line, int column, const std::string& msg)
        : std::invalid_argument(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    int line, column;
};

/// A value and where it starts in the file (1-based).
struct Located {
    std::string text;
    int line = 0, column = 0;
    bool empty() const { return text.empty(); }
};

struct RawPoint {
    Located at, frame, weights, germ, label;
    std::vector<Located> hk_points;
    int line = 0;
};

struct RawCusps {
    Located points, directions;
    int line = 0;
};

struct RawSection {
    Located x, y;
    int line = 0;
};

struct RawThreefold {
    std::string source;
    Located j, C, A, B;
    std::vector<RawPoint> points;
    std::optional<RawCusps> cusps;
    std::vector<RawSection> sections;
};

struct RawSingPoint {
    Located at, label;
    int line = 0;
};

struct RawGerm {
    std::string source;
    Located weights, f, j, curve;
    std::vector<RawSingPoint> points;
};

RawThreefold read_threefold(const std::string& text, const std::string& source = "<input>");
RawGerm read_germ(const std::string& text, const std::string& source = "<input>");

/// Gaussian if some coordinate, germ or section mentions i, Eisenstein if
/// one mentions w; both is an error.
FieldKind field_of(const RawThreefold& raw);
FieldKind field_of(const RawGerm& raw);
std::string to_string(FieldKind k);

std::string read_file(const std::string& path);

namespace io_detail {

[[noreturn]] void fail(const std::string& source, const Located& at, const std::string& msg, std::size_t offset = 0);

/// Polynomial over Q in the given variables, errors located in the file.
Poly<Rational> rational_poly(const std::string& source, const Located& v, const std::vector<std::string>& vars);
Rational rational_scalar(const std::string& source, const Located& v);

/// Splits "(a:b:c)(d:e:f)" or "(a:b:c);(d:e:f)" into the parenthesised
/// groups and each group at ':' or ','; offsets are kept for messages.
struct Piece {
    std::string text;
    std::size_t offset = 0;
};
std::vector<std::vector<Piece>> tuples(const std::string& source, const Located& v);
std::vector<int> int_list(const std::string& source, const Located& v);

/// Weights header "s=2 t=3 x=2 y=3" (or "2 3 2 3"), in the order of vars;
/// a prefix of vars may be given.
std::vector<int> weight_header(const std::string& source, const Located& v, const std::vector<std::string>& vars);

const char* generator_symbol(FieldKind k);

template <ExactField F>
F scalar(const std::string& source, const Located& v, const Piece& p) {
    try {
        return parse_scalar<F>(p.text);
    } catch (const ParseError& e) {
        fail(source, v, std::string("bad number '") + p.text + "': " + e.what(), p.offset + e.position);
    } catch (const std::exception& e) {
        fail(source, v, std::string("bad number '") + p.text + "': " + e.what(), p.offset);
    }
}

template <ExactField F>
std::vector<F> point(const std::string& source, const Located& v, const std::vector<Piece>& group, std::size_t n) {
    if (group.size() != n)
        fail(source, v, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(group.size()),
             group.empty() ? 0 : group.front().offset);
    std::vector<F> out;
    for (const auto& p : group)
        out.push_back(scalar<F>(source, v, p));
    return out;
}

template <ExactField F>
std::vector<F> single_point(const std::string& source, const Located& v, std::size_t n) {
    const auto t = tuples(source, v);
    if (t.size() != 1)
        fail(source, v, "expected one point");
    return point<F>(source, v, t.front(), n);
}

/// Polynomial over F: the generator symbol is read as a variable and substituted.
template <ExactField F>
Poly<F> field_poly(const std::string& source, const Located& v, const std::vector<std::string>& vars) {
    if constexpr (std::same_as<F, Rational>) {
        return rational_poly(source, v, vars);
    } else {
        std::vector<std::string> ext = vars;
        ext.push_back(F::tag::symbol);
        const Poly<Rational> p = rational_poly(source, v, ext);
        std::vector<Poly<F>> images;
        for (std::size_t i = 0; i < vars.size(); ++i)
            images.push_back(Poly<F>::variable(vars, i));
        images.push_back(Poly<F>::constant(vars, F::generator()));
        return compose(to_field<F>(p), images);
    }
}

} // namespace io_detail

/// The [cusps] block; directions may be omitted when C is known (they are
/// then the cuspidal tangents).
template <ExactField F>
CuspConfig<F> build_cusps(const RawThreefold& raw, const Poly<Rational>* C) {
    using namespace io_detail;
    const auto& src = raw.source;
    if (!raw.cusps)
        fail(src, Located{"", 1, 1}, "missing [cusps] block");
    const auto& rc = *raw.cusps;
    if (rc.points.empty())
        fail(src, Located{"", rc.line, 1}, "[cusps] needs 'points ='");
    CuspConfig<F> cfg;
    for (const auto& g : tuples(src, rc.points))
        cfg.points.push_back(point<F>(src, rc.points, g, 3));
    if (rc.directions.empty()) {
        if (!C)
            fail(src, Located{"", rc.line, 1}, "[cusps] needs 'directions =' when C is not given");
        try {
            for (const auto& p : cfg.points)
                cfg.directions.push_back(cusp_direction(*C, p));
        } catch (const std::invalid_argument& e) {
            fail(src, rc.points, e.what());
        }
    } else {
        for (const auto& g : tuples(src, rc.directions))
            cfg.directions.push_back(point<F>(src, rc.directions, g, 3));
        if (cfg.directions.size() != cfg.points.size())
            fail(src, rc.directions, "one direction per cusp point is required");
    }
    return cfg;
}

template <ExactField F>
ThreefoldInput<F> build_threefold(const RawThreefold& raw) {
    using namespace io_detail;
    const auto& src = raw.source;
    ThreefoldInput<F> in;
    if (raw.j.empty())
        fail(src, Located{"", 1, 1}, "missing 'j = 0 | 1728 | generic'");
    try {
        in.j = parse_jcase(raw.j.text);
    } catch (const std::invalid_argument& e) {
        fail(src, raw.j, e.what());
    }
    if (raw.C.empty())
        fail(src, Located{"", 1, 1}, "missing 'C = <poly>'");
    in.C = rational_poly(src, raw.C, plane_variables());
    if (in.j == JCase::Generic) {
        if (raw.A.empty() || raw.B.empty())
            fail(src, raw.j, "generic j needs 'A =' and 'B ='");
        in.A = rational_scalar(src, raw.A);
        in.B = rational_scalar(src, raw.B);
    } else if (!raw.A.empty() || !raw.B.empty()) {
        fail(src, raw.A.empty() ? raw.B : raw.A, "A and B are only used for generic j");
    }
    for (const auto& rp : raw.points) {
        SingularPointAnnotation<F> a;
        const Located block{"", rp.line, 1};
        if (rp.at.empty())
            fail(src, block, "[point] needs 'at = (a:b:c)'");
        a.point = single_point<F>(src, rp.at, 3);
        a.label = rp.label.text;
        const bool table = !a.label.empty() && (is_unsupported_type(a.label) || [&] {
            try {
                parse_sing_key(a.label);
                return true;
            } catch (const std::invalid_argument&) {
                return false;
            }
        }());
        if (!table) {
            if (rp.frame.empty())
                fail(src, block, "[point] needs 'frame = (u)(v)'");
            const auto fr = tuples(src, rp.frame);
            if (fr.size() != 2)
                fail(src, rp.frame, "frame needs two vectors (u)(v)");
            a.u = point<F>(src, rp.frame, fr[0], 3);
            a.v = point<F>(src, rp.frame, fr[1], 3);
            if (rp.weights.empty())
                fail(src, block, "[point] needs 'weights = a,b' for (s, t)");
            const auto w = int_list(src, rp.weights);
            if (w.size() != 2 || w[0] <= 0 || w[1] <= 0)
                fail(src, rp.weights, "weights must be two positive integers");
            a.a = w[0];
            a.b = w[1];
        }
        if (!rp.germ.empty())
            a.germ = field_poly<F>(src, rp.germ, germ_variables());
        for (const auto& h : rp.hk_points)
            a.hk_points.push_back(single_point<F>(src, h, 4));
        in.points.push_back(std::move(a));
    }
    if (raw.cusps)
        in.cusps = build_cusps<F>(raw, &in.C);
    for (const auto& rs : raw.sections) {
        if (rs.x.empty() || rs.y.empty())
            fail(src, Located{"", rs.line, 1}, "[section] needs 'x =' and 'y ='");
        in.sections.push_back({field_poly<F>(src, rs.x, plane_variables()), field_poly<F>(src, rs.y, plane_variables())});
    }
    return in;
}

/// A germ file as a weighted germ with optional critical points.
template <ExactField F>
struct GermInput {
    WeightedGerm<F> germ;
    std::vector<HKPoint<F>> points;
};

template <ExactField F>
GermInput<F> build_germ(const RawGerm& raw) {
    using namespace io_detail;
    const auto& src = raw.source;
    if (raw.weights.empty())
        fail(src, Located{"", 1, 1}, "missing 'weights:' header");
    std::optional<WeightedGerm<F>> g;
    if (!raw.f.empty()) {
        if (!raw.curve.empty() || !raw.j.empty())
            fail(src, raw.f, "give either 'f =' or 'j =' with 'curve =', not both");
        const auto w = weight_header(src, raw.weights, germ_variables());
        if (w.size() != 4)
            fail(src, raw.weights, "'f =' needs weights for s, t, x and y");
        const Poly<F> f = field_poly<F>(src, raw.f, germ_variables());
        try {
            g = WeightedGerm<F>::make(f, Weights(w));
        } catch (const std::invalid_argument& e) {
            fail(src, raw.f, e.what());
        }
    } else {
        if (raw.curve.empty() || raw.j.empty())
            fail(src, raw.weights, "expected 'f = <poly>' or 'j =' and 'curve ='");
        JCase j;
        try {
            j = parse_jcase(raw.j.text);
        } catch (const std::invalid_argument& e) {
            fail(src, raw.j, e.what());
        }
        const auto w = weight_header(src, raw.weights, germ_variables());
        if (w.size() != 2 && w.size() != 4)
            fail(src, raw.weights, "curve germs need the weights of s and t");
        const Poly<F> c = field_poly<F>(src, raw.curve, local_variables());
        try {
            g = threefold_germ(j, c, w[0], w[1]);
        } catch (const std::invalid_argument& e) {
            fail(src, raw.curve, e.what());
        }
    }
    GermInput<F> out{*g, {}};
    for (const auto& rp : raw.points) {
        if (rp.at.empty())
            fail(src, Located{"", rp.line, 1}, "[sing_point] needs 'at = (s:t:x:y)'");
        try {
            out.points.push_back(make_hk_point(out.germ.weights, single_point<F>(src, rp.at, 4), rp.label.text));
        } catch (const InputError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            fail(src, rp.at, e.what());
        }
    }
    return out;
}

} // namespace ellthree
