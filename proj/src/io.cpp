#include "ellthree/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ellthree {

namespace io_detail {

void fail(const std::string& source, const Located& at, const std::string& msg, std::size_t offset) {
    throw InputError(source, at.line, at.column + static_cast<int>(offset), msg);
}

Poly<Rational> rational_poly(const std::string& source, const Located& v, const std::vector<std::string>& vars) {
    try {
        return parse_poly(v.text, vars);
    } catch (const ParseError& e) {
        fail(source, v, e.what(), e.position);
    }
}

Rational rational_scalar(const std::string& source, const Located& v) {
    try {
        return parse_scalar<Rational>(v.text);
    } catch (const ParseError& e) {
        fail(source, v, e.what(), e.position);
    }
}

std::vector<std::vector<Piece>> tuples(const std::string& source, const Located& v) {
    std::vector<std::vector<Piece>> out;
    const std::string& s = v.text;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
            ++i;
            continue;
        }
        if (c != '(')
            fail(source, v, std::string("expected '(' but found '") + c + "'", i);
        const std::size_t close = s.find(')', i);
        if (close == std::string::npos)
            fail(source, v, "unclosed '('", i);
        std::vector<Piece> group;
        std::size_t start = i + 1;
        for (std::size_t k = i + 1; k <= close; ++k) {
            if (k == close || s[k] == ':' || s[k] == ',') {
                std::size_t a = start, b = k;
                while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
                    ++a;
                while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
                    --b;
                if (a == b)
                    fail(source, v, "empty coordinate", a);
                group.push_back({s.substr(a, b - a), a});
                start = k + 1;
            }
        }
        out.push_back(std::move(group));
        i = close + 1;
    }
    if (out.empty())
        fail(source, v, "expected a point like (a:b:c)");
    return out;
}

std::vector<int> int_list(const std::string& source, const Located& v) {
    std::vector<int> out;
    const std::string& s = v.text;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',' || s[i] == '(' || s[i] == ')') {
            ++i;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            fail(source, v, "expected a positive integer", i);
        std::size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
        if (k - i > 6)
            fail(source, v, "integer too large", i);
        out.push_back(std::stoi(s.substr(i, k - i)));
        i = k;
    }
    return out;
}

std::vector<int> weight_header(const std::string& source, const Located& v, const std::vector<std::string>& vars) {
    const std::string& s = v.text;
    if (s.find('=') == std::string::npos)
        return int_list(source, v);
    std::vector<int> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
            ++i;
            continue;
        }
        std::size_t eq = s.find('=', i);
        if (eq == std::string::npos)
            fail(source, v, "expected 'name=weight'", i);
        std::string name = s.substr(i, eq - i);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
            name.pop_back();
        if (out.size() >= vars.size() || name != vars[out.size()])
            fail(source, v,
                 "expected weight of '" + (out.size() < vars.size() ? vars[out.size()] : std::string("?")) +
                     "' but found '" + name + "'",
                 i);
        std::size_t k = eq + 1;
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k])))
            ++k;
        const std::size_t num = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
        if (k == num || k - num > 6)
            fail(source, v, "expected a positive integer", num);
        const int w = std::stoi(s.substr(num, k - num));
        if (w <= 0)
            fail(source, v, "weights must be positive", num);
        out.push_back(w);
        i = k;
    }
    return out;
}

const char* generator_symbol(FieldKind k) {
    switch (k) {
    case FieldKind::Gaussian: return GaussianTag::symbol;
    case FieldKind::Eisenstein: return EisensteinTag::symbol;
    case FieldKind::Rational: break;
    }
    return "";
}

} // namespace io_detail

namespace {

using io_detail::fail;

struct Line {
    std::string key, value;
    int line = 0, column = 0; // of the value
    bool header = false;      // "[name]" with the name in key
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

// Splits into headers and "key = value" / "key: value" lines; '#' starts a comment.
std::vector<Line> tokenize(const std::string& text, const std::string& source) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (const auto h = raw.find('#'); h != std::string::npos)
            raw.erase(h);
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const std::string s = trim(raw);
        if (s.empty())
            continue;
        const int indent = static_cast<int>(raw.find_first_not_of(" \t"));
        Line l;
        l.line = n;
        if (s.front() == '[') {
            if (s.back() != ']')
                fail(source, Located{"", n, indent + 1}, "unterminated section header");
            l.header = true;
            l.key = trim(s.substr(1, s.size() - 2));
            l.column = indent + 1;
            out.push_back(l);
            continue;
        }
        const auto eq = raw.find_first_of("=:");
        if (eq == std::string::npos)
            fail(source, Located{"", n, indent + 1}, "expected 'key = value'");
        l.key = trim(raw.substr(0, eq));
        if (l.key.empty())
            fail(source, Located{"", n, indent + 1}, "missing key before '" + std::string(1, raw[eq]) + "'");
        std::size_t v = eq + 1;
        while (v < raw.size() && std::isspace(static_cast<unsigned char>(raw[v])))
            ++v;
        l.value = trim(raw.substr(std::min(v, raw.size())));
        l.column = static_cast<int>(v) + 1;
        if (l.value.empty())
            fail(source, Located{"", n, l.column}, "missing value for '" + l.key + "'");
        out.push_back(l);
    }
    return out;
}

Located located(const Line& l) { return {l.value, l.line, l.column}; }

void set_once(Located& slot, const Line& l, const std::string& source) {
    if (!slot.empty())
        fail(source, located(l), "'" + l.key + "' given twice");
    slot = located(l);
}

[[noreturn]] void unknown_key(const Line& l, const std::string& section, const std::string& source) {
    fail(source, Located{"", l.line, 1}, "unknown key '" + l.key + "' in " + section);
}

bool mentions(const std::string& text, char symbol) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != symbol)
            continue;
        const bool left = i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
        const bool right =
            i + 1 < text.size() && (std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_');
        if (!left && !right)
            return true;
        // "2i", "3w": a digit directly before the symbol is implicit multiplication
        if (left && !right && std::isdigit(static_cast<unsigned char>(text[i - 1]))) {
            std::size_t k = i;
            while (k > 0 && std::isdigit(static_cast<unsigned char>(text[k - 1])))
                --k;
            if (k == 0 || !(std::isalpha(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '_'))
                return true;
        }
    }
    return false;
}

FieldKind field_from(const std::vector<const Located*>& values, const std::string& source) {
    const Located* gi = nullptr;
    const Located* ew = nullptr;
    for (const auto* v : values) {
        if (!gi && mentions(v->text, GaussianTag::symbol[0]))
            gi = v;
        if (!ew && mentions(v->text, EisensteinTag::symbol[0]))
            ew = v;
    }
    if (gi && ew)
        fail(source, *ew, "coordinates mix i and w; only one quadratic extension is supported");
    if (gi)
        return FieldKind::Gaussian;
    if (ew)
        return FieldKind::Eisenstein;
    return FieldKind::Rational;
}

} // namespace

RawThreefold read_threefold(const std::string& text, const std::string& source) {
    RawThreefold raw;
    raw.source = source;
    enum class Sec { Top, Point, Cusps, Section } sec = Sec::Top;
    for (const auto& l : tokenize(text, source)) {
        if (l.header) {
            if (l.key == "point") {
                raw.points.emplace_back();
                raw.points.back().line = l.line;
                sec = Sec::Point;
            } else if (l.key == "hk_point") {
                if (raw.points.empty() || sec != Sec::Point)
                    fail(source, Located{"", l.line, l.column}, "[hk_point] must follow a [point] block");
                raw.points.back().hk_points.push_back({});
            } else if (l.key == "cusps") {
                if (raw.cusps)
                    fail(source, Located{"", l.line, l.column}, "only one [cusps] block is allowed");
                raw.cusps = RawCusps{};
                raw.cusps->line = l.line;
                sec = Sec::Cusps;
            } else if (l.key == "section") {
                raw.sections.emplace_back();
                raw.sections.back().line = l.line;
                sec = Sec::Section;
            } else {
                fail(source, Located{"", l.line, l.column}, "unknown section [" + l.key + "]");
            }
            continue;
        }
        switch (sec) {
        case Sec::Top:
            if (l.key == "j")
                set_once(raw.j, l, source);
            else if (l.key == "C")
                set_once(raw.C, l, source);
            else if (l.key == "A")
                set_once(raw.A, l, source);
            else if (l.key == "B")
                set_once(raw.B, l, source);
            else
                unknown_key(l, "the header", source);
            break;
        case Sec::Point: {
            auto& p = raw.points.back();
            if (!p.hk_points.empty() && p.hk_points.back().empty()) {
                if (l.key != "at")
                    unknown_key(l, "[hk_point]", source);
                p.hk_points.back() = located(l);
            } else if (l.key == "at")
                set_once(p.at, l, source);
            else if (l.key == "frame")
                set_once(p.frame, l, source);
            else if (l.key == "weights")
                set_once(p.weights, l, source);
            else if (l.key == "germ")
                set_once(p.germ, l, source);
            else if (l.key == "label")
                set_once(p.label, l, source);
            else
                unknown_key(l, "[point]", source);
            break;
        }
        case Sec::Cusps:
            if (l.key == "points")
                set_once(raw.cusps->points, l, source);
            else if (l.key == "directions")
                set_once(raw.cusps->directions, l, source);
            else
                unknown_key(l, "[cusps]", source);
            break;
        case Sec::Section: {
            auto& s = raw.sections.back();
            if (l.key == "x")
                set_once(s.x, l, source);
            else if (l.key == "y")
                set_once(s.y, l, source);
            else
                unknown_key(l, "[section]", source);
            break;
        }
        }
    }
    for (const auto& p : raw.points)
        for (const auto& h : p.hk_points)
            if (h.empty())
                fail(source, Located{"", p.line, 1}, "[hk_point] without 'at ='");
    return raw;
}

RawGerm read_germ(const std::string& text, const std::string& source) {
    RawGerm raw;
    raw.source = source;
    bool in_point = false;
    for (const auto& l : tokenize(text, source)) {
        if (l.header) {
            if (l.key != "sing_point")
                fail(source, Located{"", l.line, l.column}, "unknown section [" + l.key + "]");
            raw.points.emplace_back();
            raw.points.back().line = l.line;
            in_point = true;
            continue;
        }
        if (in_point) {
            auto& p = raw.points.back();
            if (l.key == "at")
                set_once(p.at, l, source);
            else if (l.key == "label")
                set_once(p.label, l, source);
            else
                unknown_key(l, "[sing_point]", source);
            continue;
        }
        if (l.key == "weights")
            set_once(raw.weights, l, source);
        else if (l.key == "f")
            set_once(raw.f, l, source);
        else if (l.key == "j")
            set_once(raw.j, l, source);
        else if (l.key == "curve")
            set_once(raw.curve, l, source);
        else
            unknown_key(l, "the germ header", source);
    }
    return raw;
}

FieldKind field_of(const RawThreefold& raw) {
    std::vector<const Located*> v;
    for (const auto& p : raw.points) {
        v.insert(v.end(), {&p.at, &p.frame, &p.germ});
        for (const auto& h : p.hk_points)
            v.push_back(&h);
    }
    if (raw.cusps)
        v.insert(v.end(), {&raw.cusps->points, &raw.cusps->directions});
    for (const auto& s : raw.sections)
        v.insert(v.end(), {&s.x, &s.y});
    return field_from(v, raw.source);
}

FieldKind field_of(const RawGerm& raw) {
    std::vector<const Located*> v{&raw.f, &raw.curve};
    for (const auto& p : raw.points)
        v.push_back(&p.at);
    return field_from(v, raw.source);
}

std::string to_string(FieldKind k) {
    switch (k) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Gaussian: return "Q(i)";
    case FieldKind::Eisenstein: return "Q(w)";
    }
    return "?";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace ellthree
