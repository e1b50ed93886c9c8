// Command-line front end: analyze, cusp-rank, h4, restrict, tables, catalogue.
// Exit codes: 0 success, 1 input error, 2 cross-check failure or internal error.

#include "ellthree/catalogue.hpp"
#include "ellthree/io.hpp"
#include "ellthree/mw_analyzer.hpp"
#include "ellthree/surface_tables.hpp"
#include "ellthree/upoly.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace ellthree;
using nlohmann::json;

namespace {

struct Options {
    std::string file;
    bool json = false;
    bool verbose = false;
    std::uint64_t seed = 1;
    int random = 5;
    std::string line;
    bool germ = false;
    bool dump = false;
};

json point_json(const PointLine& p) {
    json j{{"point", p.point}, {"method", p.method}, {"ref", p.ref}, {"generators", p.generators}};
    j["h4"] = p.known ? json(p.h4) : json(nullptr);
    if (!p.label.empty())
        j["label"] = p.label;
    return j;
}

json report_json(const MWReport& r) {
    json j;
    j["j"] = to_string(r.j);
    if (r.exact())
        j["rank"] = r.rank_lo;
    else
        j["rank"] = {{"lo", r.rank_lo}, {"hi", r.rank_hi}};
    j["torsion"] = r.torsion_str();
    j["group"] = r.group ? json(r.group->str()) : json(nullptr);
    j["total_h4"] = r.total_h4;
    j["points"] = json::array();
    for (const auto& p : r.per_point)
        j["points"].push_back(point_json(p));
    if (r.cusp)
        j["cusps"] = {{"m", r.cusp->m}, {"conic_coker", r.cusp->conic_coker}, {"quartic_coker", r.cusp->quartic_coker}};
    if (r.bound)
        j["bound"] = {{"pattern", r.bound->pattern}, {"rank", r.bound->surface.mw_rank},
                      {"torsion_order", r.bound->surface.torsion_order}};
    j["machine"] = r.machine_block();
    return j;
}

template <ExactField F>
int analyze(const RawThreefold& raw, const Options& o) {
    const auto in = build_threefold<F>(raw);
    const auto r = classify(in, ClassifyOptions{o.seed, o.random, true});
    if (o.json)
        std::cout << report_json(r).dump(2) << "\n";
    else
        std::cout << r.human(o.verbose);
    return 0;
}

template <ExactField F>
int cusp_rank_cmd(const RawThreefold& raw, const Options& o) {
    std::optional<ThreefoldInput<F>> in;
    CuspConfig<F> cfg;
    if (!raw.C.empty()) {
        in = build_threefold<F>(raw);
        if (in->j != JCase::Zero)
            throw std::invalid_argument("cusp-rank needs j = 0");
        if (!in->cusps)
            throw std::invalid_argument(raw.source + ": missing [cusps] block");
        validate_curve(in->j, in->C, in->A, in->B);
        cfg = *in->cusps;
        validate_cusps(in->C, cfg);
    } else {
        cfg = build_cusps<F>(raw, nullptr);
    }
    const auto r = cusp_rank(cfg, in ? &in->C : nullptr);
    const std::string quartic = r.quartic_exact ? "localised" : "plain derivative";
    const bool compared = r.quartic_exact || r.m <= 5;
    if (o.json) {
        json j{{"m", r.m},
               {"conic_coker", r.conic_coker},
               {"quartic_coker", r.quartic_coker},
               {"quartic_map", quartic},
               {"compared", compared},
               {"rank", r.rank()}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "cusps: " << r.m << "\n";
    std::cout << "conic map f2 -> f2(p_i): cokernel " << r.conic_coker << "\n";
    std::cout << "quartic map (" << quartic << "): cokernel " << r.quartic_coker
              << (compared ? "" : " (not compared: needs the sextic)") << "\n";
    if (o.verbose)
        std::cout << "conic map:\n" << matrix_string(r.conic) << "quartic map:\n" << matrix_string(r.quartic);
    std::cout << "RANK=" << r.rank() << "\n";
    return 0;
}

template <ExactField F>
int h4_cmd(const RawGerm& raw, const Options& o) {
    const auto g = build_germ<F>(raw);
    H4Options<F> opt;
    if (!g.points.empty())
        opt.points = g.points;
    const auto r = compute_h4(g.germ, opt);
    std::string basis;
    for (const auto& n : generator_names(r))
        basis += (basis.empty() ? "" : ",") + n;
    if (o.json) {
        json j{{"h4", r.h4()},     {"h31", r.h31},         {"h22", r.h22},
               {"h13", r.h13},     {"basis", generator_names(r)}, {"method", to_string(r.method)},
               {"ref", r.provenance}, {"notes", r.notes}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "h4=" << r.h4() << " basis={" << basis << "} method=" << to_string(r.method) << "\n";
    std::cout << "h31=" << r.h31 << " h22=" << r.h22 << " h13=" << r.h13 << "\n";
    std::cout << "REF=\"" << r.provenance << "\"\n";
    if (o.verbose) {
        std::cout << "germ: " << g.germ.f.str() << " weights";
        for (int w : g.germ.weights.w)
            std::cout << " " << w;
        std::cout << " degree " << g.germ.degree << "\n";
        for (const auto& p : r.points)
            std::cout << "critical point " << point_string(p.coords) << ": Milnor " << p.milnor_dim << ", invariant "
                      << p.invariant_dim << "\n";
    }
    for (const auto& n : r.notes)
        std::cout << "note: " << n << "\n";
    return 0;
}

std::vector<Rational> parse_line_point(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k)
        if (k == text.size() || text[k] == ',') {
            out.push_back(parse_scalar<Rational>(text.substr(start, k - start)));
            start = k + 1;
        }
    if (out.size() != 3)
        throw std::invalid_argument("--line points need three coordinates, got '" + text + "'");
    return out;
}

json bound_json(const LineBound& b) {
    return {{"a", point_string(b.a)},
            {"b", point_string(b.b)},
            {"pattern", b.pattern},
            {"lattice", b.surface.lattice},
            {"rank", b.surface.mw_rank},
            {"torsion_order", b.surface.torsion_order}};
}

std::string bound_line(const LineBound& b) {
    return "LINE=" + point_string(b.a) + "," + point_string(b.b) + " PATTERN=" + pattern_string(b.pattern) +
           " LATTICE=" + b.surface.lattice + " RANK<=" + std::to_string(b.surface.mw_rank) +
           " TORSION|" + std::to_string(b.surface.torsion_order);
}

int restrict_cmd(const RawThreefold& raw, const Options& o) {
    // only j and C are needed
    RawThreefold head;
    head.source = raw.source;
    head.j = raw.j;
    head.C = raw.C;
    head.A = raw.A;
    head.B = raw.B;
    const auto in = build_threefold<Rational>(head);
    validate_curve(in.j, in.C, in.A, in.B);
    if (!o.line.empty()) {
        const auto semi = o.line.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("--line expects \"a,b,c;d,e,f\"");
        const auto b = restrict_along(in.j, in.C, parse_line_point(o.line.substr(0, semi)),
                                      parse_line_point(o.line.substr(semi + 1)));
        if (o.json)
            std::cout << bound_json(b).dump(2) << "\n";
        else
            std::cout << bound_line(b) << "\n";
        return 0;
    }
    const auto s = specialize_to_line(in.j, in.C, o.seed, o.random);
    if (o.json) {
        json j{{"best", bound_json(s.best)}, {"samples", json::array()}, {"note", s.note}};
        for (const auto& b : s.samples)
            j["samples"].push_back(bound_json(b));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& b : s.samples)
        std::cout << bound_line(b) << "\n";
    std::cout << "BEST " << bound_line(s.best) << "\n";
    std::cout << "note: " << s.note << "\n";
    return 0;
}

int catalogue_cmd(const Options& o) {
    json rows = json::array();
    for (const auto& e : catalogue()) {
        std::string h4 = "?", method = "unsupported", ref = "no method available";
        if (e.kind != EntryKind::Unsupported) {
            const auto r = catalogue_h4(e);
            h4 = std::to_string(r.h4());
            method = to_string(r.method);
            ref = r.provenance;
        }
        if (o.json) {
            rows.push_back({{"j", to_string(e.j)},
                            {"name", e.name},
                            {"kind", to_string(e.kind)},
                            {"curve", e.curve},
                            {"h4", h4 == "?" ? json(nullptr) : json(std::stoi(h4))},
                            {"method", method},
                            {"ref", ref}});
            continue;
        }
        std::cout << "j=" << to_string(e.j) << " " << e.name << " kind=" << to_string(e.kind);
        if (!e.curve.empty())
            std::cout << " curve=" << e.curve << " weights=(" << e.a << "," << e.b << ")";
        std::cout << " H4=" << h4 << " METHOD=" << method << " REF=\"" << ref << "\"\n";
    }
    if (o.json)
        std::cout << rows.dump(2) << "\n";
    return 0;
}

template <class Fn>
int dispatch(FieldKind k, Fn&& fn) {
    switch (k) {
    case FieldKind::Rational: return fn(Rational{});
    case FieldKind::Gaussian: return fn(Gaussian{});
    case FieldKind::Eisenstein: return fn(Eisenstein{});
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mordell-Weil groups and local cohomology of constant-j elliptic threefolds"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "print the machine block as JSON");
        sub->add_flag("--verbose", o.verbose, "print matrices and intermediate data");
    };
    auto* analyze_cmd = app.add_subcommand("analyze", "classify the Mordell-Weil group of a threefold file");
    analyze_cmd->add_option("file", o.file, "threefold file")->required();
    analyze_cmd->add_option("--seed", o.seed, "seed for the random lines of the specialization bound");
    analyze_cmd->add_option("--random", o.random, "number of random lines")->check(CLI::PositiveNumber);
    common(analyze_cmd);

    auto* cusp_cmd = app.add_subcommand("cusp-rank", "rank from a configuration of cusps");
    cusp_cmd->add_option("file", o.file, "file with a [cusps] block (and optionally j and C)")->required();
    common(cusp_cmd);

    auto* h4 = app.add_subcommand("h4", "local cohomology of a weighted homogeneous germ");
    h4->add_option("--germ", o.file, "germ file")->required();
    common(h4);

    auto* restrict = app.add_subcommand("restrict", "restrict the discriminant curve to lines");
    restrict->add_option("file", o.file, "threefold file")->required();
    auto* line_opt = restrict->add_option("--line", o.line, "two points \"a,b,c;d,e,f\" spanning the line");
    restrict->add_option("--random", o.random, "number of random lines")
        ->check(CLI::PositiveNumber)
        ->excludes(line_opt);
    restrict->add_option("--seed", o.seed, "seed for the random lines")->excludes(line_opt);
    common(restrict);

    auto* tables = app.add_subcommand("tables", "rational elliptic surfaces with constant j");
    tables->add_flag("--dump", o.dump, "print every row")->required();

    auto* cat = app.add_subcommand("catalogue", "singularity types with h4 and provenance");
    cat->add_flag("--json", o.json, "print as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze_cmd) {
            const auto raw = read_threefold(read_file(o.file), o.file);
            return dispatch(field_of(raw), [&](auto f) { return analyze<decltype(f)>(raw, o); });
        }
        if (*cusp_cmd) {
            const auto raw = read_threefold(read_file(o.file), o.file);
            return dispatch(field_of(raw), [&](auto f) { return cusp_rank_cmd<decltype(f)>(raw, o); });
        }
        if (*h4) {
            const auto raw = read_germ(read_file(o.file), o.file);
            return dispatch(field_of(raw), [&](auto f) { return h4_cmd<decltype(f)>(raw, o); });
        }
        if (*restrict) {
            const auto raw = read_threefold(read_file(o.file), o.file);
            if (field_of(raw) != FieldKind::Rational)
                throw std::invalid_argument("restrict works over Q; drop the non-rational blocks");
            return restrict_cmd(raw, o);
        }
        if (*tables) {
            std::cout << dump_tables();
            return 0;
        }
        if (*cat)
            return catalogue_cmd(o);
    } catch (const CrossCheckError& e) {
        std::cerr << "cross-check failed: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
