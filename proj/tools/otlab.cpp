#include "otlab.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace otlab;

namespace {

struct Output {
    std::string path;
    bool markdown = false;
};

void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path);
    if (!f)
        fail(ErrorKind::ParseError, "cannot write " + out.path);
    f << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

/// --precision, then OTLAB_PRECISION, then the datum's own value.
unsigned resolve_precision(std::optional<unsigned> flag, std::optional<unsigned> datum) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("OTLAB_PRECISION")) {
        try {
            std::size_t used = 0;
            long v = std::stol(env, &used);
            if (used == std::string(env).size() && v >= 64 && v <= 65536)
                return static_cast<unsigned>(v);
        } catch (const std::logic_error&) {
        }
        fail(ErrorKind::ParseError, std::string("OTLAB_PRECISION='") + env + "' is not an integer in [64, 65536]");
    }
    return datum.value_or(kDefaultPrecisionBits);
}

int cmd_analyze(const std::string& path, const Output& out, std::optional<unsigned> bits, std::size_t float_limit) {
    DatumFile d = load_datum(path);
    AnalyzeOptions opt;
    opt.precision_bits = resolve_precision(bits, d.precision_given ? std::optional<unsigned>(d.precision_bits) : std::nullopt);
    opt.float_check_limit = float_limit;
    RunReport rep = analyze(d, opt);
    emit(out, out.markdown ? render_markdown(rep.json) : json_text(rep.json));
    if (rep.status != RunStatus::Certified)
        std::cerr << to_string(rep.status) << ": " << rep.message << '\n';
    return exit_code(rep.status);
}

int cmd_verify_deg12(const Output& out, std::optional<unsigned> bits) {
    Deg12Report rep = verify_degree12_example(resolve_precision(bits, std::nullopt));
    Json j = deg12_json(rep);
    if (out.markdown) {
        std::string md = "# Degree-12 reciprocal unit\n\n| id | assertion | passed | detail |\n|---|---|---|---|\n";
        for (auto& a : rep.assertions)
            md += "| " + a.id + " | " + a.name + " | " + (a.passed ? "yes" : "no") + " | " + a.detail + " |\n";
        emit(out, md);
    } else {
        emit(out, json_text(j));
    }
    return rep.all_passed() ? 0 : 3;
}

int cmd_zigzag(const std::string& path, const Output& out) {
    Fixture fx = load_fixture(path);
    Json j;
    ZigzagDecomposition z;
    if (fx.exact) {
        ExactEngine e;
        validate_complex(e, fx.exact_complex);
        z = zigzag_decompose(e, fx.exact_complex);
        j = decomposition_json(e, fx.exact_complex, z);
        j["mode"] = "exact";
    } else {
        PrecisionScope scope(fx.bits);
        FloatEngine e(Tolerance{fx.bits});
        validate_complex(e, fx.float_complex);
        z = zigzag_decompose(e, fx.float_complex);
        j = decomposition_json(e, fx.float_complex, z);
        j["mode"] = "float";
        j["precision_bits"] = fx.bits;
    }
    int code = 0;
    if (fx.manifest) {
        bool ok = manifest_matches(*fx.manifest, z);
        j["manifest_match"] = ok;
        if (!ok) {
            std::cerr << "MismatchReport: decomposition differs from the fixture's expect lines\n";
            code = 3;
        }
    }
    emit(out, json_text(j));
    return code;
}

int cmd_search(int degree, int height, const Output& out) {
    SearchResult r = search_pluriclosed(degree, height);
    Json cands = Json::array();
    for (auto& c : r.candidates) {
        Json units = Json::array();
        for (auto& u : c.units) {
            Json coords = Json::array();
            for (auto& x : u.unit)
                coords.push_back(x.get_str());
            units.push_back(Json{{"unit", u.description}, {"coordinates", coords}, {"matching", u.matching}});
        }
        Json system = Json::array();
        for (auto& g : c.system) {
            Json coords = Json::array();
            for (auto& x : g)
                coords.push_back(x.get_str());
            system.push_back(coords);
        }
        cands.push_back(Json{{"poly", c.poly},
                             {"s", c.s},
                             {"t", c.t},
                             {"units", units},
                             {"system", system},
                             {"pluriclosed", c.pluriclosed}});
    }
    emit(out, json_text(Json{{"degree_bound", r.degree_bound},
                             {"height_bound", r.height_bound},
                             {"screened", r.screened},
                             {"candidates", cands}}));
    return 0;
}

int cmd_make_fixture(const std::string& kind, unsigned seed, const std::string& datum, const Output& out) {
    if (kind == "random") {
        SyntheticComplex sc = random_zigzag_sum(seed);
        emit(out, write_fixture(sc.complex, sc.manifest,
                                {"random sum of 5 zigzags and 3 squares, seed " + std::to_string(seed)}));
    } else if (kind == "square") {
        SyntheticManifest m;
        m.squares = 1;
        m.square_corners[{0, 0}] = 1;
        emit(out, write_fixture(make_square(0, 0), m, {"a single square with lower-left corner (0,0)"}));
    } else if (kind == "vb") {
        DatumFile d = load_datum(datum);
        PrecisionScope scope(d.precision_bits);
        FieldDatum field = make_field(parse_polynomial(d.poly), d.precision_bits);
        UnitSystem u = build_unit_system(field, d.units);
        RelationSet r = enumerate_relations(u);
        VBModel vb = build_vb_complex(u, r);
        ZigzagReport z = zigzag_multiplicities(r, u.s());
        SyntheticManifest m;
        long covered = 0;
        for (auto& [s, k] : z.odd) {
            m.odd[s] = k;
            covered += k * (2 * std::abs(s.p + s.q - s.d) + 1);
        }
        if (covered != static_cast<long>(vb.exact.size()))
            fail(ErrorKind::MismatchReport, "formula zigzags cover " + std::to_string(covered) + " of " +
                                                std::to_string(vb.exact.size()) + " generators");
        emit(out, write_fixture(vb.exact, m, {"VB model of " + d.label + "; expect lines from the closed-form formulas"}));
    } else {
        fail(ErrorKind::ParseError, "unknown fixture kind '" + kind + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oeljeklaus-Toma manifold toolkit"};
    app.require_subcommand(1);

    Output out;
    std::optional<unsigned> bits;
    std::string path, kind = "random", datum;
    int degree = 3, height = 1;
    unsigned seed = 42;
    std::size_t float_limit = 64;

    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline on a datum file");
    analyze_cmd->add_option("file", path, "datum file (TOML)")->required();
    analyze_cmd->add_flag("--md", out.markdown, "Markdown instead of JSON");
    analyze_cmd->add_option("--out", out.path, "write the report here");
    analyze_cmd->add_option("--precision", bits, "working precision in bits");
    analyze_cmd->add_option("--float-limit", float_limit, "largest VB model repeated with the float engine");

    auto* deg12_cmd = app.add_subcommand("verify-deg12", "check the degree-12 reciprocal unit construction");
    deg12_cmd->add_flag("--md", out.markdown, "Markdown instead of JSON");
    deg12_cmd->add_option("--out", out.path, "write the report here");
    deg12_cmd->add_option("--precision", bits, "working precision in bits");

    auto* zigzag_cmd = app.add_subcommand("zigzag", "decompose a double-complex fixture");
    zigzag_cmd->add_option("fixture", path, "fixture file")->required();
    zigzag_cmd->add_option("--out", out.path, "write the report here");

    auto* search_cmd = app.add_subcommand("search-pluriclosed", "screen small polynomials for pluriclosed data");
    search_cmd->add_option("--degree", degree, "largest degree")->required();
    search_cmd->add_option("--height", height, "largest coefficient size")->required();
    search_cmd->add_option("--out", out.path, "write the report here");

    auto* fixture_cmd = app.add_subcommand("make-fixture", "write a fixture: random, square or vb");
    fixture_cmd->add_option("kind", kind, "random | square | vb")->required();
    fixture_cmd->add_option("--seed", seed, "seed for random sums");
    fixture_cmd->add_option("--datum", datum, "datum file for vb");
    fixture_cmd->add_option("--out", out.path, "write the fixture here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze_cmd)
            return cmd_analyze(path, out, bits, float_limit);
        if (*deg12_cmd)
            return cmd_verify_deg12(out, bits);
        if (*zigzag_cmd)
            return cmd_zigzag(path, out);
        if (*search_cmd)
            return cmd_search(degree, height, out);
        if (*fixture_cmd)
            return cmd_make_fixture(kind, seed, datum, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::AmbiguousNumeric:
        case ErrorKind::RankUnstable: return 4;
        case ErrorKind::MismatchReport: return 3;
        default: return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
