#pragma once

#include "otlab/datum.hpp"
#include "otlab/degree12.hpp"
#include "otlab/fixture_io.hpp"
#include "otlab/invariants.hpp"
#include "otlab/otcomplex.hpp"
#include "otlab/relations.hpp"
#include "otlab/units.hpp"
#include "otlab/zigzag.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace otlab {

using Json = nlohmann::json; // std::map objects: keys come out sorted

enum class RunStatus { Certified, Mismatch, Ambiguous };

inline std::string to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Certified: return "certified";
    case RunStatus::Mismatch: return "mismatch";
    case RunStatus::Ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

inline int exit_code(RunStatus s) {
    switch (s) {
    case RunStatus::Certified: return 0;
    case RunStatus::Mismatch: return 3;
    case RunStatus::Ambiguous: return 4;
    }
    return 4;
}

struct AnalyzeOptions {
    unsigned precision_bits = kDefaultPrecisionBits;
    // The float engine repeats the VB cross-check only up to this many
    // generators; above it the exact engine alone is used.
    std::size_t float_check_limit = 64;
};

struct RunReport {
    DatumFile datum;
    RunStatus status = RunStatus::Certified;
    std::string message;
    std::optional<UnitSystem> units;
    std::optional<RelationSet> relations;
    std::vector<MetricVerdict> metrics;
    std::optional<PluriclosedTest> pluriclosed_test;
    std::optional<CohomologyReport> cohomology;
    std::optional<IdentityReport> identities;
    std::optional<CrossCheckReport> exact_check;
    std::optional<CrossCheckReport> float_check;
    std::optional<bool> engines_agree;
    std::size_t vb_size = 0;
    std::vector<std::string> notes;
    Json json;
};

// ---------------------------------------------------------------------------
// JSON helpers. Reals are strings with 40 significant digits.

namespace detail {

inline Json real_json(const Real& x) { return format_real(x, 40); }

inline Json complex_json(const Cplx& z) { return Json{{"im", real_json(z.im)}, {"re", real_json(z.re)}}; }

inline Json table_json(const Table& t) { return Json(t); }

inline Table dense(const BiTable& t, int dim) {
    Table out = zero_table(dim);
    for (auto& [b, v] : t)
        if (b.first >= 0 && b.second >= 0 && b.first <= dim && b.second <= dim)
            out[b.first][b.second] = v;
    return out;
}

inline Json bitable_json(const BiTable& t) {
    Json out = Json::array();
    for (auto& [b, v] : t)
        out.push_back(Json{{"p", b.first}, {"q", b.second}, {"dim", v}});
    return out;
}

inline Json mat_json(const Mat<Real>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(real_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

inline Json shapes_json(const std::map<Shape, long>& odd) {
    Json out = Json::array();
    for (auto& [s, m] : odd)
        out.push_back(Json{{"d", s.d}, {"p", s.p}, {"q", s.q}, {"multiplicity", m}});
    return out;
}

inline Json even_json(const std::map<EvenShape, long>& even) {
    Json out = Json::array();
    for (auto& [s, m] : even)
        out.push_back(Json{{"orientation", s.orientation == Filtration::Column ? "column" : "row"},
                           {"page", s.r},
                           {"p", s.p},
                           {"q", s.q},
                           {"multiplicity", m}});
    return out;
}

inline Json cross_check_json(const CrossCheckReport& rep, int dim) {
    Json checks = Json::array();
    for (auto& c : rep.checks)
        checks.push_back(Json{{"id", c.id},
                              {"name", c.name},
                              {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"},
                              {"detail", c.detail}});
    Json de_rham = Json::array();
    for (int k = 0; k <= 2 * dim; ++k)
        de_rham.push_back(rep.vb_de_rham.count(k) ? rep.vb_de_rham.at(k) : 0);
    return Json{{"checks", checks},
                {"all_passed", rep.all_passed()},
                {"computed",
                 Json{{"column", dense(rep.vb_column, dim)},
                      {"row", dense(rep.vb_row, dim)},
                      {"bott_chern", dense(rep.vb_bott_chern, dim)},
                      {"aeppli", dense(rep.vb_aeppli, dim)},
                      {"de_rham", de_rham},
                      {"odd_zigzags", shapes_json(rep.zigzags.odd)},
                      {"even_zigzags", even_json(rep.zigzags.even)},
                      {"squares", rep.zigzags.squares},
                      {"max_frolicher_rank", rep.max_frolicher_rank}}}};
}

inline Json conventions_json() {
    return Json{
        {"embeddings", "1..s real roots ascending; s+1..s+t complex roots with positive imaginary part sorted by "
                       "(real, imaginary); s+t+j is the conjugate of s+j"},
        {"tables", "indexed [p][q] with 0 <= p, q <= dim = s+t"},
        {"shapes", "S_d^{p,q} is the odd zigzag with endpoints (p, d-p) and (d-q, q)"},
        {"arg_branch", "(-pi, pi]"},
        {"tolerance", "eps = 2^(-bits/2); values within (eps, sqrt(eps)) of a decision boundary are refused"},
        {"reals", "decimal strings with 40 significant digits"}};
}

} // namespace detail

inline Json deg12_json(const Deg12Report& rep) {
    Json as = Json::array();
    for (auto& a : rep.assertions)
        as.push_back(Json{{"id", a.id}, {"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    Json ys = Json::array();
    for (auto& y : rep.y_roots)
        ys.push_back(detail::real_json(y));
    return Json{{"assertions", as},
                {"all_passed", rep.all_passed()},
                {"precision_bits", rep.precision_bits},
                {"largest_root", detail::real_json(rep.largest_root)},
                {"unimodular_deviation", detail::real_json(rep.unimodular_deviation)},
                {"y_roots", ys},
                {"irreducibility", rep.irreducibility}};
}

/// Full decomposition and cohomology tables of a fixture complex.
template <class Engine>
Json decomposition_json(const Engine& e, const DoubleComplex<typename Engine::Scalar>& c, const ZigzagDecomposition& z) {
    InvariantTables tab = invariant_tables(e, c);
    Json de_rham = Json::object();
    for (auto& [k, v] : tab.de_rham)
        de_rham[std::to_string(k)] = v;
    Json sq = Json::array();
    for (auto& [b, v] : z.square_corners)
        sq.push_back(Json{{"p", b.first}, {"q", b.second}, {"multiplicity", v}});
    return Json{{"generators", c.size()},
                {"odd_zigzags", detail::shapes_json(z.odd)},
                {"even_zigzags", detail::even_json(z.even)},
                {"squares", z.squares},
                {"square_corners", sq},
                {"residual", z.residual},
                {"residual_ok", z.residual_ok},
                {"cells", detail::bitable_json(tab.cells)},
                {"column", detail::bitable_json(tab.column)},
                {"row", detail::bitable_json(tab.row)},
                {"bott_chern", detail::bitable_json(tab.bott_chern)},
                {"aeppli", detail::bitable_json(tab.aeppli)},
                {"de_rham", de_rham}};
}

// ---------------------------------------------------------------------------
// The analyze pipeline.

namespace detail {

inline bool same_tables(const CrossCheckReport& a, const CrossCheckReport& b) {
    return a.vb_column == b.vb_column && a.vb_row == b.vb_row && a.vb_bott_chern == b.vb_bott_chern &&
           a.vb_aeppli == b.vb_aeppli && a.vb_de_rham == b.vb_de_rham && a.zigzags.odd == b.zigzags.odd &&
           a.zigzags.even == b.zigzags.even;
}

inline void fill_json(RunReport& rep) {
    const DatumFile& d = rep.datum;
    Json j;
    Json units = Json::array();
    for (auto& e : d.units) {
        Json row = Json::array();
        for (auto& x : e)
            row.push_back(x.get_str());
        units.push_back(row);
    }
    Json poly = Json::array();
    for (auto& c : d.poly)
        poly.push_back(c.get_str());
    j["datum"] = Json{{"label", d.label}, {"poly", poly}, {"units", units}, {"precision_bits", d.precision_bits}};
    if (!d.note.empty())
        j["datum"]["note"] = d.note;
    j["status"] = to_string(rep.status);
    j["message"] = rep.message;
    j["conventions"] = conventions_json();
    j["notes"] = rep.notes;

    if (rep.units) {
        const UnitSystem& u = *rep.units;
        Json reals = Json::array(), cplx = Json::array();
        for (auto& r : u.field.roots.real_roots)
            reals.push_back(real_json(r));
        for (auto& z : u.field.roots.complex_roots)
            cplx.push_back(complex_json(z));
        j["field"] = Json{{"degree", u.field.degree()},
                          {"s", u.s()},
                          {"t", u.t()},
                          {"dim", u.s() + u.t()},
                          {"real_roots", reals},
                          {"complex_roots", cplx},
                          {"residual_bound", real_json(u.field.roots.residual_bound)}};
        j["structure_constants"] = Json{{"log_matrix", mat_json(u.log_matrix)}, {"b", mat_json(u.b)}, {"c", mat_json(u.c)}};
    }
    if (!rep.metrics.empty()) {
        Json m = Json::array();
        for (auto& v : rep.metrics)
            m.push_back(Json{{"property", v.property}, {"verdict", to_string(v.verdict)}, {"witness", v.witness}});
        j["metrics"] = m;
    }
    if (rep.relations) {
        const RelationSet& r = *rep.relations;
        Json dr = Json::array(), db = Json::array();
        for (Mask m : r.derham)
            dr.push_back(mask_to_indices(m));
        for (auto& [i, jj] : r.dolbeault)
            db.push_back(Json{{"I", mask_to_indices(i)}, {"J", mask_to_indices(jj, r.s + 1)}});
        j["relations"] = Json{{"derham", dr},
                              {"dolbeault", db},
                              {"rho", r.rho},
                              {"rho_pm", r.rho_pm},
                              {"ambiguity_flags", r.ambiguity_flags}};
    }
    if (rep.pluriclosed_test) {
        auto& p = *rep.pluriclosed_test;
        j["pluriclosed_test"] = Json{{"verdict", to_string(p.verdict)},
                                     {"witness", p.witness},
                                     {"h21", p.h21},
                                     {"h42", p.h42},
                                     {"h12", p.h12}};
    }
    if (rep.cohomology) {
        auto& c = *rep.cohomology;
        j["cohomology"] = Json{{"betti", c.betti},
                               {"hodge", c.hodge},
                               {"vrb_dolbeault", c.vrb},
                               {"bott_chern", c.bott_chern},
                               {"aeppli", c.aeppli},
                               {"frolicher_degenerate", c.frolicher_degenerate}};
        const RelationSet& r = *rep.relations;
        ZigzagReport z = zigzag_multiplicities(r, r.s);
        ZigzagReport zb = zigzag_multiplicities_bigraded(r, r.s);
        j["zigzags"] = Json{{"odd", shapes_json(z.odd)},
                            {"even", Json::array()},
                            {"convention", z.convention},
                            {"bigraded",
                             Json{{"odd", shapes_json(zb.odd)},
                                  {"convention", zb.convention},
                                  {"bott_chern", bott_chern_from_zigzags(zb, c.dim)},
                                  {"aeppli", aeppli_numbers(zb, c.dim)}}}};
    }
    if (rep.identities) {
        Json ids = Json::array();
        for (auto& r : rep.identities->results)
            ids.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"residual", real_json(r.residual)}});
        j["structure_identities"] = ids;
    }
    if (rep.exact_check || rep.float_check) {
        int dim = rep.units->s() + rep.units->t();
        Json oc;
        oc["vb_generators"] = rep.vb_size;
        if (rep.exact_check)
            oc["exact"] = cross_check_json(*rep.exact_check, dim);
        if (rep.float_check)
            oc["float"] = cross_check_json(*rep.float_check, dim);
        if (rep.engines_agree)
            oc["engines_agree"] = *rep.engines_agree;
        j["oracle_cross_check"] = oc;
    }
    rep.json = std::move(j);
}

} // namespace detail

/// Runs the whole chain on a datum. Validation errors propagate as Error;
/// numeric refusals and formula/oracle disagreements end up in the status.
inline RunReport analyze(const DatumFile& datum, const AnalyzeOptions& opt = {}) {
    RunReport rep;
    rep.datum = datum;
    rep.datum.precision_bits = opt.precision_bits;
    PrecisionScope scope(opt.precision_bits);
    try {
        FieldDatum field = make_field(parse_polynomial(datum.poly), opt.precision_bits);
        rep.units = build_unit_system(field, datum.units);
        const UnitSystem& u = *rep.units;
        rep.relations = enumerate_relations(u);
        const RelationSet& r = *rep.relations;
        if (!r.certified()) {
            rep.status = RunStatus::Ambiguous;
            rep.message = "AmbiguousNumeric: " + std::to_string(r.ambiguity_flags.size()) +
                          " near-relations; raise the precision";
            detail::fill_json(rep);
            return rep;
        }
        rep.metrics = metric_report(u);
        rep.pluriclosed_test = cohomological_pluriclosed_test(r, u.s(), u.t());
        rep.cohomology = cohomology_report(r, u.s());
        rep.identities = structure_identity_report(u);

        VBModel vb = build_vb_complex(u, r);
        rep.vb_size = vb.complex.size();
        for (auto& n : vb.notes)
            rep.notes.push_back(n);
        bool pluriclosed = rep.pluriclosed_test->verdict == Verdict::Holds;
        std::optional<FloatComplex> inv;
        if (pluriclosed)
            inv = build_invariant_complex(u);
        rep.exact_check = oracle_cross_check(ExactEngine{}, u, r, vb, inv);
        if (vb.complex.size() <= opt.float_check_limit) {
            rep.float_check = oracle_cross_check(FloatEngine(u.tol), u, r, vb, inv);
            rep.engines_agree = detail::same_tables(*rep.exact_check, *rep.float_check);
        } else {
            rep.notes.push_back("float engine skipped: " + std::to_string(vb.complex.size()) + " VB generators exceed " +
                                std::to_string(opt.float_check_limit));
        }

        bool frolicher = rep.exact_check->max_frolicher_rank == 0;
        rep.cohomology->frolicher_degenerate = frolicher;
        std::vector<std::string> problems, unresolved;
        // below about 2^-(bits-16) the working precision cannot certify the identity tolerance
        const bool resolvable =
            boost::multiprecision::ldexp(Real(1), 16 - static_cast<int>(opt.precision_bits)) <= rep.identities->tolerance;
        if (!rep.identities->all_passed())
            for (auto& x : rep.identities->results)
                if (!x.passed) {
                    if (!resolvable && x.residual <= u.tol.sqrt_eps())
                        unresolved.push_back("(" + x.id + ") residual " + format_real(x.residual, 6));
                    else
                        problems.push_back("IdentityFailed: (" + x.id + ") " + x.name);
                }
        for (auto* cc : {&rep.exact_check, &rep.float_check})
            if (*cc && !(*cc)->all_passed())
                problems.push_back("MismatchReport: " + (*cc)->first_failure());
        if (rep.engines_agree && !*rep.engines_agree)
            problems.push_back("MismatchReport: exact and float engines disagree");
        if (!problems.empty()) {
            rep.status = RunStatus::Mismatch;
            for (auto& p : problems)
                rep.message += (rep.message.empty() ? "" : "; ") + p;
        } else if (!unresolved.empty()) {
            rep.status = RunStatus::Ambiguous;
            rep.message = "AmbiguousNumeric: " + std::to_string(opt.precision_bits) +
                          " bits cannot certify the structure identities to " +
                          format_real(rep.identities->tolerance, 3) + ":";
            for (auto& x : unresolved)
                rep.message += " " + x;
        } else {
            rep.message = "all checks passed";
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::AmbiguousNumeric && e.kind() != ErrorKind::RankUnstable)
            throw;
        rep.status = RunStatus::Ambiguous;
        rep.message = e.what();
    }
    detail::fill_json(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Markdown rendering.

namespace detail {

inline std::string md_table(const Json& t, const std::string& corner = "p\\q") {
    std::ostringstream out;
    std::size_t cols = t.empty() ? 0 : t[0].size();
    out << "| " << corner << " |";
    for (std::size_t q = 0; q < cols; ++q)
        out << ' ' << q << " |";
    out << "\n|---|";
    for (std::size_t q = 0; q < cols; ++q)
        out << "---|";
    out << '\n';
    for (std::size_t p = 0; p < t.size(); ++p) {
        out << "| " << p << " |";
        for (auto& v : t[p])
            out << ' ' << v.get<long>() << " |";
        out << '\n';
    }
    return out.str();
}

inline std::string md_vector(const Json& v) {
    std::string out;
    for (auto& x : v)
        out += (out.empty() ? "" : ", ") + std::to_string(x.get<long>());
    return "(" + out + ")";
}

} // namespace detail

inline std::string render_markdown(const Json& j) {
    std::ostringstream out;
    out << "# " << j["datum"]["label"].get<std::string>() << "\n\n";
    out << "Status: **" << j["status"].get<std::string>() << "**";
    if (!j["message"].get<std::string>().empty())
        out << " (" << j["message"].get<std::string>() << ")";
    out << "\n\n";
    if (j.contains("field")) {
        auto& f = j["field"];
        out << "Degree " << f["degree"] << ", signature (s,t) = (" << f["s"] << "," << f["t"] << "), dim " << f["dim"]
            << ".\n\n";
    }
    if (j.contains("metrics")) {
        out << "## Metrics\n\n| property | verdict | witness |\n|---|---|---|\n";
        for (auto& m : j["metrics"])
            out << "| " << m["property"].get<std::string>() << " | " << m["verdict"].get<std::string>() << " | "
                << m["witness"].get<std::string>() << " |\n";
        out << '\n';
    }
    if (j.contains("relations")) {
        out << "## Relations\n\n";
        out << "rho = " << detail::md_vector(j["relations"]["rho"]) << "\n\n";
        out << "de Rham relations:";
        for (auto& r : j["relations"]["derham"]) {
            std::string s;
            for (auto& x : r)
                s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
            out << " {" << s << "}";
        }
        out << "\n\n";
    }
    if (j.contains("cohomology")) {
        auto& c = j["cohomology"];
        out << "## Cohomology\n\nBetti numbers " << detail::md_vector(c["betti"]) << "\n\n";
        out << "### Hodge numbers\n\n" << detail::md_table(c["hodge"]) << '\n';
        out << "### Bott-Chern numbers\n\n" << detail::md_table(c["bott_chern"]) << '\n';
        out << "### Aeppli numbers\n\n" << detail::md_table(c["aeppli"]) << '\n';
        out << "### Odd zigzags\n\n| d | p | q | multiplicity |\n|---|---|---|---|\n";
        for (auto& z : j["zigzags"]["odd"])
            out << "| " << z["d"] << " | " << z["p"] << " | " << z["q"] << " | " << z["multiplicity"] << " |\n";
        out << '\n';
    }
    if (j.contains("structure_identities")) {
        out << "## Structure identities\n\n| id | identity | passed | residual |\n|---|---|---|---|\n";
        for (auto& r : j["structure_identities"])
            out << "| " << r["id"].get<std::string>() << " | " << r["name"].get<std::string>() << " | "
                << (r["passed"].get<bool>() ? "yes" : "no") << " | " << r["residual"].get<std::string>() << " |\n";
        out << '\n';
    }
    if (j.contains("oracle_cross_check")) {
        auto& oc = j["oracle_cross_check"];
        out << "## Oracle cross-check\n\nVB model: " << oc["vb_generators"] << " generators.\n\n";
        for (const char* eng : {"exact", "float"}) {
            if (!oc.contains(eng))
                continue;
            out << "### " << eng << " engine\n\n| check | status | detail |\n|---|---|---|\n";
            for (auto& c : oc[eng]["checks"])
                out << "| (" << c["id"].get<std::string>() << ") " << c["name"].get<std::string>() << " | "
                    << c["status"].get<std::string>() << " | " << c["detail"].get<std::string>() << " |\n";
            out << '\n';
        }
        if (oc.contains("engines_agree"))
            out << "Exact and float engines agree: " << (oc["engines_agree"].get<bool>() ? "yes" : "no") << "\n\n";
    }
    if (!j["notes"].empty()) {
        out << "## Notes\n\n";
        for (auto& n : j["notes"])
            out << "- " << n.get<std::string>() << '\n';
    }
    return out.str();
}

} // namespace otlab
