#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"
#include "otlab/units.hpp"

#include <toml.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace otlab {

// Datum file (TOML):
//
//   label = "inoue"
//   poly = [-1, -1, 0, 1]          # ascending coefficients; big values as strings
//   units = [["0", "1", "0"]]      # power-basis coordinates, exact rationals
//   precision_bits = 256           # optional
//   note = "..."                   # optional
//
// Floats are rejected everywhere.

struct DatumFile {
    std::string label;
    std::vector<Integer> poly;
    std::vector<Element> units;
    unsigned precision_bits = kDefaultPrecisionBits;
    bool precision_given = false;
    std::string note;
};

namespace detail {

[[noreturn]] inline void bad_field(const std::string& field, const std::string& what) {
    fail(ErrorKind::ParseError, "field '" + field + "': " + what);
}

inline Rational exact_value(const toml::node& n, const std::string& field) {
    if (auto i = n.as_integer())
        return Rational(Integer(std::to_string(i->get())));
    if (auto s = n.as_string()) {
        Rational q;
        std::string text = s->get();
        if (!text.empty() && text[0] == '+')
            text.erase(0, 1);
        bool ok = !text.empty();
        for (char ch : text)
            ok = ok && (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/');
        if (!ok || q.set_str(text, 10) != 0)
            bad_field(field, "'" + s->get() + "' is not an exact rational");
        if (q.get_den() == 0)
            bad_field(field, "zero denominator");
        q.canonicalize();
        return q;
    }
    if (n.is_floating_point())
        bad_field(field, "floating-point values are not accepted; write an exact integer or rational string");
    bad_field(field, "expected an integer or a rational string");
}

} // namespace detail

inline DatumFile parse_datum(const std::string& text, const std::string& source = "<datum>") {
    toml::table tbl;
    try {
        tbl = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << e.description() << " at line " << e.source().begin.line;
        fail(ErrorKind::ParseError, msg.str());
    }
    DatumFile d;
    for (auto& [key, node] : tbl) {
        std::string k(key.str());
        if (k != "label" && k != "poly" && k != "units" && k != "precision_bits" && k != "note")
            detail::bad_field(k, "unknown key");
    }
    if (auto n = tbl["label"]) {
        if (!n.is_string())
            detail::bad_field("label", "expected a string");
        d.label = *n.value<std::string>();
    }
    if (auto n = tbl["note"]) {
        if (!n.is_string())
            detail::bad_field("note", "expected a string");
        d.note = *n.value<std::string>();
    }

    const toml::array* poly = tbl["poly"].as_array();
    if (!tbl.contains("poly"))
        detail::bad_field("poly", "missing");
    if (!poly)
        detail::bad_field("poly", "expected an array of integers");
    if (poly->empty())
        detail::bad_field("poly", "empty");
    for (std::size_t i = 0; i < poly->size(); ++i) {
        std::string f = "poly[" + std::to_string(i) + "]";
        Rational q = detail::exact_value(*poly->get(i), f);
        if (q.get_den() != 1)
            detail::bad_field(f, "coefficients must be integers");
        d.poly.push_back(q.get_num());
    }

    const toml::array* units = tbl["units"].as_array();
    if (!tbl.contains("units"))
        detail::bad_field("units", "missing");
    if (!units)
        detail::bad_field("units", "expected an array of coordinate arrays");
    for (std::size_t j = 0; j < units->size(); ++j) {
        const toml::array* row = units->get(j)->as_array();
        if (!row)
            detail::bad_field("units[" + std::to_string(j) + "]", "expected an array");
        Element e;
        for (std::size_t i = 0; i < row->size(); ++i)
            e.push_back(detail::exact_value(*row->get(i), "units[" + std::to_string(j) + "][" + std::to_string(i) + "]"));
        if (e.size() + 1 != d.poly.size())
            detail::bad_field("units[" + std::to_string(j) + "]", "has " + std::to_string(e.size()) +
                                                                     " coordinates, the field has degree " +
                                                                     std::to_string(d.poly.size() - 1));
        d.units.push_back(std::move(e));
    }

    if (auto n = tbl["precision_bits"]) {
        auto v = n.value<std::int64_t>();
        if (!n.is_integer() || !v || *v < 64 || *v > 65536)
            detail::bad_field("precision_bits", "expected an integer in [64, 65536]");
        d.precision_bits = static_cast<unsigned>(*v);
        d.precision_given = true;
    }
    return d;
}

inline DatumFile load_datum(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    DatumFile d = parse_datum(ss.str(), path);
    if (d.label.empty()) {
        auto slash = path.find_last_of('/');
        std::string base = path.substr(slash == std::string::npos ? 0 : slash + 1);
        d.label = base.substr(0, base.find('.'));
    }
    return d;
}

} // namespace otlab
