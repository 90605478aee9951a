#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"
#include "otlab/zigzag.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace otlab {

// Plain-text complex description, one directive per line:
//
//   # comment
//   mode exact | mode float <bits>
//   gen <label> <p> <q>
//   d1 <source> <target> <coefficient>
//   d2 <source> <target> <coefficient>
//   expect odd <d> <p> <q> <multiplicity>
//   expect even column|row <r> <p> <q> <multiplicity>
//   expect squares <p> <q> <multiplicity>
//
// Coefficients are Gaussian rationals ("3", "-1/2", "2i", "1/2-3/4i") in exact
// mode and the same syntax with decimal parts in float mode.

struct Fixture {
    bool exact = true;
    unsigned bits = kDefaultPrecisionBits;
    ExactComplex exact_complex;
    FloatComplex float_complex;
    std::optional<SyntheticManifest> manifest;
    std::vector<std::string> comments;

    std::size_t size() const { return exact ? exact_complex.size() : float_complex.size(); }
};

namespace detail {

/// Splits "a+bi" / "a-bi" / "bi" / "a" into real and imaginary text.
inline bool split_complex_text(const std::string& s, std::string& re, std::string& im) {
    if (s.empty())
        return false;
    if (s.back() != 'i') {
        re = s;
        im = "0";
        return true;
    }
    std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    if (cut == std::string::npos) {
        re = "0";
        im = body;
    } else {
        re = body.substr(0, cut);
        im = body.substr(body[cut] == '+' ? cut + 1 : cut);
    }
    if (im.empty() || im == "+")
        im = "1";
    else if (im == "-")
        im = "-1";
    return !re.empty();
}

inline bool parse_rational_text(const std::string& s, Rational& out) {
    if (s.empty())
        return false;
    for (char ch : s)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
            return false;
    std::string t = s[0] == '+' ? s.substr(1) : s;
    if (out.set_str(t, 10) != 0)
        return false;
    out.canonicalize();
    return true;
}

inline bool parse_real_text(const std::string& s, Real& out) {
    Rational q;
    if (parse_rational_text(s, q)) {
        out = to_real(q);
        return true;
    }
    try {
        std::size_t used = 0;
        (void)std::stod(s, &used);
        if (used != s.size())
            return false;
        out = Real(s);
        return true;
    } catch (...) {
        return false;
    }
}

} // namespace detail

inline bool parse_gaussian(const std::string& s, GaussianRational& out) {
    std::string re, im;
    return detail::split_complex_text(s, re, im) && detail::parse_rational_text(re, out.re) &&
           detail::parse_rational_text(im, out.im);
}

inline bool parse_complex_decimal(const std::string& s, Cplx& out) {
    std::string re, im;
    return detail::split_complex_text(s, re, im) && detail::parse_real_text(re, out.re) &&
           detail::parse_real_text(im, out.im);
}

inline std::string complex_to_decimal(const Cplx& z, int digits = 40) {
    std::string re = format_real(z.re, digits);
    if (z.im == 0)
        return re;
    std::string im = format_real(z.im, digits);
    return re + (im[0] == '-' ? "" : "+") + im + "i";
}

inline Fixture parse_fixture(std::istream& in) {
    Fixture fx;
    std::map<std::string, std::size_t> ids;
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& what) {
        fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + what);
    };
    auto lookup = [&](const std::string& label) {
        auto it = ids.find(label);
        if (it == ids.end())
            bad("unknown generator '" + label + "'");
        return it->second;
    };
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            long v = std::stol(s, &used);
            if (used != s.size())
                bad("expected an integer, got '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            bad("expected an integer, got '" + s + "'");
        }
        return 0L;
    };
    SyntheticManifest manifest;
    bool have_manifest = false;
    bool seen_mode = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            fx.comments.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;)
            tok.push_back(w);
        if (tok.empty())
            continue;
        const std::string& kw = tok[0];
        if (kw == "mode") {
            if (seen_mode || fx.size() != 0)
                bad("mode must come once, before any generator");
            seen_mode = true;
            if (tok.size() == 2 && tok[1] == "exact")
                fx.exact = true;
            else if (tok.size() == 3 && tok[1] == "float") {
                fx.exact = false;
                fx.bits = static_cast<unsigned>(to_int(tok[2]));
            } else
                bad("mode is 'exact' or 'float <bits>'");
        } else if (kw == "gen") {
            if (tok.size() != 4)
                bad("gen takes a label and a bidegree");
            if (ids.count(tok[1]))
                bad("duplicate generator '" + tok[1] + "'");
            int p = static_cast<int>(to_int(tok[2])), q = static_cast<int>(to_int(tok[3]));
            ids[tok[1]] = fx.exact ? fx.exact_complex.add_generator(tok[1], p, q)
                                   : fx.float_complex.add_generator(tok[1], p, q);
        } else if (kw == "d1" || kw == "d2") {
            if (tok.size() != 4)
                bad(kw + " takes source, target and coefficient");
            std::size_t a = lookup(tok[1]), b = lookup(tok[2]);
            int which = kw == "d1" ? 1 : 2;
            if (fx.exact) {
                GaussianRational v;
                if (!parse_gaussian(tok[3], v))
                    bad("bad coefficient '" + tok[3] + "'");
                fx.exact_complex.add_entry(which, a, b, v);
            } else {
                PrecisionScope scope(fx.bits);
                Cplx v;
                if (!parse_complex_decimal(tok[3], v))
                    bad("bad coefficient '" + tok[3] + "'");
                fx.float_complex.add_entry(which, a, b, v);
            }
        } else if (kw == "expect") {
            have_manifest = true;
            if (tok.size() == 6 && tok[1] == "odd") {
                Shape s{static_cast<int>(to_int(tok[2])), static_cast<int>(to_int(tok[3])),
                        static_cast<int>(to_int(tok[4]))};
                manifest.odd[s] += to_int(tok[5]);
            } else if (tok.size() == 7 && tok[1] == "even" && (tok[2] == "column" || tok[2] == "row")) {
                EvenShape s{tok[2] == "column" ? Filtration::Column : Filtration::Row,
                            static_cast<int>(to_int(tok[3])), static_cast<int>(to_int(tok[4])),
                            static_cast<int>(to_int(tok[5]))};
                manifest.even[s] += to_int(tok[6]);
            } else if (tok.size() == 5 && tok[1] == "squares") {
                long m = to_int(tok[4]);
                bump(manifest.square_corners, {static_cast<int>(to_int(tok[2])), static_cast<int>(to_int(tok[3]))}, m);
                manifest.squares += m;
            } else
                bad("unrecognized expect line");
        } else
            bad("unknown directive '" + kw + "'");
    }
    if (have_manifest)
        fx.manifest = manifest;
    return fx;
}

inline Fixture parse_fixture_text(const std::string& text) {
    std::istringstream in(text);
    return parse_fixture(in);
}

inline Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::ParseError, "cannot open " + path);
    return parse_fixture(in);
}

namespace detail {

template <class S, class Fmt>
void write_body(std::ostream& out, const DoubleComplex<S>& c, Fmt fmt) {
    for (auto& g : c.generators())
        out << "gen " << g.label << ' ' << g.p << ' ' << g.q << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (auto& [t, v] : c.d1_of(i))
            out << "d1 " << c.generators()[i].label << ' ' << c.generators()[t].label << ' ' << fmt(v) << '\n';
        for (auto& [t, v] : c.d2_of(i))
            out << "d2 " << c.generators()[i].label << ' ' << c.generators()[t].label << ' ' << fmt(v) << '\n';
    }
}

inline void write_manifest(std::ostream& out, const SyntheticManifest& m) {
    for (auto& [s, k] : m.odd)
        out << "expect odd " << s.d << ' ' << s.p << ' ' << s.q << ' ' << k << '\n';
    for (auto& [s, k] : m.even)
        out << "expect even " << (s.orientation == Filtration::Column ? "column" : "row") << ' ' << s.r << ' '
            << s.p << ' ' << s.q << ' ' << k << '\n';
    for (auto& [b, k] : m.square_corners)
        out << "expect squares " << b.first << ' ' << b.second << ' ' << k << '\n';
}

} // namespace detail

inline std::string write_fixture(const ExactComplex& c, const std::optional<SyntheticManifest>& manifest = {},
                                 const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    for (auto& line : comments)
        out << "# " << line << '\n';
    out << "mode exact\n";
    detail::write_body(out, c, [](const GaussianRational& v) { return to_string(v); });
    if (manifest)
        detail::write_manifest(out, *manifest);
    return out.str();
}

inline std::string write_fixture(const FloatComplex& c, unsigned bits,
                                 const std::optional<SyntheticManifest>& manifest = {},
                                 const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    for (auto& line : comments)
        out << "# " << line << '\n';
    out << "mode float " << bits << '\n';
    detail::write_body(out, c, [](const Cplx& v) { return complex_to_decimal(v); });
    if (manifest)
        detail::write_manifest(out, *manifest);
    return out.str();
}

inline std::string write_fixture(const Fixture& fx) {
    return fx.exact ? write_fixture(fx.exact_complex, fx.manifest, fx.comments)
                    : write_fixture(fx.float_complex, fx.bits, fx.manifest, fx.comments);
}

} // namespace otlab
