// Input file schema and canonical text rendering.
//
// Files are JSON with an explicit schema tag. Exponents are integer vectors,
// coefficients integers or exact fractions as strings, degrees rational
// vectors over the declared formal basis; no floats anywhere. The series
// expression language covers literals, + - *, powers, inv(x) and div(a, b);
// the canonical renderer emits terms by increasing degree with the cutoff as
// "O(deg m)", and rendering then re-parsing is the identity on values.

#ifndef NOVIK_IO_HPP
#define NOVIK_IO_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "novik/complex.hpp"
#include "novik/cone.hpp"
#include "novik/morse.hpp"
#include "novik/series.hpp"

namespace novik {

inline constexpr const char* kSchemaTag = "novikov-cas/1";

// --------------------------------------------------------------------------
// Degree values and forms

inline DegreeValue parse_degree_json(const nlohmann::json& j, const BasisPtr& basis) {
    if (j.is_string()) return DegreeValue::rational(parse_rational(j.get<std::string>()), basis);
    if (j.is_number_integer())
        return DegreeValue::rational(Rat(j.get<long long>()), basis);
    if (j.is_array()) {
        std::vector<Rat> coords;
        for (const auto& c : j) {
            if (c.is_string())
                coords.push_back(parse_rational(c.get<std::string>()));
            else if (c.is_number_integer())
                coords.push_back(Rat(c.get<long long>()));
            else
                throw ParseError("degree coordinate must be an integer or a rational string");
        }
        return DegreeValue(basis, std::move(coords));
    }
    throw ParseError("degree must be a rational string, an integer, or a coordinate array");
}

inline FormPtr parse_form_json(const nlohmann::json& j) {
    if (j.is_null()) return DegreeForm::cyclic();
    std::vector<FormalRealBasis::Element> elements;
    if (j.contains("basis")) {
        for (const auto& b : j.at("basis")) {
            FormalRealBasis::Element e;
            e.name = b.at("name").get<std::string>();
            for (const auto& iv : b.at("enclosures")) {
                if (!iv.is_array() || iv.size() != 2)
                    throw ParseError("enclosure must be a [lo, hi] pair");
                e.enclosures.push_back({parse_rational(iv[0].get<std::string>()),
                                        parse_rational(iv[1].get<std::string>())});
            }
            elements.push_back(std::move(e));
        }
    }
    auto basis = elements.empty() ? rational_basis()
                                  : std::make_shared<FormalRealBasis>(std::move(elements));
    std::vector<DegreeValue> periods;
    if (j.contains("periods"))
        for (const auto& p : j.at("periods")) periods.push_back(parse_degree_json(p, basis));
    if (j.contains("q")) {
        std::size_t q = j.at("q").get<std::size_t>();
        if (q != periods.size())
            throw ParseError("declared q = " + std::to_string(q) + " but " +
                             std::to_string(periods.size()) + " periods given");
    }
    return std::make_shared<DegreeForm>(basis, std::move(periods));
}

inline std::string render_degree(const DegreeValue& d) { return d.str(); }

// --------------------------------------------------------------------------
// Series expression language

namespace detail {

struct Lexer {
    std::string text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw ParseError("expected '" + std::string(1, c) + "' at offset " +
                             std::to_string(pos) + " in '" + text + "'");
    }
    bool peek_digit() {
        skip_space();
        return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
    }
    std::string read_integer() {
        skip_space();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw ParseError("expected an integer at offset " + std::to_string(start) + " in '" +
                             text + "'");
        return text.substr(start, pos - start);
    }
    Rat read_rational() {
        std::string num = read_integer();
        skip_space();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::string den = read_integer();
            return parse_rational(num + "/" + den);
        }
        return parse_rational(num);
    }
    std::string read_ident() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
};

// deg-literal inside O(deg ...): pieces "r", "r*name" or "name" joined by +/-.
inline DegreeValue parse_degree_text(Lexer& lex, const BasisPtr& basis) {
    std::vector<Rat> coords(basis->rank() + 1, Rat(0));
    auto slot_of = [&](const std::string& name) -> std::size_t {
        for (std::size_t k = 0; k < basis->rank(); ++k)
            if (basis->element(k).name == name) return k + 1;
        throw ParseError("unknown basis element '" + name + "'");
    };
    auto read_piece = [&](int sign) {
        if (lex.consume('-')) sign = -sign;
        if (lex.peek_digit()) {
            Rat c = lex.read_rational();
            std::size_t slot = 0;
            lex.skip_space();
            if (lex.pos < lex.text.size() && lex.text[lex.pos] == '*') {
                ++lex.pos;
                slot = slot_of(lex.read_ident());
            }
            coords[slot] += sign * c;
        } else {
            std::string name = lex.read_ident();
            if (name.empty())
                throw ParseError("expected a degree literal at offset " +
                                 std::to_string(lex.pos));
            coords[slot_of(name)] += sign;
        }
    };
    read_piece(1);
    while (true) {
        if (lex.consume('+'))
            read_piece(1);
        else if (lex.consume('-'))
            read_piece(-1);
        else
            break;
    }
    return DegreeValue(basis, std::move(coords));
}

template <class C>
struct ExprParser {
    Lexer lex;
    FormPtr form;
    DegreeValue precision;

    Series<C> parse() {
        Series<C> value = parse_expr();
        if (!lex.eof())
            throw ParseError("trailing input at offset " + std::to_string(lex.pos) + " in '" +
                             lex.text + "'");
        return value;
    }

    Series<C> parse_expr() {
        Series<C> acc = lex.consume('-') ? -parse_term() : parse_term();
        while (true) {
            if (lex.consume('+')) {
                // a trailing "+ O(deg m)" annotates the cutoff
                std::size_t mark = lex.pos;
                if (lex.peek() == 'O') {
                    lex.pos = mark;
                    acc = acc.truncated(parse_cutoff());
                    continue;
                }
                acc = add(acc, parse_term());
            } else if (lex.consume('-')) {
                acc = sub(acc, parse_term());
            } else {
                break;
            }
        }
        return acc;
    }

    DegreeValue parse_cutoff() {
        lex.expect('O');
        lex.expect('(');
        std::string word = lex.read_ident();
        if (word != "deg") throw ParseError("expected 'deg' inside O(...)");
        DegreeValue m = parse_degree_text(lex, form->basis());
        lex.expect(')');
        return m;
    }

    Series<C> parse_term() {
        Series<C> acc = parse_power();
        while (lex.consume('*')) acc = mul_or_shift(acc, parse_power());
        return acc;
    }

    // Monomials multiply exactly even against truncated operands.
    Series<C> mul_or_shift(const Series<C>& a, const Series<C>& b) {
        if (b.is_exact() && b.terms().size() == 1)
            return a.monomial_shifted(b.terms().begin()->second, b.terms().begin()->first);
        if (a.is_exact() && a.terms().size() == 1)
            return b.monomial_shifted(a.terms().begin()->second, a.terms().begin()->first);
        return mul(a, b);
    }

    Series<C> parse_power() {
        Series<C> base = parse_atom();
        if (lex.consume('^')) {
            Int e(lex.read_integer());
            if (base.is_exact() && base.terms().size() == 1) {
                const auto& [expo, coeff] = *base.terms().begin();
                LatticePoint scaled(expo.size(), 0);
                long long ell = static_cast<long long>(e);
                for (std::size_t i = 0; i < expo.size(); ++i) scaled[i] = expo[i] * ell;
                if (coeff == C(1) || ell >= 0) {
                    C c(1);
                    for (long long k = 0; k < (ell >= 0 ? ell : -ell); ++k) c *= coeff;
                    if (ell < 0) {
                        C inv;
                        if (!coeff_divide(C(1), c, inv))
                            throw ParseError("negative power of a non-invertible coefficient");
                        c = inv;
                    }
                    return Series<C>::monomial(form, scaled, c);
                }
            }
            if (e < 0) throw ParseError("negative powers need a monomial base; use inv(...)");
            Series<C> acc = Series<C>::one(form);
            for (Int k = 0; k < e; ++k) acc = mul(acc, base);
            return acc;
        }
        return base;
    }

    Series<C> parse_atom() {
        if (lex.consume('(')) {
            Series<C> inner = parse_expr();
            lex.expect(')');
            return inner;
        }
        if (lex.peek_digit())
            return Series<C>::constant(form, coeff_from_rational<C>(lex.read_rational()));
        std::string ident = lex.read_ident();
        if (ident.empty())
            throw ParseError("unexpected character at offset " + std::to_string(lex.pos) +
                             " in '" + lex.text + "'");
        if (ident == "inv") {
            lex.expect('(');
            Series<C> arg = parse_expr();
            lex.expect(')');
            return invert(arg, precision);
        }
        if (ident == "div") {
            lex.expect('(');
            Series<C> num = parse_expr();
            lex.expect(',');
            Series<C> den = parse_expr();
            lex.expect(')');
            return divide(num, den, precision);
        }
        return variable(ident);
    }

    Series<C> variable(const std::string& name) {
        std::size_t q = form->q();
        if (name == "t") {
            if (q != 1) throw ParseError("plain 't' needs q = 1; use t1..t" + std::to_string(q));
            return Series<C>::monomial(form, {1}, C(1));
        }
        if (name.size() > 1 && name[0] == 't') {
            std::size_t idx = 0;
            try {
                idx = std::stoul(name.substr(1));
            } catch (...) {
                throw ParseError("unknown symbol '" + name + "'");
            }
            if (idx < 1 || idx > q)
                throw ParseError("variable '" + name + "' out of range for q = " +
                                 std::to_string(q));
            LatticePoint p(q, 0);
            p[idx - 1] = 1;
            return Series<C>::monomial(form, std::move(p), C(1));
        }
        throw ParseError("unknown symbol '" + name + "'");
    }
};

}  // namespace detail

template <class C>
Series<C> parse_series_expr(const std::string& text, const FormPtr& form,
                            const DegreeValue& precision) {
    detail::ExprParser<C> parser{{text}, form, precision};
    return parser.parse();
}

// --------------------------------------------------------------------------
// Canonical rendering

namespace detail {

inline std::string render_coeff(const Int& c) { return to_string(c); }
inline std::string render_coeff(const Rat& c) { return to_string(c); }

inline std::string render_monomial(const LatticePoint& n, std::size_t q) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < q; ++i) {
        if (n[i] == 0) continue;
        if (!first) os << "*";
        os << (q == 1 ? "t" : "t" + std::to_string(i + 1));
        if (n[i] != 1) os << "^" << n[i];
        first = false;
    }
    return os.str();
}

}  // namespace detail

// Terms by increasing degree, cutoff as O(deg m).
template <class C>
std::string render_series(const Series<C>& s) {
    std::vector<std::pair<DegreeValue, const LatticePoint*>> order;
    for (const auto& [n, c] : s.terms()) order.emplace_back(s.degree_of(n), &n);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return degree_less(a.first, b.first); });

    std::ostringstream os;
    bool first = true;
    for (const auto& [d, np] : order) {
        C c = s.terms().at(*np);
        bool negative = c < 0;
        if (negative) c = -c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        std::string mono = detail::render_monomial(*np, s.form()->q());
        if (mono.empty())
            os << detail::render_coeff(c);
        else if (c == 1)
            os << mono;
        else
            os << detail::render_coeff(c) << "*" << mono;
        first = false;
    }
    if (first && !s.cutoff()) os << "0";
    if (s.cutoff()) {
        if (!first) os << " + ";
        if (first && s.terms().empty()) os << "0 + ";
        os << "O(deg " << render_degree(*s.cutoff()) << ")";
    }
    return os.str();
}

// --------------------------------------------------------------------------
// JSON literals for series, matrices, complexes, Morse data, chains, cones

template <class C>
Series<C> parse_series_json(const nlohmann::json& j, const FormPtr& form,
                            const DegreeValue& precision) {
    if (j.is_string()) return parse_series_expr<C>(j.get<std::string>(), form, precision);
    typename Series<C>::term_map terms;
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2)
                throw ParseError("series term must be [[exponent...], coefficient]");
            LatticePoint n = t[0].get<std::vector<std::int64_t>>();
            if (n.size() != form->q()) throw ParseError("exponent rank mismatch");
            Rat c = t[1].is_string() ? parse_rational(t[1].get<std::string>())
                                     : Rat(t[1].get<long long>());
            C value(0);
            if constexpr (std::is_same_v<C, Int>) {
                if (denominator(c) != 1)
                    throw ParseError("integer series cannot hold coefficient " + to_string(c));
                value = numerator(c);
            } else {
                value = c;
            }
            if (value != 0) terms[n] = value;
        }
    }
    Cutoff cut;
    if (j.contains("cutoff") && !j.at("cutoff").is_null())
        cut = parse_degree_json(j.at("cutoff"), form->basis());
    return Series<C>(form, std::move(terms), std::move(cut));
}

template <class C>
nlohmann::json series_to_json(const Series<C>& s) {
    nlohmann::json terms = nlohmann::json::array();
    std::vector<std::pair<DegreeValue, LatticePoint>> order;
    for (const auto& [n, c] : s.terms()) order.emplace_back(s.degree_of(n), n);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return degree_less(a.first, b.first); });
    for (const auto& [d, n] : order) {
        nlohmann::json t = nlohmann::json::array();
        t.push_back(n);
        if constexpr (std::is_same_v<C, Int>)
            t.push_back(to_string(s.terms().at(n)));
        else
            t.push_back(to_string(s.terms().at(n)));
        terms.push_back(std::move(t));
    }
    nlohmann::json out;
    out["terms"] = std::move(terms);
    out["cutoff"] = s.cutoff() ? nlohmann::json(render_degree(*s.cutoff())) : nlohmann::json();
    return out;
}

template <class C>
Matrix<C> parse_matrix_json(const nlohmann::json& j, const FormPtr& form,
                            const DegreeValue& precision) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    Matrix<C> m(form, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw ParseError("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = parse_series_json<C>(j[i][k], form, precision);
    }
    return m;
}

template <class C>
FreeComplex<C> parse_complex_json(const nlohmann::json& j, const FormPtr& form,
                                  const DegreeValue& precision) {
    FreeComplex<C> c;
    c.form = form;
    for (const auto& [key, labels] : j.at("generators").items())
        c.generators[std::stoi(key)] = labels.template get<std::vector<std::string>>();
    if (j.contains("boundaries"))
        for (const auto& [key, mat] : j.at("boundaries").items())
            c.boundaries.emplace(std::stoi(key), parse_matrix_json<C>(mat, form, precision));
    c.validate();
    return c;
}

inline nlohmann::json degree_to_json(const DegreeValue& d) {
    if (d.is_rational()) return nlohmann::json(to_string(d.rational_part()));
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : d.coeffs()) coords.push_back(to_string(c));
    return coords;
}

inline nlohmann::json morse_to_json(const MorseData& d) {
    nlohmann::json out;
    out["dimension"] = d.dimension;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : d.critical_points) pts.push_back({{"id", p.id}, {"index", p.index}});
    out["critical_points"] = std::move(pts);
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& r : d.flow_lines)
        lines.push_back({{"from", r.from},
                         {"to", r.to},
                         {"deck", r.deck},
                         {"orientation_agrees", r.orientation_agrees}});
    out["flow_lines"] = std::move(lines);
    out["window"] = degree_to_json(d.window);
    return out;
}

inline MorseData parse_morse_json(const nlohmann::json& j, const FormPtr& form) {
    MorseData d;
    d.form = form;
    d.dimension = j.at("dimension").get<int>();
    for (const auto& p : j.at("critical_points"))
        d.critical_points.push_back({p.at("id").get<std::string>(), p.at("index").get<int>()});
    if (j.contains("flow_lines"))
        for (const auto& r : j.at("flow_lines"))
            d.flow_lines.push_back({r.at("from").get<std::string>(),
                                    r.at("to").get<std::string>(),
                                    r.at("deck").get<std::vector<std::int64_t>>(),
                                    r.at("orientation_agrees").get<bool>()});
    d.window = parse_degree_json(j.at("window"), form->basis());
    d.validate();
    return d;
}

inline LambdaChain parse_chain_json(const nlohmann::json& j, const FormPtr& form,
                                    const DegreeValue& precision) {
    LambdaChain chain;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "stable")
        chain.kind = ChainKind::Stable;
    else if (kind == "unstable")
        chain.kind = ChainKind::Unstable;
    else
        throw ParseError("chain kind must be 'stable' or 'unstable'");
    for (const auto& [id, coeff] : j.at("coefficients").items())
        chain.coefficients.emplace(id, parse_series_json<Int>(coeff, form, precision));
    return chain;
}

inline ConeSpec parse_cone_json(const nlohmann::json& j, const FormPtr& form) {
    std::vector<LatticePoint> gens;
    for (const auto& g : j.at("generators")) gens.push_back(g.get<std::vector<std::int64_t>>());
    return ConeSpec(form, std::move(gens));
}

// A loaded input file: schema-checked JSON plus the declared degree form.
struct InputFile {
    nlohmann::json json;
    FormPtr form;
};

inline InputFile load_input(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("schema") || j.at("schema").get<std::string>() != kSchemaTag)
        throw ParseError(std::string("input must declare \"schema\": \"") + kSchemaTag + "\"");
    FormPtr form = parse_form_json(j.contains("form") ? j.at("form") : nlohmann::json());
    return {std::move(j), std::move(form)};
}

}  // namespace novik

#endif  // NOVIK_IO_HPP
