// From combinatorial flow data to the Novikov complex, and the
// backward-forward Lambda pairing on it.
//
// Each critical point record doubles as its chosen lift; deck labels on flow
// lines encode all other lifts. The declared completeness window truncates
// genuinely infinite flow-line families and becomes the cutoff of every
// boundary coefficient.

#ifndef NOVIK_MORSE_HPP
#define NOVIK_MORSE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "novik/complex.hpp"
#include "novik/series.hpp"

namespace novik {

struct CriticalPoint {
    std::string id;
    int index = 0;  // Morse index #(x)

    bool operator==(const CriticalPoint&) const = default;
};

struct FlowLineRecord {
    std::string from;  // x, lower index
    std::string to;    // y, index(x) + 1
    LatticePoint deck;
    bool orientation_agrees = false;  // against the orientation of U_y cap S_x

    bool operator==(const FlowLineRecord&) const = default;
};

struct MorseData {
    int dimension = 0;
    FormPtr form;
    std::vector<CriticalPoint> critical_points;
    std::vector<FlowLineRecord> flow_lines;
    DegreeValue window;  // record list asserted complete below this degree

    const CriticalPoint* find(const std::string& id) const {
        for (const auto& p : critical_points)
            if (p.id == id) return &p;
        return nullptr;
    }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& p : critical_points) {
            if (!seen.insert(p.id).second)
                throw InvalidArgument("duplicate critical point id '" + p.id + "'");
            if (p.index < 0 || p.index > dimension)
                throw IndexMismatch("critical point '" + p.id + "' has index " +
                                    std::to_string(p.index) + " outside [0, " +
                                    std::to_string(dimension) + "]");
        }
        for (const auto& r : flow_lines) {
            const CriticalPoint* x = find(r.from);
            const CriticalPoint* y = find(r.to);
            if (!x || !y)
                throw InvalidArgument("flow line references unknown critical point '" +
                                      (x ? r.to : r.from) + "'");
            if (y->index != x->index + 1)
                throw IndexMismatch("flow line " + r.from + " -> " + r.to +
                                    " connects indices " + std::to_string(x->index) + " and " +
                                    std::to_string(y->index) + "; they must differ by 1");
            if (r.deck.size() != form->q())
                throw DimensionMismatch("deck label " + lattice_str(r.deck) +
                                        " has wrong rank for q = " + std::to_string(form->q()));
        }
    }
};

// The counting rule: a flow line counts positively either when its
// orientation agrees and #(x) is even, or when it disagrees and #(x) is odd.
inline int flow_line_sign(bool orientation_agrees, int index_x) {
    bool even = index_x % 2 == 0;
    return orientation_agrees == even ? 1 : -1;
}

// Boundary coefficient n_x^y as an element of the Novikov ring: the signed
// sum of t^deck over all recorded lines from x to y, truncated at the
// declared completeness window.
inline ZSeries boundary_coefficient(const MorseData& data, const std::string& x,
                                    const std::string& y) {
    const CriticalPoint* px = data.find(x);
    if (!px) throw InvalidArgument("unknown critical point '" + x + "'");
    ZSeries acc = ZSeries::zero(data.form);
    for (const auto& r : data.flow_lines) {
        if (r.from != x || r.to != y) continue;
        Int sign(flow_line_sign(r.orientation_agrees, px->index));
        acc = add(acc, ZSeries::monomial(data.form, r.deck, sign));
    }
    return acc.truncated(data.window);
}

struct AssembledComplex {
    ZComplex complex;
    VerifyReport verification;
    int dimension = 0;
    DegreeValue window;

    // Degree (= Morse index) and position of a generator label.
    std::pair<int, std::size_t> locate(const std::string& id) const {
        for (const auto& [k, labels] : complex.generators)
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == id) return {k, i};
        throw InvalidArgument("chain references unknown critical point '" + id + "'");
    }
};

// Generators per index, boundary matrices from the counting rule, and the
// delta^2 = 0 verification attached.
inline AssembledComplex assemble_novikov_complex(const MorseData& data) {
    data.validate();
    ZComplex complex;
    complex.form = data.form;
    for (const auto& p : data.critical_points)
        complex.generators[p.index].push_back(p.id);
    int top = complex.generators.empty() ? -1 : complex.generators.rbegin()->first;
    for (int k = complex.generators.empty() ? 0 : complex.generators.begin()->first; k < top;
         ++k) {
        std::size_t nk = complex.generator_count(k);
        std::size_t nk1 = complex.generator_count(k + 1);
        if (nk == 0 || nk1 == 0) continue;
        ZMatrix m(data.form, nk1, nk);
        const auto& sources = complex.generators.at(k);
        const auto& targets = complex.generators.at(k + 1);
        for (std::size_t col = 0; col < nk; ++col)
            for (std::size_t row = 0; row < nk1; ++row)
                m.at(row, col) = boundary_coefficient(data, sources[col], targets[row]);
        complex.boundaries.emplace(k, std::move(m));
    }
    AssembledComplex out{std::move(complex), {}, data.dimension, data.window};
    out.verification = verify_complex(out.complex, data.window);
    return out;
}

enum class ChainKind { Stable, Unstable };

// A finitely supported chain in the S- or U-complex, written against the
// chosen lifts. Stable chains carry the pushforward module structure,
// unstable ones the pullback structure.
struct LambdaChain {
    ChainKind kind = ChainKind::Stable;
    std::map<std::string, ZSeries> coefficients;

    static LambdaChain basis(ChainKind kind, const std::string& id, const FormPtr& form) {
        LambdaChain c;
        c.kind = kind;
        c.coefficients.emplace(id, ZSeries::one(form));
        return c;
    }

    // Replacing the chosen lift x_0 by t^m x_0 multiplies S-coordinates by
    // t^{-m} and U-coordinates by t^{m}.
    LambdaChain with_shifted_lift(const std::string& id, const LatticePoint& m) const {
        LambdaChain out = *this;
        auto it = out.coefficients.find(id);
        if (it == out.coefficients.end()) return out;
        LatticePoint shift = kind == ChainKind::Stable ? lattice_neg(m) : m;
        it->second = it->second.monomial_shifted(Int(1), shift);
        return out;
    }
};

namespace detail {

// Common Morse index of the chain's support; the chain must be homogeneous.
inline std::optional<int> chain_index(const AssembledComplex& ac, const LambdaChain& chain) {
    std::optional<int> index;
    for (const auto& [id, coeff] : chain.coefficients) {
        int k = ac.locate(id).first;
        if (index && *index != k)
            throw DegreeMismatch("chain is not homogeneous: generators of index " +
                                 std::to_string(*index) + " and " + std::to_string(k));
        index = k;
    }
    return index;
}

inline std::vector<ZSeries> chain_vector(const AssembledComplex& ac, const LambdaChain& chain,
                                         int index) {
    const auto& labels = ac.complex.generators.at(index);
    std::vector<ZSeries> v(labels.size(), ZSeries::zero(ac.complex.form));
    for (const auto& [id, coeff] : chain.coefficients) {
        auto [k, pos] = ac.locate(id);
        v[pos] = coeff;
    }
    return v;
}

}  // namespace detail

// The backward-forward pairing U . S: zero across distinct critical points,
// lambda * mu on matching ones, read against the chosen lifts.
inline ZSeries lambda_pairing(const AssembledComplex& ac, const LambdaChain& u,
                              const LambdaChain& s) {
    if (u.kind != ChainKind::Unstable || s.kind != ChainKind::Stable)
        throw InvalidArgument("lambda pairing takes an unstable chain against a stable one");
    std::optional<int> ku = detail::chain_index(ac, u);
    std::optional<int> ks = detail::chain_index(ac, s);
    ZSeries acc = ZSeries::zero(ac.complex.form);
    if (!ku || !ks) return acc;  // an empty chain pairs to zero
    if (*ku != *ks)
        throw DegreeMismatch("chains pair only in complementary degrees: indices " +
                             std::to_string(*ku) + " vs " + std::to_string(*ks));
    for (const auto& [id, mu] : u.coefficients) {
        auto it = s.coefficients.find(id);
        if (it == s.coefficients.end()) continue;
        acc = add(acc, detail::mul_certified(mu, it->second));
    }
    return acc;
}

// Coefficient of t^i in a pairing value: the geometric intersection number
// (t^{-i} U) . S.
inline Int coefficient_of(const ZSeries& pairing_value, const LatticePoint& i) {
    DegreeValue d = pairing_value.degree_of(i);
    if (pairing_value.cutoff() && !degree_less(d, *pairing_value.cutoff()))
        throw PrecisionExhausted("coefficient at degree " + d.str() +
                                 " lies outside the certified window");
    return pairing_value.coefficient(i);
}

// Boundary matrices of the U-complex: plain transposes in the chosen lift
// bases. Entry [j] maps U-chains on index-j points to index-(j-1) points.
inline std::map<int, ZMatrix> adjoint_boundary(const ZComplex& complex) {
    complex.validate();
    std::map<int, ZMatrix> out;
    for (const auto& [k, m] : complex.boundaries) out.emplace(k + 1, m.transposed());
    return out;
}

namespace detail {

// The current differential d on U-chains supported at index-j points:
// d = (-1)^{deg + 1} boundary with deg = n - j, i.e. the signed transpose.
inline ZMatrix u_differential(const AssembledComplex& ac, int j) {
    ZMatrix t = ac.complex.boundary(j - 1).transposed();
    int sign = ((ac.dimension - j + 1) % 2 + 2) % 2 == 0 ? 1 : -1;
    if (sign < 0)
        for (std::size_t i = 0; i < t.rows(); ++i)
            t.scale_row(i, ZSeries::constant(ac.complex.form, Int(-1)));
    return t;
}

inline ZSeries series_lcm(const ZSeries& a, const ZSeries& b, const DegreeValue& m) {
    ZSeries g = gcd(a, b, m);
    return canonicalize(divide(mul(a, b), g, m), m).canonical;
}

}  // namespace detail

struct TorsionCertificate {
    ZSeries lambda;     // unit-normalized, minimal among diagonal annihilators
    LambdaChain chain;  // V with boundary(V) = lambda * target through precision
};

// Solves boundary(V) = lambda * target through the window via the Smith
// normal form of the incoming boundary matrix. Returns nothing when the
// class is not torsion (a zero row of the normal form pairs with a nonzero
// transformed coordinate).
inline std::optional<TorsionCertificate> solve_in_complex(const AssembledComplex& ac,
                                                          const LambdaChain& target,
                                                          const DegreeValue& precision) {
    const FormPtr& form = ac.complex.form;
    std::optional<int> k = detail::chain_index(ac, target);
    if (!k) throw InvalidArgument("cannot solve for an empty target chain");

    ZMatrix outgoing = target.kind == ChainKind::Stable
                           ? ac.complex.boundary(*k)
                           : detail::u_differential(ac, *k);
    ZMatrix incoming = target.kind == ChainKind::Stable
                           ? ac.complex.boundary(*k - 1)
                           : detail::u_differential(ac, *k + 1);
    int source_degree = target.kind == ChainKind::Stable ? *k - 1 : *k + 1;

    std::vector<ZSeries> t = detail::chain_vector(ac, target, *k);
    for (const ZSeries& e : outgoing.apply(t))
        if (detail::leading_below(e, precision))
            throw InvalidArgument("target chain is not a cycle through the window");

    SNFResult snf = smith_normal_form(incoming, precision);
    std::vector<ZSeries> s = snf.U.apply(t);
    for (std::size_t i = snf.rank; i < s.size(); ++i)
        if (detail::leading_below(s[i], precision)) return std::nullopt;  // free part

    ZSeries lambda = ZSeries::one(form);
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (!detail::leading_below(s[i], precision)) continue;
        ZSeries g = gcd(snf.diagonal[i], s[i], precision);
        ZSeries need = canonicalize(divide(snf.diagonal[i], g, precision), precision).canonical;
        lambda = detail::series_lcm(lambda, need, precision);
    }

    std::vector<ZSeries> z(incoming.cols(), ZSeries::zero(form));
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (!detail::leading_below(s[i], precision)) continue;
        z[i] = divide(mul(lambda, s[i]), snf.diagonal[i], precision);
    }
    std::vector<ZSeries> w = snf.V.apply(z);

    TorsionCertificate cert{std::move(lambda), LambdaChain{}};
    cert.chain.kind = target.kind;
    if (source_degree >= 0 && ac.complex.generator_count(source_degree) > 0) {
        const auto& labels = ac.complex.generators.at(source_degree);
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!w[i].is_exact_zero()) cert.chain.coefficients.emplace(labels[i], w[i]);
    }
    return cert;
}

// The linking number of two torsion classes: (1/lambda) V . S over the
// Novikov field, reduced coefficientwise into [0, 1) (the representative of
// the class modulo integer series).
inline QSeries linking_number(const AssembledComplex& ac, const LambdaChain& u,
                              const LambdaChain& s, const DegreeValue& precision) {
    if (u.kind != ChainKind::Unstable || s.kind != ChainKind::Stable)
        throw InvalidArgument("linking pairs an unstable torsion class with a stable one");
    auto cert_u = solve_in_complex(ac, u, precision);
    if (!cert_u) throw NotTorsion("unstable class is not torsion");
    auto cert_s = solve_in_complex(ac, s, precision);
    if (!cert_s) throw NotTorsion("stable class is not torsion");

    ZSeries paired = lambda_pairing(ac, cert_u->chain, s);
    QSeries value = detail::mul_certified(invert(to_rational(cert_u->lambda), precision),
                                          to_rational(paired));

    QSeries::term_map reduced;
    for (const auto& [n, c] : value.terms()) {
        Rat r = mod_one(c);
        if (r != 0) reduced.emplace(n, r);
    }
    return QSeries(ac.complex.form, std::move(reduced), value.cutoff());
}

}  // namespace novik

#endif  // NOVIK_MORSE_HPP
