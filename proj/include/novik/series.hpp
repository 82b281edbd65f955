// Truncated formal Laurent series with compact/forward support: the elements
// of the Novikov ring (integer coefficients) and Novikov field (rational
// coefficients).
//
// Precision model: every series carries a degree cutoff. All monomials of
// degree strictly below the cutoff are exactly represented; nothing is
// asserted at or above it. cutoff = +infinity (std::nullopt) means the series
// is an exact Laurent polynomial. "Zero up to precision" (no stored terms,
// finite cutoff) is observably distinct from exact zero; operations that need
// a valuation refuse it with ZeroAmbiguity instead of guessing.

#ifndef NOVIK_SERIES_HPP
#define NOVIK_SERIES_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "novik/degree.hpp"
#include "novik/errors.hpp"
#include "novik/numeric.hpp"

namespace novik {

using Cutoff = std::optional<DegreeValue>;  // nullopt = +infinity (exact)

inline Cutoff min_cutoff(const Cutoff& a, const Cutoff& b) {
    if (!a) return b;
    if (!b) return a;
    return degree_less(*a, *b) ? a : b;
}

inline Cutoff shift_cutoff(const Cutoff& c, const DegreeValue& by) {
    if (!c) return std::nullopt;
    return *c + by;
}

// True when the window [_, m) is contained in the certified window [_, c).
inline bool cutoff_covers(const Cutoff& c, const DegreeValue& m) {
    return !c || degree_less_equal(m, *c);
}

template <class C>
struct LeadingData {
    LatticePoint exponent;
    C coefficient;
    DegreeValue valuation;
};

template <class C>
class Series {
public:
    using coeff_type = C;
    using term_map = std::map<LatticePoint, C>;

    explicit Series(FormPtr form) : form_(std::move(form)) {}

    Series(FormPtr form, term_map terms, Cutoff cutoff = std::nullopt)
        : form_(std::move(form)), terms_(std::move(terms)), cutoff_(std::move(cutoff)) {
        normalize();
    }

    static Series zero(FormPtr form) { return Series(std::move(form)); }

    static Series constant(FormPtr form, const C& c) {
        return monomial(std::move(form), LatticePoint(0), c);
    }

    static Series one(FormPtr form) { return constant(std::move(form), C(1)); }

    static Series monomial(FormPtr form, LatticePoint exponent, const C& c) {
        if (exponent.empty()) exponent = LatticePoint(form->q(), 0);
        term_map t;
        if (c != 0) t.emplace(std::move(exponent), c);
        return Series(std::move(form), std::move(t));
    }

    const FormPtr& form() const { return form_; }
    const term_map& terms() const { return terms_; }
    const Cutoff& cutoff() const { return cutoff_; }

    bool has_terms() const { return !terms_.empty(); }
    bool is_exact() const { return !cutoff_.has_value(); }
    bool is_exact_zero() const { return terms_.empty() && is_exact(); }
    // No visible terms below a finite cutoff: possibly nonzero beyond it.
    bool is_ambiguous_zero() const { return terms_.empty() && !is_exact(); }

    C coefficient(const LatticePoint& n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? C(0) : it->second;
    }

    DegreeValue degree_of(const LatticePoint& n) const { return form_->degree_of(n); }

    // The minimal-degree stored term. Distinct stored exponents have distinct
    // degrees (chi is injective), so the minimum is unique.
    LeadingData<C> leading() const {
        if (terms_.empty()) {
            if (is_exact()) throw ExactZero("leading term of the exact zero series");
            throw ZeroAmbiguity(
                "series has no terms below its cutoff; raise precision to locate the valuation");
        }
        auto best = terms_.begin();
        DegreeValue best_deg = degree_of(best->first);
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
            DegreeValue d = degree_of(it->first);
            if (degree_less(d, best_deg)) {
                best = it;
                best_deg = d;
            }
        }
        return LeadingData<C>{best->first, best->second, best_deg};
    }

    DegreeValue valuation() const { return leading().valuation; }

    // Stored degrees, strictly increasing.
    std::vector<DegreeValue> degs() const {
        std::vector<DegreeValue> out;
        out.reserve(terms_.size());
        for (const auto& [n, c] : terms_) out.push_back(degree_of(n));
        std::sort(out.begin(), out.end(),
                  [](const DegreeValue& a, const DegreeValue& b) { return degree_less(a, b); });
        return out;
    }

    Series operator-() const {
        term_map t;
        for (const auto& [n, c] : terms_) t.emplace(n, -c);
        return Series(form_, std::move(t), cutoff_);
    }

    Series scaled(const C& c) const {
        term_map t;
        if (c != 0)
            for (const auto& [n, k] : terms_) t.emplace(n, c * k);
        return Series(form_, std::move(t), cutoff_);
    }

    // Multiplication by the monomial c * t^shift (exact on the term level).
    Series monomial_shifted(const C& c, const LatticePoint& shift) const {
        Cutoff cut = shift_cutoff(cutoff_, form_->degree_of(shift));
        term_map t;
        if (c != 0)
            for (const auto& [n, k] : terms_) t.emplace(lattice_add(n, shift), c * k);
        return Series(form_, std::move(t), std::move(cut));
    }

    // Drops all terms of degree >= m and tightens the cutoff to m.
    Series truncated(const DegreeValue& m) const {
        Series out(form_, terms_, min_cutoff(cutoff_, Cutoff(m)));
        return out;
    }

    // Structural equality: identical certified content and identical cutoff.
    friend bool operator==(const Series& a, const Series& b) {
        if (!same_form(a.form_, b.form_)) return false;
        if (a.cutoff_.has_value() != b.cutoff_.has_value()) return false;
        if (a.cutoff_ && !(*a.cutoff_ == *b.cutoff_)) return false;
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [n, c] : terms_) {
            if (!first) os << " + ";
            os << c << "*t^" << lattice_str(n);
            first = false;
        }
        if (first) os << "0";
        if (cutoff_) os << " + O(deg " << cutoff_->str() << ")";
        return os.str();
    }

private:
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0 || (cutoff_ && !degree_less(degree_of(it->first), *cutoff_)))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    FormPtr form_;
    term_map terms_;
    Cutoff cutoff_;
};

using ZSeries = Series<Int>;
using QSeries = Series<Rat>;

inline QSeries to_rational(const ZSeries& a) {
    QSeries::term_map t;
    for (const auto& [n, c] : a.terms()) t.emplace(n, Rat(c));
    return QSeries(a.form(), std::move(t), a.cutoff());
}

namespace detail {
template <class C>
void check_same_form(const Series<C>& a, const Series<C>& b) {
    if (!same_form(a.form(), b.form()))
        throw DimensionMismatch("series over different degree forms");
}
}  // namespace detail

template <class C>
Series<C> add(const Series<C>& a, const Series<C>& b) {
    detail::check_same_form(a, b);
    typename Series<C>::term_map t = a.terms();
    for (const auto& [n, c] : b.terms()) {
        auto [it, fresh] = t.emplace(n, c);
        if (!fresh) it->second += c;
    }
    return Series<C>(a.form(), std::move(t), min_cutoff(a.cutoff(), b.cutoff()));
}

template <class C>
Series<C> sub(const Series<C>& a, const Series<C>& b) {
    return add(a, -b);
}

namespace detail {

// Cauchy product with the tightest certifiable cutoff. Unlike the public mul,
// a factor that is zero up to precision is legal here: the product is then
// zero up to a cutoff derived from the other factor's valuation. Matrix row
// operations on truncated complexes need exactly this.
template <class C>
Series<C> mul_certified(const Series<C>& a, const Series<C>& b) {
    check_same_form(a, b);
    const FormPtr& form = a.form();
    if (a.is_exact_zero() || b.is_exact_zero()) return Series<C>::zero(form);

    Cutoff cut;
    if (a.has_terms() && b.has_terms()) {
        cut = min_cutoff(shift_cutoff(a.cutoff(), b.valuation()),
                         shift_cutoff(b.cutoff(), a.valuation()));
    } else if (a.has_terms()) {  // b is zero up to precision
        cut = shift_cutoff(b.cutoff(), a.valuation());
    } else if (b.has_terms()) {
        cut = shift_cutoff(a.cutoff(), b.valuation());
    } else {  // both zero up to precision: unknown tails start at cutoff_a + cutoff_b
        cut = Cutoff(*a.cutoff() + *b.cutoff());
    }

    typename Series<C>::term_map t;
    for (const auto& [p, ac] : a.terms())
        for (const auto& [q, bc] : b.terms()) {
            LatticePoint n = lattice_add(p, q);
            C v = ac * bc;
            auto [it, fresh] = t.emplace(std::move(n), v);
            if (!fresh) it->second += v;
        }
    return Series<C>(form, std::move(t), std::move(cut));
}

}  // namespace detail

// Ring product. A factor with no stored terms but finite cutoff has no
// locatable valuation and is rejected; the caller must raise precision.
template <class C>
Series<C> mul(const Series<C>& a, const Series<C>& b) {
    detail::check_same_form(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return Series<C>::zero(a.form());
    if (a.is_ambiguous_zero() || b.is_ambiguous_zero())
        throw ZeroAmbiguity("factor is zero up to precision; its valuation is unknown");
    return detail::mul_certified(a, b);
}

template <class C>
std::vector<DegreeValue> degs(const Series<C>& a) {
    return a.degs();
}

template <class C>
LeadingData<C> leading(const Series<C>& a) {
    return a.leading();
}

// Unit test per the leading-coefficient criterion: over Z the leading
// coefficient must be +-1, over Q merely nonzero. Exact zero is not a unit.
template <class C>
bool is_unit(const Series<C>& a) {
    if (a.is_exact_zero()) return false;
    return coeff_is_unit(a.leading().coefficient);
}

// Inverse by geometric series: factor a = a0 t^A0 (1 - beta) with
// deg(beta) > 0 and sum 1 + beta + beta^2 + .. until the partial's valuation
// clears the window. The result satisfies mul(a, result) = 1 through every
// degree < m, and carries cutoff m relative to its own valuation.
template <class C>
Series<C> invert(const Series<C>& a, const DegreeValue& m) {
    const FormPtr& form = a.form();
    LeadingData<C> l = a.leading();  // ExactZero / ZeroAmbiguity propagate
    if (!coeff_is_unit(l.coefficient))
        throw NotAUnit("leading coefficient " + to_string(l.coefficient) + " is not a unit over " +
                       domain_name(l.coefficient));
    C inv_lead;
    coeff_divide(C(1), l.coefficient, inv_lead);

    // u = 1 - beta, valuation 0.
    Series<C> u = a.monomial_shifted(inv_lead, lattice_neg(l.exponent));
    Series<C> beta = sub(Series<C>::one(form), u);
    if (beta.is_exact_zero())
        return Series<C>::monomial(form, lattice_neg(l.exponent), inv_lead);

    if (!cutoff_covers(u.cutoff(), m))
        throw PrecisionExhausted("operand cutoff " + u.cutoff()->str() + " (relative) below the requested window " +
                                 m.str());

    Series<C> sum = Series<C>::one(form);
    Series<C> power = beta.truncated(m);
    while (power.has_terms() && degree_less(power.valuation(), m)) {
        sum = add(sum, power);
        power = detail::mul_certified(power, beta).truncated(m);
    }
    Series<C> rel = sum.truncated(m);
    return rel.monomial_shifted(inv_lead, lattice_neg(l.exponent));
}

// Division by iterated leading-term cancellation: gamma_0 = gamma and
// gamma_{k+1} = gamma_k - beta_k * alpha, where beta_k is the leading term of
// gamma_k divided by the leading term of alpha. Over Z each step's
// coefficient division must be exact, otherwise NotDivisible pinpoints the
// step. The quotient satisfies mul(result, alpha) = gamma through degrees < m
// and is exact whenever the iteration terminates with remainder exactly zero.
template <class C>
Series<C> divide(const Series<C>& gamma, const Series<C>& alpha, const DegreeValue& m) {
    detail::check_same_form(gamma, alpha);
    const FormPtr& form = gamma.form();
    if (alpha.is_exact_zero()) throw InvalidArgument("division by the exact zero series");
    if (alpha.is_ambiguous_zero())
        throw ZeroAmbiguity("divisor is zero up to precision");
    if (gamma.is_exact_zero()) return Series<C>::zero(form);

    LeadingData<C> la = alpha.leading();
    if (!cutoff_covers(gamma.cutoff(), m))
        throw PrecisionExhausted("dividend certified only below " + gamma.cutoff()->str() +
                                 ", window " + m.str() + " requested");
    if (gamma.has_terms()) {
        DegreeValue beta_val = gamma.valuation() - la.valuation;
        if (!cutoff_covers(shift_cutoff(alpha.cutoff(), beta_val), m))
            throw PrecisionExhausted("divisor precision cannot support the requested window");
    }

    Series<C> rem = gamma;
    Series<C> out = Series<C>::zero(form);
    int step = 0;
    while (rem.has_terms()) {
        LeadingData<C> lr = rem.leading();
        if (!degree_less(lr.valuation, m)) break;  // remaining content is outside the window
        C q;
        if (!coeff_divide(lr.coefficient, la.coefficient, q))
            throw NotDivisible("step " + std::to_string(step) + ": leading coefficient " +
                                   to_string(lr.coefficient) + " not divisible by " +
                                   to_string(la.coefficient),
                               step);
        LatticePoint shift = lattice_sub(lr.exponent, la.exponent);
        out = add(out, Series<C>::monomial(form, shift, q));
        rem = sub(rem, alpha.monomial_shifted(q, shift));
        ++step;
    }
    if (rem.is_exact_zero()) return out;  // exact quotient
    return out.truncated(m - la.valuation);
}

// One Euclidean division step over the integer Novikov ring: write
// l(gamma) = b l(alpha) + rho with |rho| < |l(alpha)| and subtract the
// aligned multiple. Either the remainder vanishes, or its norm |l| drops
// below |l(alpha)|, or its leading degree strictly increases with the norm
// unchanged (the leading coefficients divided exactly).
inline std::pair<ZSeries, ZSeries> euclid_step(const ZSeries& gamma, const ZSeries& alpha) {
    detail::check_same_form(gamma, alpha);
    LeadingData<Int> lg = gamma.leading();  // ZeroAmbiguity / ExactZero propagate
    LeadingData<Int> la = alpha.leading();
    Int b = lg.coefficient / la.coefficient;  // truncated: |rho| < |l(alpha)|
    LatticePoint shift = lattice_sub(lg.exponent, la.exponent);
    ZSeries quotient_term = ZSeries::monomial(gamma.form(), shift, b);
    ZSeries remainder = b == 0 ? gamma : sub(gamma, alpha.monomial_shifted(b, shift));
    return {std::move(quotient_term), std::move(remainder)};
}

namespace detail {

// Iterated euclid_step inside the window [.., m): returns a remainder that
// either has no terms below m or has |l| < |l(alpha)|. Terminates because a
// non-final step cancels the leading term and strictly raises the degree.
inline ZSeries euclid_mod(const ZSeries& gamma, const ZSeries& alpha, const DegreeValue& m) {
    Int alpha_norm = abs(alpha.leading().coefficient);
    ZSeries rem = gamma.truncated(m);
    while (rem.has_terms()) {
        if (abs(rem.leading().coefficient) < alpha_norm) break;
        rem = euclid_step(rem, alpha).second.truncated(m);
    }
    return rem;
}

}  // namespace detail

// Canonical associate representative, plus the unit carrying alpha onto it:
// unit * alpha = canonical through degrees < m. Representatives are chosen
// so that associate series map to one value: units map to 1; a series that
// divides its own leading norm maps to that positive integer; otherwise the
// leading exponent is shifted to 0, the leading coefficient made positive,
// and every later coefficient reduced modulo the leading one into [0, l).
struct Canonical {
    ZSeries canonical;
    ZSeries unit;
};

inline Canonical canonicalize(const ZSeries& a, const DegreeValue& m) {
    const FormPtr& form = a.form();
    LeadingData<Int> l = a.leading();

    // Widest window the operand can support for its own unit factor: a
    // truncated series determines the quotient by its leading monomial only
    // up to its cutoff, shifted back by the valuation.
    DegreeValue unit_window = m;
    if (a.cutoff()) {
        DegreeValue capable = *a.cutoff() - l.valuation;
        if (degree_less(capable, unit_window)) unit_window = capable;
    }

    if (coeff_is_unit(l.coefficient))
        return {ZSeries::one(form), invert(a, unit_window)};

    Int norm = abs(l.coefficient);
    ZSeries norm_series = ZSeries::constant(form, norm);
    try {
        // Associate-of-integer test at valuation level: u * a = norm t^{A0}.
        ZSeries shifted_norm = ZSeries::monomial(form, l.exponent, norm);
        ZSeries u = divide(shifted_norm, a,
                           min_cutoff(Cutoff(m + l.valuation), a.cutoff()).value());
        return {std::move(norm_series), u.monomial_shifted(Int(1), lattice_neg(l.exponent))};
    } catch (const NotDivisible&) {
        // not an associate of its norm; fall through to the reduction sweep
    }

    Int sign = l.coefficient < 0 ? Int(-1) : Int(1);
    ZSeries unit = ZSeries::monomial(form, lattice_neg(l.exponent), sign);
    ZSeries w = a.monomial_shifted(sign, lattice_neg(l.exponent));

    // Reduce coefficients into [0, norm) from low degree upward. Multiplying
    // by 1 + e t^D changes the t^D coefficient by norm*e and only perturbs
    // strictly higher degrees, so one upward pass suffices. When nothing
    // needs fixing the input stays exact.
    while (true) {
        struct Hit {
            LatticePoint exp;
            Int coeff;
            DegreeValue deg;
            bool found = false;
        } next;
        for (const auto& [n, c] : w.terms()) {
            if (c >= 0 && c < norm) continue;
            DegreeValue d = form->degree_of(n);
            if (d.is_zero()) continue;  // the leading coefficient itself
            if (!degree_less(d, m)) continue;  // outside the normalization window
            if (!next.found || degree_less(d, next.deg)) next = {n, c, d, true};
        }
        if (!next.found) break;
        Int e = -floor_div(next.coeff, norm);
        ZSeries factor = add(ZSeries::one(form), ZSeries::monomial(form, next.exp, e));
        w = mul(w, factor).truncated(m);
        unit = mul(unit, factor);
    }
    return {std::move(w), std::move(unit)};
}

// Greatest common divisor through the window [.., m), unit-normalized via
// canonicalize. Operands with no terms below m count as zero; dividing both
// inputs by the result succeeds through the window.
inline ZSeries gcd(const ZSeries& alpha, const ZSeries& beta, const DegreeValue& m) {
    if (!cutoff_covers(alpha.cutoff(), m) || !cutoff_covers(beta.cutoff(), m))
        throw PrecisionExhausted("gcd operands must certify the requested window");
    bool a_zero = !alpha.truncated(m).has_terms();
    bool b_zero = !beta.truncated(m).has_terms();
    if (a_zero && b_zero) throw InvalidArgument("gcd of two zero series");
    if (a_zero) return canonicalize(beta, m).canonical;
    if (b_zero) return canonicalize(alpha, m).canonical;
    ZSeries a = alpha;
    ZSeries b = beta;
    while (true) {
        ZSeries r = detail::euclid_mod(a, b, m);
        a = b;
        b = r;
        if (!b.has_terms()) break;
    }
    return canonicalize(a, m).canonical;
}

// Termwise agreement of every coefficient of degree < m. Both operands must
// certify the window.
template <class C>
bool agree_below(const Series<C>& a, const Series<C>& b, const DegreeValue& m) {
    detail::check_same_form(a, b);
    if (!cutoff_covers(a.cutoff(), m) || !cutoff_covers(b.cutoff(), m))
        throw PrecisionExhausted("cannot compare through degree " + m.str() +
                                 ": operand cutoff is smaller");
    const Series<C> ta = a.truncated(m);
    const Series<C> tb = b.truncated(m);
    if (ta.terms().size() != tb.terms().size()) return false;
    return ta.terms() == tb.terms();
}

}  // namespace novik

#endif  // NOVIK_SERIES_HPP
