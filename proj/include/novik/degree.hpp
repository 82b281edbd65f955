// Exact degree arithmetic for the period form chi : Z^q -> R.
//
// Irrational periods are handled symbolically: a degree value is an exact
// rational vector over a formal basis (1, b_1, .., b_r) of reals declared
// linearly independent over Q. Each b_k carries a list of successively
// tighter rational interval enclosures; comparisons walk the refinement
// list and refuse (OrderingUndecidable) instead of rounding.

#ifndef NOVIK_DEGREE_HPP
#define NOVIK_DEGREE_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "novik/errors.hpp"
#include "novik/numeric.hpp"

namespace novik {

enum class Ordering { Less, Equal, Greater };

struct Interval {
    Rat lo;
    Rat hi;
};

// Named real basis elements b_1..b_r with interval enclosures. The rational
// unit b_0 = 1 is implicit. Immutable after construction.
class FormalRealBasis {
public:
    struct Element {
        std::string name;
        std::vector<Interval> enclosures;  // coarsest first, each contained in the previous
    };

    FormalRealBasis() = default;

    explicit FormalRealBasis(std::vector<Element> elements)
        : elements_(std::move(elements)) {
        for (const auto& e : elements_) {
            if (e.enclosures.empty())
                throw InvalidArgument("basis element '" + e.name + "' has no enclosure");
            for (const auto& iv : e.enclosures) {
                if (!(0 < iv.lo && iv.lo <= iv.hi))
                    throw InvalidArgument("basis element '" + e.name +
                                          "' needs 0 < lo <= hi in every enclosure");
            }
        }
    }

    std::size_t rank() const { return elements_.size(); }  // r, excluding the unit
    const Element& element(std::size_t k) const { return elements_[k]; }

    std::size_t max_refinement_levels() const {
        std::size_t m = 1;
        for (const auto& e : elements_) m = std::max(m, e.enclosures.size());
        return m;
    }

    const Interval& enclosure_at(std::size_t k, std::size_t level) const {
        const auto& list = elements_[k].enclosures;
        return list[std::min(level, list.size() - 1)];
    }

    friend bool operator==(const FormalRealBasis& a, const FormalRealBasis& b) {
        if (a.elements_.size() != b.elements_.size()) return false;
        for (std::size_t i = 0; i < a.elements_.size(); ++i) {
            const auto& x = a.elements_[i];
            const auto& y = b.elements_[i];
            if (x.name != y.name || x.enclosures.size() != y.enclosures.size()) return false;
            for (std::size_t j = 0; j < x.enclosures.size(); ++j)
                if (x.enclosures[j].lo != y.enclosures[j].lo ||
                    x.enclosures[j].hi != y.enclosures[j].hi)
                    return false;
        }
        return true;
    }

private:
    std::vector<Element> elements_;
};

using BasisPtr = std::shared_ptr<const FormalRealBasis>;

inline BasisPtr rational_basis() {
    static const BasisPtr b = std::make_shared<FormalRealBasis>();
    return b;
}

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
    return a == b || (a && b && *a == *b);
}

// An exact element of Q + Q b_1 + .. + Q b_r.
class DegreeValue {
public:
    DegreeValue() : basis_(rational_basis()), coeffs_(1, Rat(0)) {}

    DegreeValue(BasisPtr basis, std::vector<Rat> coeffs)
        : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != basis_->rank() + 1)
            throw DimensionMismatch("degree value needs r+1 coordinates");
    }

    static DegreeValue rational(const Rat& c, BasisPtr basis = rational_basis()) {
        std::vector<Rat> v(basis->rank() + 1, Rat(0));
        v[0] = c;
        return DegreeValue(std::move(basis), std::move(v));
    }

    static DegreeValue zero(BasisPtr basis) { return rational(Rat(0), std::move(basis)); }

    const BasisPtr& basis() const { return basis_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    // True when the value lies in Q (no formal part).
    bool is_rational() const {
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) return false;
        return true;
    }
    const Rat& rational_part() const { return coeffs_[0]; }

    friend bool operator==(const DegreeValue& a, const DegreeValue& b) {
        return same_basis(a.basis_, b.basis_) && a.coeffs_ == b.coeffs_;
    }

    DegreeValue operator-() const {
        std::vector<Rat> v(coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
        return DegreeValue(basis_, std::move(v));
    }

    friend DegreeValue operator+(const DegreeValue& a, const DegreeValue& b) {
        a.check_same_basis(b);
        std::vector<Rat> v(a.coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeffs_[i] + b.coeffs_[i];
        return DegreeValue(a.basis_, std::move(v));
    }

    friend DegreeValue operator-(const DegreeValue& a, const DegreeValue& b) {
        return a + (-b);
    }

    DegreeValue scaled(const Rat& c) const {
        std::vector<Rat> v(coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * coeffs_[i];
        return DegreeValue(basis_, std::move(v));
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            Rat c = coeffs_[k];
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            if (k == 0) {
                os << to_string(c);
            } else {
                if (c != 1) os << to_string(c) << "*";
                os << basis_->element(k - 1).name;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    void check_same_basis(const DegreeValue& other) const {
        if (!same_basis(basis_, other.basis_))
            throw DimensionMismatch("degree values over different formal bases");
    }

private:
    BasisPtr basis_;
    std::vector<Rat> coeffs_;
};

// Decides the sign of a - b. Equality is exact; strict comparisons refine
// through the enclosure lists and fail loudly when they run out.
inline Ordering compare(const DegreeValue& a, const DegreeValue& b) {
    a.check_same_basis(b);
    DegreeValue d = a - b;
    if (d.is_zero()) return Ordering::Equal;
    if (d.is_rational())
        return d.rational_part() > 0 ? Ordering::Greater : Ordering::Less;

    const FormalRealBasis& basis = *d.basis();
    const auto& c = d.coeffs();
    for (std::size_t level = 0; level < basis.max_refinement_levels(); ++level) {
        Rat lo = c[0], hi = c[0];
        for (std::size_t k = 1; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            const Interval& iv = basis.enclosure_at(k - 1, level);
            if (c[k] > 0) {
                lo += c[k] * iv.lo;
                hi += c[k] * iv.hi;
            } else {
                lo += c[k] * iv.hi;
                hi += c[k] * iv.lo;
            }
        }
        if (lo > 0) return Ordering::Greater;
        if (hi < 0) return Ordering::Less;
    }
    throw OrderingUndecidable("sign of (" + d.str() +
                              ") undecided by all declared enclosure refinements");
}

inline bool degree_less(const DegreeValue& a, const DegreeValue& b) {
    return compare(a, b) == Ordering::Less;
}
inline bool degree_less_equal(const DegreeValue& a, const DegreeValue& b) {
    return compare(a, b) != Ordering::Greater;
}

// Lattice exponents n in Z^q with componentwise arithmetic.
using LatticePoint = std::vector<std::int64_t>;

inline LatticePoint lattice_add(const LatticePoint& a, const LatticePoint& b) {
    if (a.size() != b.size()) throw DimensionMismatch("lattice points of different rank");
    LatticePoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline LatticePoint lattice_sub(const LatticePoint& a, const LatticePoint& b) {
    if (a.size() != b.size()) throw DimensionMismatch("lattice points of different rank");
    LatticePoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline LatticePoint lattice_neg(const LatticePoint& a) {
    LatticePoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline std::string lattice_str(const LatticePoint& n) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i) os << ",";
        os << n[i];
    }
    os << ")";
    return os.str();
}

namespace detail {

// Rank of a small rational matrix by Gaussian elimination (exact).
inline std::size_t rational_rank(std::vector<std::vector<Rat>> m) {
    std::size_t rank = 0;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// The period form chi. Construction validates strict positivity of every
// period and injectivity on Z^q (Q-linear independence of the period
// coordinate vectors); both are exact decisions.
class DegreeForm {
public:
    DegreeForm(BasisPtr basis, std::vector<DegreeValue> periods)
        : basis_(std::move(basis)), periods_(std::move(periods)) {
        std::vector<std::vector<Rat>> rows;
        for (const auto& p : periods_) {
            if (!same_basis(p.basis(), basis_))
                throw DimensionMismatch("period over a different formal basis");
            if (compare(p, DegreeValue::zero(basis_)) != Ordering::Greater)
                throw InvalidArgument("period " + p.str() + " is not strictly positive");
            rows.push_back(p.coeffs());
        }
        if (detail::rational_rank(rows) != periods_.size())
            throw InvalidArgument(
                "periods are Q-linearly dependent; the degree form is not injective on Z^q");
    }

    // Rational single-period convenience: chi = (1) etc.
    static std::shared_ptr<const DegreeForm> cyclic(const Rat& period = Rat(1)) {
        return std::make_shared<DegreeForm>(
            rational_basis(),
            std::vector<DegreeValue>{DegreeValue::rational(period)});
    }

    // q = 0: the lattice is trivial and every degree is 0 (Lambda = Z case).
    static std::shared_ptr<const DegreeForm> trivial() {
        return std::make_shared<DegreeForm>(rational_basis(), std::vector<DegreeValue>{});
    }

    std::size_t q() const { return periods_.size(); }
    const BasisPtr& basis() const { return basis_; }
    const DegreeValue& period(std::size_t i) const { return periods_[i]; }

    DegreeValue zero() const { return DegreeValue::zero(basis_); }

    DegreeValue degree_of(const LatticePoint& n) const {
        if (n.size() != periods_.size())
            throw DimensionMismatch("lattice point of rank " + std::to_string(n.size()) +
                                    " against a degree form with q = " +
                                    std::to_string(periods_.size()));
        std::vector<Rat> acc(basis_->rank() + 1, Rat(0));
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] == 0) continue;
            const auto& pc = periods_[i].coeffs();
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += Rat(n[i]) * pc[k];
        }
        return DegreeValue(basis_, std::move(acc));
    }

    friend bool operator==(const DegreeForm& a, const DegreeForm& b) {
        if (!same_basis(a.basis_, b.basis_)) return false;
        if (a.periods_.size() != b.periods_.size()) return false;
        for (std::size_t i = 0; i < a.periods_.size(); ++i)
            if (!(a.periods_[i] == b.periods_[i])) return false;
        return true;
    }

private:
    BasisPtr basis_;
    std::vector<DegreeValue> periods_;
};

using FormPtr = std::shared_ptr<const DegreeForm>;

inline bool same_form(const FormPtr& a, const FormPtr& b) {
    return a == b || (a && b && *a == *b);
}

// A finite stored set of exponents plus an upper cutoff: content at degree
// >= cutoff is unknown. Stored points must sit strictly below the cutoff.
struct SupportSet {
    FormPtr form;
    std::set<LatticePoint> points;
    std::optional<DegreeValue> cutoff;  // nullopt = exact (+infinity)

    SupportSet(FormPtr f, std::set<LatticePoint> pts,
               std::optional<DegreeValue> cut = std::nullopt)
        : form(std::move(f)), points(std::move(pts)), cutoff(std::move(cut)) {
        if (cutoff) {
            for (const auto& p : points)
                if (!degree_less(form->degree_of(p), *cutoff))
                    throw InvalidArgument("stored point " + lattice_str(p) +
                                          " at or above the cutoff");
        }
    }
};

// Classification result. Flags are certificates: a truncated set certifies
// slab compactness on its window only; forwardness (hence c/f) is claimed
// only for exact sets, where the whole support is visible.
struct SupportClass {
    bool slab_compact = false;
    bool forward = false;
    bool compact_forward = false;
    std::optional<DegreeValue> min_degree;  // empty set -> nullopt
    std::optional<DegreeValue> window_hi;   // nullopt = +infinity
};

inline SupportClass classify_support(const SupportSet& F) {
    SupportClass out;
    out.window_hi = F.cutoff;
    for (const auto& p : F.points) {
        DegreeValue d = F.form->degree_of(p);
        if (!out.min_degree || degree_less(d, *out.min_degree)) out.min_degree = d;
    }
    out.slab_compact = true;  // stored content is finite in every slab below the window
    if (!F.cutoff) {
        out.forward = true;
        out.compact_forward = true;
    }
    return out;
}

}  // namespace novik

#endif  // NOVIK_DEGREE_HPP
