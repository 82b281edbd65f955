// Lattice cones with chi-positive generators: membership by exact rational
// feasibility, fundamental-domain enumeration, and conical-support
// certificates for series.
//
// A support inside a finitely generated cone on which chi is strictly
// positive stays forward under small perturbations of chi; certificates are
// structural, no numeric perturbation is performed.

#ifndef NOVIK_CONE_HPP
#define NOVIK_CONE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "novik/series.hpp"

namespace novik {

namespace detail {

// Fourier-Motzkin feasibility for { x : sum coeffs . x <= rhs } with exact
// rationals. Small systems only (a handful of generators).
struct LinearRow {
    std::vector<Rat> coeffs;
    Rat rhs;
};

inline bool rational_feasible(std::vector<LinearRow> rows, std::size_t nvars) {
    for (std::size_t var = 0; var < nvars; ++var) {
        std::vector<LinearRow> keep, pos, neg;
        for (auto& r : rows) {
            const Rat& c = r.coeffs[var];
            if (c == 0)
                keep.push_back(std::move(r));
            else if (c > 0)
                pos.push_back(std::move(r));
            else
                neg.push_back(std::move(r));
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p: c_p x <= rhs_p - rest_p ; n: c_n x >= .. with c_n < 0
                LinearRow combo;
                combo.coeffs.assign(nvars, Rat(0));
                Rat cp = p.coeffs[var], cn = -n.coeffs[var];
                for (std::size_t j = 0; j < nvars; ++j)
                    combo.coeffs[j] = cn * p.coeffs[j] + cp * n.coeffs[j];
                combo.rhs = cn * p.rhs + cp * n.rhs;
                keep.push_back(std::move(combo));
            }
        rows = std::move(keep);
    }
    for (const auto& r : rows)
        if (r.rhs < 0) return false;
    return true;
}

}  // namespace detail

// Cone generators, each of strictly positive degree. They need not be a
// lattice basis, and unions of generator sets are themselves valid specs.
class ConeSpec {
public:
    ConeSpec(FormPtr form, std::vector<LatticePoint> generators)
        : form_(std::move(form)), generators_(std::move(generators)) {
        for (const auto& e : generators_) {
            DegreeValue d = form_->degree_of(e);
            if (compare(d, form_->zero()) != Ordering::Greater)
                throw InvalidArgument("cone generator " + lattice_str(e) +
                                      " has non-positive degree " + d.str());
        }
    }

    const FormPtr& form() const { return form_; }
    const std::vector<LatticePoint>& generators() const { return generators_; }

    static ConeSpec merged(const ConeSpec& a, const ConeSpec& b) {
        std::vector<LatticePoint> gens = a.generators();
        gens.insert(gens.end(), b.generators().begin(), b.generators().end());
        return ConeSpec(a.form(), std::move(gens));
    }

private:
    FormPtr form_;
    std::vector<LatticePoint> generators_;
};

// n in C(e) iff n = sum x^k e_k has a nonnegative real solution.
inline bool cone_contains(const ConeSpec& e, const LatticePoint& n) {
    const std::size_t q = e.form()->q();
    if (n.size() != q) throw DimensionMismatch("lattice point of wrong rank");
    const auto& gens = e.generators();
    const std::size_t m = gens.size();

    std::vector<detail::LinearRow> rows;
    for (std::size_t i = 0; i < q; ++i) {
        detail::LinearRow le, ge;
        le.coeffs.assign(m, Rat(0));
        ge.coeffs.assign(m, Rat(0));
        for (std::size_t k = 0; k < m; ++k) {
            le.coeffs[k] = Rat(gens[k][i]);
            ge.coeffs[k] = Rat(-gens[k][i]);
        }
        le.rhs = Rat(n[i]);
        ge.rhs = Rat(-n[i]);
        rows.push_back(std::move(le));
        rows.push_back(std::move(ge));
    }
    for (std::size_t k = 0; k < m; ++k) {
        detail::LinearRow nonneg;
        nonneg.coeffs.assign(m, Rat(0));
        nonneg.coeffs[k] = Rat(-1);
        nonneg.rhs = Rat(0);
        rows.push_back(std::move(nonneg));
    }
    return detail::rational_feasible(std::move(rows), m);
}

namespace detail {

// Membership in the closed parallelepiped { sum x^k e_k : 0 <= x^k <= 1 }.
inline bool parallelepiped_contains(const ConeSpec& e, const LatticePoint& n) {
    const std::size_t q = e.form()->q();
    const auto& gens = e.generators();
    const std::size_t m = gens.size();
    std::vector<LinearRow> rows;
    for (std::size_t i = 0; i < q; ++i) {
        LinearRow le, ge;
        le.coeffs.assign(m, Rat(0));
        ge.coeffs.assign(m, Rat(0));
        for (std::size_t k = 0; k < m; ++k) {
            le.coeffs[k] = Rat(gens[k][i]);
            ge.coeffs[k] = Rat(-gens[k][i]);
        }
        le.rhs = Rat(n[i]);
        ge.rhs = Rat(-n[i]);
        rows.push_back(std::move(le));
        rows.push_back(std::move(ge));
    }
    for (std::size_t k = 0; k < m; ++k) {
        LinearRow lo, hi;
        lo.coeffs.assign(m, Rat(0));
        hi.coeffs.assign(m, Rat(0));
        lo.coeffs[k] = Rat(-1);
        lo.rhs = Rat(0);
        hi.coeffs[k] = Rat(1);
        hi.rhs = Rat(1);
        rows.push_back(std::move(lo));
        rows.push_back(std::move(hi));
    }
    return rational_feasible(std::move(rows), m);
}

}  // namespace detail

// The finite set C^1_Z(e): lattice points of the fundamental parallelepiped,
// found by scanning its integer bounding box.
inline std::set<LatticePoint> fundamental_lattice_points(const ConeSpec& e) {
    const std::size_t q = e.form()->q();
    const auto& gens = e.generators();
    std::vector<std::int64_t> lo(q, 0), hi(q, 0);
    for (const auto& g : gens)
        for (std::size_t i = 0; i < q; ++i) {
            if (g[i] < 0) lo[i] += g[i];
            if (g[i] > 0) hi[i] += g[i];
        }
    std::set<LatticePoint> out;
    LatticePoint n(q, 0);
    // odometer over the box
    std::function<void(std::size_t)> scan = [&](std::size_t i) {
        if (i == q) {
            if (detail::parallelepiped_contains(e, n)) out.insert(n);
            return;
        }
        for (std::int64_t v = lo[i]; v <= hi[i]; ++v) {
            n[i] = v;
            scan(i + 1);
        }
    };
    scan(0);
    return out;
}

struct ConicalCertificate {
    ConeSpec cone;
    LatticePoint shift;  // spt(alpha) is contained in shift + C(e)
};

// Validates a caller-supplied shift (certificates for products compose the
// factor shifts, which need not be derivable from the product's support).
template <class C>
ConicalCertificate certificate_with_shift(const Series<C>& alpha, const ConeSpec& e,
                                          const LatticePoint& shift) {
    if (!same_form(alpha.form(), e.form()))
        throw DimensionMismatch("series and cone over different degree forms");
    for (const auto& [n, c] : alpha.terms())
        if (!cone_contains(e, lattice_sub(n, shift)))
            throw NotConical("support point " + lattice_str(n) + " lies outside " +
                             lattice_str(shift) + " + C(e)");
    return ConicalCertificate{e, shift};
}

// Certifies that the stored support lies in a translate of the cone. Shift
// candidates are the componentwise minimum of the support and the support
// points themselves; for finite supports this search is complete for
// support-derived translates.
template <class C>
ConicalCertificate certify_conical(const Series<C>& alpha, const ConeSpec& e) {
    if (!same_form(alpha.form(), e.form()))
        throw DimensionMismatch("series and cone over different degree forms");
    const std::size_t q = e.form()->q();

    std::vector<LatticePoint> candidates;
    if (alpha.has_terms()) {
        LatticePoint cmin = alpha.terms().begin()->first;
        for (const auto& [n, c] : alpha.terms())
            for (std::size_t i = 0; i < q; ++i) cmin[i] = std::min(cmin[i], n[i]);
        candidates.push_back(cmin);
        for (const auto& [n, c] : alpha.terms()) candidates.push_back(n);
    } else {
        candidates.push_back(LatticePoint(q, 0));
    }

    std::optional<LatticePoint> witness;
    for (const auto& shift : candidates) {
        bool ok = true;
        for (const auto& [n, c] : alpha.terms()) {
            if (!cone_contains(e, lattice_sub(n, shift))) {
                if (!witness) witness = n;  // recorded for the first (minimum) shift
                ok = false;
                break;
            }
        }
        if (ok) return ConicalCertificate{e, shift};
    }
    throw NotConical("support point " + lattice_str(*witness) +
                     " lies outside every support-derived translate of the cone");
}

}  // namespace novik

#endif  // NOVIK_CONE_HPP
