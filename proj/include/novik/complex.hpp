// Free complexes over the Novikov ring, Smith normal form over its Euclidean
// structure, ranks over the Novikov field, homology summaries and the
// rank/torsion inequalities.

#ifndef NOVIK_COMPLEX_HPP
#define NOVIK_COMPLEX_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "novik/matrix.hpp"
#include "novik/series.hpp"

namespace novik {

namespace detail {

// Leading data of the window [.., p): nullopt when the entry is certified
// zero through p; AmbiguousZero when no terms are visible but the cutoff
// stops short of p.
template <class C>
std::optional<LeadingData<C>> leading_below(const Series<C>& e, const DegreeValue& p) {
    Series<C> t = e.truncated(p);
    if (t.has_terms()) return t.leading();
    if (!cutoff_covers(e.cutoff(), p))
        throw AmbiguousZero("entry is zero up to degree " + e.cutoff()->str() +
                            " only; window " + p.str() + " requested");
    return std::nullopt;
}

}  // namespace detail

// A certified Smith normal form: D = U * M * V through the stated precision,
// with U, V unimodular and the diagonal a divisibility chain d_1 | d_2 | ..
// of canonical representatives.
struct SNFResult {
    ZMatrix U, D, V;
    std::vector<ZSeries> diagonal;  // the first `rank` diagonal entries
    std::size_t rank = 0;
    DegreeValue precision;
};

namespace detail {

// Visible leading term below the horizon; never throws. Distinct from
// leading_below, which enforces the caller's precision contract.
inline std::optional<LeadingData<Int>> visible_leading(const ZSeries& e,
                                                       const DegreeValue& horizon) {
    ZSeries t = e.truncated(horizon);
    if (!t.has_terms()) return std::nullopt;
    return t.leading();
}

// One diagonalization pass at the given working horizon. Euclidean climbing
// parks leftover content at or above the horizon; the pass fails (returns
// nullopt) when a later operation drags such content back below the reported
// precision, in which case the caller retries with a deeper horizon.
inline std::optional<SNFResult> snf_attempt(const ZMatrix& input, const DegreeValue& precision,
                                            const DegreeValue& horizon) {
    const FormPtr& form = input.form();
    ZMatrix A = input;
    ZMatrix U = ZMatrix::identity(form, input.rows());
    ZMatrix V = ZMatrix::identity(form, input.cols());
    const std::size_t nmin = std::min(input.rows(), input.cols());

    std::size_t k = 0;
    while (k < nmin) {
        // Pivot selection: minimal |leading coefficient|, then minimal
        // valuation, then row-major position. An entry with nothing visible
        // below the requested precision and a cutoff short of it cannot be
        // classified and aborts the run.
        std::optional<std::pair<std::size_t, std::size_t>> pos;
        std::optional<LeadingData<Int>> best;
        for (std::size_t i = k; i < A.rows(); ++i)
            for (std::size_t j = k; j < A.cols(); ++j) {
                const ZSeries& e = A.at(i, j);
                if (!e.has_terms() && !e.is_exact() && !cutoff_covers(e.cutoff(), precision))
                    throw AmbiguousZero("pivot decision hinges on an entry that is zero up to " +
                                        e.cutoff()->str() + " only");
                auto l = visible_leading(e, horizon);
                if (!l) continue;
                if (!pos) {
                    pos = {i, j};
                    best = l;
                    continue;
                }
                Int ln = abs(l->coefficient), bn = abs(best->coefficient);
                if (ln < bn || (ln == bn && degree_less(l->valuation, best->valuation))) {
                    pos = {i, j};
                    best = l;
                }
            }
        if (!pos) break;  // remaining block is zero below the horizon
        A.swap_rows(k, pos->first);
        U.swap_rows(k, pos->first);
        A.swap_cols(k, pos->second);
        V.swap_cols(k, pos->second);

        bool reselect = false;
        while (!reselect) {
            // Clear column k by Euclidean reduction against the pivot. A step
            // whose leading coefficients do not divide leaves a remainder of
            // strictly smaller norm: reselect, and the pivot norm descends.
            for (std::size_t i = k + 1; i < A.rows() && !reselect;) {
                auto le = visible_leading(A.at(i, k), horizon);
                if (!le) {
                    ++i;
                    continue;
                }
                auto lp = visible_leading(A.at(k, k), horizon).value();
                Int b = le->coefficient / lp.coefficient;
                if (b == 0) {
                    reselect = true;
                    break;
                }
                ZSeries f = ZSeries::monomial(form, lattice_sub(le->exponent, lp.exponent), -b);
                A.add_row_multiple(i, k, f);
                U.add_row_multiple(i, k, f);
            }
            if (reselect) break;
            for (std::size_t j = k + 1; j < A.cols() && !reselect;) {
                auto le = visible_leading(A.at(k, j), horizon);
                if (!le) {
                    ++j;
                    continue;
                }
                auto lp = visible_leading(A.at(k, k), horizon).value();
                Int b = le->coefficient / lp.coefficient;
                if (b == 0) {
                    reselect = true;
                    break;
                }
                ZSeries f = ZSeries::monomial(form, lattice_sub(le->exponent, lp.exponent), -b);
                A.add_col_multiple(j, k, f);
                V.add_col_multiple(j, k, f);
            }
            if (reselect) break;

            // Divisibility sweep: the pivot must divide the remaining block.
            // An offending row is folded into row k; its reduction then
            // surfaces an entry of smaller norm.
            std::optional<std::size_t> offender;
            for (std::size_t i = k + 1; i < A.rows() && !offender; ++i)
                for (std::size_t j = k + 1; j < A.cols(); ++j) {
                    if (!visible_leading(A.at(i, j), horizon)) continue;
                    ZSeries r = euclid_mod(A.at(i, j), A.at(k, k), horizon);
                    if (r.has_terms()) {
                        offender = i;
                        break;
                    }
                }
            if (!offender) {
                ++k;
                break;
            }
            ZSeries one = ZSeries::one(form);
            A.add_row_multiple(k, *offender, one);
            U.add_row_multiple(k, *offender, one);
        }
    }

    // Leaked pollution below the precision means the horizon was too
    // shallow for this input.
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (i == j && i < k) continue;
            if (A.at(i, j).truncated(precision).has_terms()) return std::nullopt;
        }

    SNFResult out{std::move(U), std::move(A), std::move(V), {}, 0, precision};

    // Rank and diagonal report at the requested precision: trailing pivots
    // whose content sits entirely at or above it are not visible there.
    while (out.rank < k && out.D.at(out.rank, out.rank).truncated(precision).has_terms())
        ++out.rank;

    // Valuation spread of the transform data: products against entries of
    // negative valuation eat into certified windows, once per factor. The
    // normalization window is inflated accordingly so that U * M * V stays
    // verifiable through the requested precision.
    DegreeValue spread = form->zero();
    auto widen = [&](const ZMatrix& mm) {
        for (std::size_t i = 0; i < mm.rows(); ++i)
            for (std::size_t j = 0; j < mm.cols(); ++j) {
                if (!mm.at(i, j).has_terms()) continue;
                DegreeValue v = -mm.at(i, j).valuation();
                if (degree_less(spread, v)) spread = v;
            }
    };
    widen(input);
    widen(out.U);
    widen(out.V);

    // Canonical diagonal: scale each pivot row by the unit produced by
    // canonicalize, so associate inputs yield identical diagonals.
    for (std::size_t i = 0; i < out.rank; ++i) {
        DegreeValue window = precision + spread.scaled(Rat(3));
        DegreeValue val = out.D.at(i, i).truncated(precision).valuation();
        if (compare(val, form->zero()) == Ordering::Greater) window = window + val;
        Canonical c = canonicalize(out.D.at(i, i), window);
        out.D.scale_row(i, c.unit);
        out.U.scale_row(i, c.unit);
        out.D.at(i, i) = c.canonical;
        out.diagonal.push_back(c.canonical);
    }

    // Truncate parked content away so D is genuinely diagonal.
    for (std::size_t i = 0; i < out.D.rows(); ++i)
        for (std::size_t j = 0; j < out.D.cols(); ++j) {
            if (i == j && i < out.rank) continue;
            ZSeries& e = out.D.at(i, j);
            if (!e.is_exact_zero()) e = e.truncated(precision);
        }
    return out;
}

}  // namespace detail

// SNF over the integer Novikov ring. The Euclidean norm is the absolute
// value of the leading coefficient; pivots are chosen by minimal norm, then
// minimal valuation, then row-major position. Internally the elimination
// runs to a horizon beyond the requested precision and deepens it when
// parked remainders interfere; the result is certified at the precision.
inline SNFResult smith_normal_form(const ZMatrix& input, const DegreeValue& precision) {
    const FormPtr& form = input.form();
    Cutoff cap;  // tightest input cutoff bounds any honest horizon
    DegreeValue spread = form->zero();
    for (std::size_t i = 0; i < input.rows(); ++i)
        for (std::size_t j = 0; j < input.cols(); ++j) {
            const ZSeries& e = input.at(i, j);
            if (!cutoff_covers(e.cutoff(), precision))
                throw PrecisionExhausted("matrix entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") does not certify the window");
            cap = min_cutoff(cap, e.cutoff());
            if (e.has_terms()) {
                DegreeValue v = -e.valuation();
                if (degree_less(spread, v)) spread = v;
            }
        }

    DegreeValue step = precision + spread.scaled(Rat(4));
    DegreeValue horizon = precision;
    for (int attempt = 0; attempt < 5; ++attempt) {
        DegreeValue h = horizon;
        if (cap && degree_less(*cap, h)) h = *cap;
        auto result = detail::snf_attempt(input, precision, h);
        if (result) return std::move(*result);
        if (cap && !degree_less(h, *cap))  // already ran at the cutoff cap
            throw PrecisionExhausted("operand cutoffs cannot support the requested window");
        horizon = horizon + step;
    }
    throw Error("internal: Smith normal form horizon did not stabilize");
}

// Rank over the Novikov field by Gaussian elimination; pivots of minimal
// valuation keep every propagated cutoff at or above the window.
inline std::size_t rank_over_field(const QMatrix& input, const DegreeValue& precision) {
    QMatrix A = input;
    std::size_t rank = 0;
    const std::size_t rows = A.rows(), cols = A.cols();
    while (true) {
        std::optional<std::pair<std::size_t, std::size_t>> pos;
        std::optional<LeadingData<Rat>> best;
        for (std::size_t i = rank; i < rows; ++i)
            for (std::size_t j = rank; j < cols; ++j) {
                auto l = detail::leading_below(A.at(i, j), precision);
                if (!l) continue;
                if (!pos || degree_less(l->valuation, best->valuation)) {
                    pos = {i, j};
                    best = l;
                }
            }
        if (!pos) return rank;
        A.swap_rows(rank, pos->first);
        A.swap_cols(rank, pos->second);
        const QSeries pivot = A.at(rank, rank);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (!detail::leading_below(A.at(i, rank), precision)) continue;
            QSeries f = divide(A.at(i, rank), pivot, precision);
            for (std::size_t j = rank; j < cols; ++j)
                A.at(i, j) = sub(A.at(i, j), detail::mul_certified(f, A.at(rank, j)));
        }
        ++rank;
    }
}

// A graded free complex with cohomological convention: boundary(k) maps the
// degree-k generators to the degree-(k+1) generators, one column per source
// generator.
template <class C>
struct FreeComplex {
    FormPtr form;
    std::map<int, std::vector<std::string>> generators;
    std::map<int, Matrix<C>> boundaries;

    std::size_t generator_count(int k) const {
        auto it = generators.find(k);
        return it == generators.end() ? 0 : it->second.size();
    }

    Matrix<C> boundary(int k) const {
        auto it = boundaries.find(k);
        if (it != boundaries.end()) return it->second;
        return Matrix<C>(form, generator_count(k + 1), generator_count(k));
    }

    int min_degree() const { return generators.empty() ? 0 : generators.begin()->first; }
    int max_degree() const { return generators.empty() ? -1 : generators.rbegin()->first; }

    void validate() const {
        for (const auto& [k, m] : boundaries) {
            if (m.rows() != generator_count(k + 1) || m.cols() != generator_count(k))
                throw DimensionMismatch("boundary in degree " + std::to_string(k) +
                                        " has shape " + std::to_string(m.rows()) + "x" +
                                        std::to_string(m.cols()) + ", generators demand " +
                                        std::to_string(generator_count(k + 1)) + "x" +
                                        std::to_string(generator_count(k)));
            if (!same_form(m.form(), form))
                throw DimensionMismatch("boundary matrix over a different degree form");
        }
    }
};

using ZComplex = FreeComplex<Int>;

struct ComplexViolation {
    int degree;  // the k of the composition boundary(k+1) * boundary(k)
    std::size_t row, col;
    std::string lowest_term;
};

struct VerifyReport {
    bool ok = true;
    std::vector<ComplexViolation> violations;
};

// Checks that consecutive boundary compositions vanish through degree m.
template <class C>
VerifyReport verify_complex(const FreeComplex<C>& complex, const DegreeValue& m) {
    complex.validate();
    VerifyReport report;
    if (complex.generators.empty()) return report;
    for (int k = complex.min_degree(); k + 2 <= complex.max_degree(); ++k) {
        if (complex.generator_count(k) == 0 || complex.generator_count(k + 1) == 0 ||
            complex.generator_count(k + 2) == 0)
            continue;
        Matrix<C> square = complex.boundary(k + 1) * complex.boundary(k);
        for (std::size_t i = 0; i < square.rows(); ++i)
            for (std::size_t j = 0; j < square.cols(); ++j) {
                const Series<C>& e = square.at(i, j);
                Series<C> visible = e.truncated(m);
                if (visible.has_terms()) {
                    auto l = visible.leading();
                    std::ostringstream term;
                    term << l.coefficient << "*t^" << lattice_str(l.exponent);
                    report.ok = false;
                    report.violations.push_back({k, i, j, term.str()});
                } else if (!cutoff_covers(e.cutoff(), m)) {
                    throw PrecisionExhausted("boundary composition in degree " +
                                             std::to_string(k) +
                                             " cannot be certified through " + m.str());
                }
            }
    }
    return report;
}

struct DegreeSummary {
    int degree = 0;
    std::size_t generator_count = 0;
    std::size_t betti = 0;
    std::vector<ZSeries> torsion;  // canonical non-unit divisors
};

struct HomologySummary {
    std::vector<DegreeSummary> rows;

    const DegreeSummary* row(int k) const {
        for (const auto& r : rows)
            if (r.degree == k) return &r;
        return nullptr;
    }
};

// Novikov numbers of a verified complex: betti_k = N_k - rank d^k - rank
// d^{k-1}; torsion divisors in degree k are the non-unit diagonal entries of
// SNF(d^{k-1}).
inline HomologySummary homology(const ZComplex& complex, const DegreeValue& precision) {
    VerifyReport check = verify_complex(complex, precision);
    if (!check.ok) {
        const auto& v = check.violations.front();
        throw InvalidArgument("boundary composition does not vanish (degree " +
                              std::to_string(v.degree) + ", entry " + std::to_string(v.row) +
                              "," + std::to_string(v.col) + ", lowest term " + v.lowest_term +
                              ")");
    }
    HomologySummary out;
    if (complex.generators.empty()) return out;

    std::map<int, SNFResult> snf;
    auto rank_of = [&](int k) -> std::size_t {
        if (complex.generator_count(k) == 0 || complex.generator_count(k + 1) == 0) return 0;
        auto it = snf.find(k);
        if (it == snf.end())
            it = snf.emplace(k, smith_normal_form(complex.boundary(k), precision)).first;
        return it->second.rank;
    };

    for (int k = complex.min_degree(); k <= complex.max_degree(); ++k) {
        DegreeSummary row;
        row.degree = k;
        row.generator_count = complex.generator_count(k);
        std::size_t out_rank = rank_of(k);
        std::size_t in_rank = rank_of(k - 1);
        row.betti = row.generator_count - out_rank - in_rank;
        if (in_rank > 0) {
            for (const ZSeries& d : snf.at(k - 1).diagonal)
                if (!is_unit(d)) row.torsion.push_back(d);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

struct InequalityLine {
    int degree = 0;
    std::size_t generators = 0;
    std::size_t betti = 0;
    std::size_t torsion_here = 0;   // q_k
    std::size_t torsion_above = 0;  // q_{k+1}
    long long slack = 0;            // N_k - (b_k + q_k + q_{k+1})
    bool ok = false;
};

struct InequalityReport {
    std::vector<InequalityLine> lines;
    long long euler_generators = 0;
    long long euler_betti = 0;
    bool euler_ok = false;
    bool all_ok = false;
};

// Morse-type inequalities N_k >= b_k + q_k + q_{k+1} plus the Euler identity.
// A failure indicates inconsistent input data, not an error state.
inline InequalityReport check_inequalities(const HomologySummary& h) {
    InequalityReport report;
    report.all_ok = true;
    for (const auto& row : h.rows) {
        InequalityLine line;
        line.degree = row.degree;
        line.generators = row.generator_count;
        line.betti = row.betti;
        line.torsion_here = row.torsion.size();
        const DegreeSummary* above = h.row(row.degree + 1);
        line.torsion_above = above ? above->torsion.size() : 0;
        line.slack = static_cast<long long>(line.generators) -
                     static_cast<long long>(line.betti + line.torsion_here + line.torsion_above);
        line.ok = line.slack >= 0;
        report.all_ok = report.all_ok && line.ok;
        report.lines.push_back(line);

        long long sign = (row.degree % 2 == 0) ? 1 : -1;
        report.euler_generators += sign * static_cast<long long>(row.generator_count);
        report.euler_betti += sign * static_cast<long long>(row.betti);
    }
    report.euler_ok = report.euler_generators == report.euler_betti;
    report.all_ok = report.all_ok && report.euler_ok;
    return report;
}

// Scalar extension from Laurent polynomials to the Novikov ring: the same
// matrices reinterpreted. Entries must be exact; homology computed after
// this step realizes base change to the Novikov ring, where more leading
// units are available.
inline ZComplex extend_scalars(const ZComplex& complex) {
    complex.validate();
    for (const auto& [k, m] : complex.boundaries)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_exact())
                    throw InvalidArgument("scalar extension needs exact Laurent-polynomial entries");
    return complex;
}

// Basis of the kernel through the window, read off the SNF column transform:
// columns of V beyond the rank map to zero through the precision. Vectors are
// scaled by unit monomials so their minimal valuation is zero, which keeps
// downstream products fully certified.
inline std::vector<std::vector<ZSeries>> kernel_basis(const ZMatrix& m,
                                                      const DegreeValue& precision) {
    SNFResult snf = smith_normal_form(m, precision);
    const FormPtr& form = m.form();
    std::vector<std::vector<ZSeries>> out;
    for (std::size_t j = snf.rank; j < m.cols(); ++j) {
        std::vector<ZSeries> v;
        v.reserve(m.cols());
        for (std::size_t i = 0; i < m.cols(); ++i) v.push_back(snf.V.at(i, j));

        std::optional<LeadingData<Int>> lowest;
        for (const ZSeries& e : v) {
            if (!e.has_terms()) continue;
            LeadingData<Int> l = e.leading();
            if (!lowest || degree_less(l.valuation, lowest->valuation)) lowest = l;
        }
        if (lowest && compare(lowest->valuation, form->zero()) != Ordering::Equal)
            for (ZSeries& e : v) e = e.monomial_shifted(Int(1), lattice_neg(lowest->exponent));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace novik

#endif  // NOVIK_COMPLEX_HPP
