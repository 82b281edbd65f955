// Shared fixtures for the test suites: standard degree forms and random
// sparse series.

#ifndef NOVIK_TESTS_HELPERS_HPP
#define NOVIK_TESTS_HELPERS_HPP

#include <random>
#include <utility>
#include <vector>

#include "novik/degree.hpp"
#include "novik/matrix.hpp"
#include "novik/morse.hpp"
#include "novik/series.hpp"

namespace novik_tests {

using namespace novik;

// chi = (1): the cyclic covering case.
inline FormPtr cyclic_form() {
    static FormPtr f = DegreeForm::cyclic();
    return f;
}

// chi = (1, xi) with xi enclosed around sqrt(2), refined in three steps.
inline FormPtr sqrt2_form() {
    static FormPtr f = [] {
        FormalRealBasis::Element xi;
        xi.name = "xi";
        xi.enclosures = {
            {Rat(14, 10), Rat(15, 10)},
            {Rat(1414, 1000), Rat(1415, 1000)},
            {Rat(1414213, 1000000), Rat(1414214, 1000000)},
        };
        auto basis = std::make_shared<FormalRealBasis>(
            std::vector<FormalRealBasis::Element>{xi});
        std::vector<DegreeValue> periods{
            DegreeValue(basis, {Rat(1), Rat(0)}),
            DegreeValue(basis, {Rat(0), Rat(1)}),
        };
        return std::make_shared<DegreeForm>(basis, std::move(periods));
    }();
    return f;
}

inline DegreeValue deg(const FormPtr& form, long num, long den = 1) {
    return DegreeValue::rational(Rat(num, den), form->basis());
}

// Sparse random series: up to max_terms exponents in [-3,3]^q, coefficients
// in [-3,3] (zero coefficients dropped).
template <class C>
Series<C> random_sparse(std::mt19937_64& rng, const FormPtr& form, int max_terms = 6) {
    std::uniform_int_distribution<int> term_count(0, max_terms);
    std::uniform_int_distribution<int> expo(-3, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    typename Series<C>::term_map terms;
    int n = term_count(rng);
    for (int i = 0; i < n; ++i) {
        LatticePoint p(form->q());
        for (auto& v : p) v = expo(rng);
        C c(coeff(rng));
        if (c != 0) terms[p] = c;
    }
    return Series<C>(form, std::move(terms));
}

// Laurent-polynomial series with exponents in [0, maxdeg] (q = 1 only).
inline ZSeries random_laurent(std::mt19937_64& rng, const FormPtr& form, int maxdeg = 2) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    ZSeries::term_map terms;
    for (int e = 0; e <= maxdeg; ++e) {
        Int c(coeff(rng));
        if (c != 0) terms[{e}] = c;
    }
    return ZSeries(form, std::move(terms));
}

inline ZMatrix random_laurent_matrix(std::mt19937_64& rng, const FormPtr& form,
                                     std::size_t rows, std::size_t cols, int maxdeg = 2) {
    ZMatrix m(form, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_laurent(rng, form, maxdeg);
    return m;
}

// The bundled example corpus, constructed in code (the data/ files carry the
// same content for the CLI).

inline MorseData circle_degree1() {
    MorseData d;
    d.dimension = 1;
    d.form = cyclic_form();
    d.critical_points = {{"a", 0}, {"b", 1}};
    d.flow_lines = {{"a", "b", {0}, true}, {"a", "b", {1}, false}};
    d.window = deg(d.form, 24);
    return d;
}

inline MorseData sphere_height() {
    MorseData d;
    d.dimension = 2;
    d.form = DegreeForm::trivial();
    d.critical_points = {{"min", 0}, {"max", 2}};
    d.window = DegreeValue::rational(Rat(24));
    return d;
}

inline MorseData torsion_demo() {
    MorseData d;
    d.dimension = 1;
    d.form = cyclic_form();
    d.critical_points = {{"a", 0}, {"b", 1}};
    d.flow_lines = {{"a", "b", {0}, true}, {"a", "b", {0}, true}};
    d.window = deg(d.form, 24);
    return d;
}

inline MorseData two_variable_demo() {
    MorseData d;
    d.dimension = 2;
    d.form = sqrt2_form();
    d.critical_points = {{"a", 0}, {"b", 1}};
    d.flow_lines = {{"a", "b", {1, 0}, true}, {"a", "b", {0, 1}, false}};
    d.window = deg(d.form, 24);
    return d;
}

// A random unimodular matrix together with its exact inverse, composed from
// elementary shears, monomial unit scalings and swaps.
inline std::pair<ZMatrix, ZMatrix> random_unimodular(std::mt19937_64& rng, const FormPtr& form,
                                                     std::size_t n, int ops = 6) {
    ZMatrix t = ZMatrix::identity(form, n);
    ZMatrix tinv = ZMatrix::identity(form, n);
    if (n < 1) return {t, tinv};
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<std::size_t> row(0, n - 1);
    std::uniform_int_distribution<int> expo(-1, 2);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int step = 0; step < ops; ++step) {
        std::size_t i = row(rng), j = row(rng);
        switch (kind(rng)) {
            case 0: {  // shear
                if (i == j) break;
                ZSeries f = ZSeries::monomial(form, {expo(rng)}, Int(coeff(rng)));
                ZMatrix e = ZMatrix::identity(form, n);
                e.at(i, j) = f;
                ZMatrix einv = ZMatrix::identity(form, n);
                einv.at(i, j) = -f;
                t = e * t;
                tinv = tinv * einv;
                break;
            }
            case 1: {  // monomial unit scaling
                Int sign = coeff(rng) < 0 ? Int(-1) : Int(1);
                int a = expo(rng);
                ZMatrix e = ZMatrix::identity(form, n);
                e.at(i, i) = ZSeries::monomial(form, {a}, sign);
                ZMatrix einv = ZMatrix::identity(form, n);
                einv.at(i, i) = ZSeries::monomial(form, {-a}, sign);
                t = e * t;
                tinv = tinv * einv;
                break;
            }
            default: {  // swap
                ZMatrix e = ZMatrix::identity(form, n);
                e.swap_rows(i, j);
                t = e * t;
                tinv = tinv * e;
                break;
            }
        }
    }
    return {t, tinv};
}

}  // namespace novik_tests

#endif  // NOVIK_TESTS_HELPERS_HPP
