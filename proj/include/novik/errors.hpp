// Error taxonomy for the Novikov ring engine.
//
// Every failure mode that a caller can act on gets its own exception type;
// all of them derive from novik::Error so batch drivers can catch one base.

#ifndef NOVIK_ERRORS_HPP
#define NOVIK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace novik {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Interval refinement ran out before the sign of a degree difference resolved.
class OrderingUndecidable final : public Error {
public:
    explicit OrderingUndecidable(const std::string& what) : Error(what) {}
};

// A series with no stored terms but a finite cutoff was asked for data
// (valuation, leading term) that only a longer expansion could provide.
class ZeroAmbiguity final : public Error {
public:
    explicit ZeroAmbiguity(const std::string& what) : Error(what) {}
};

// Leading data requested from the exact zero series.
class ExactZero final : public Error {
public:
    explicit ExactZero(const std::string& what) : Error(what) {}
};

class NotAUnit final : public Error {
public:
    explicit NotAUnit(const std::string& what) : Error(what) {}
};

// Operand cutoffs cannot support the requested degree window.
class PrecisionExhausted final : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// Integer-coefficient division failed; `step` is the iteration index of the
// leading-term cancellation at which divisibility broke.
class NotDivisible final : public Error {
public:
    NotDivisible(const std::string& what, int step_index)
        : Error(what), step(step_index) {}
    int step;
};

// A pivot or rank decision hinged on an entry that is zero up to precision.
class AmbiguousZero final : public Error {
public:
    explicit AmbiguousZero(const std::string& what) : Error(what) {}
};

class NotConical final : public Error {
public:
    explicit NotConical(const std::string& what) : Error(what) {}
};

class IndexMismatch final : public Error {
public:
    explicit IndexMismatch(const std::string& what) : Error(what) {}
};

class DegreeMismatch final : public Error {
public:
    explicit DegreeMismatch(const std::string& what) : Error(what) {}
};

class NotTorsion final : public Error {
public:
    explicit NotTorsion(const std::string& what) : Error(what) {}
};

class DimensionMismatch final : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Malformed input: bad expression text, bad schema, bad field value.
class ParseError final : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Precondition violations that indicate caller bugs rather than data limits.
class InvalidArgument final : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

}  // namespace novik

#endif  // NOVIK_ERRORS_HPP
