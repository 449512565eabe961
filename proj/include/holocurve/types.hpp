#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holocurve {

using cplx = std::complex<double>;
using ComplexVec = std::vector<cplx>;

/// Error taxonomy. Every failure raised by the library derives from Error and
/// carries a coarse category (validation vs. numeric) plus a short machine
/// readable kind string. The CLI maps categories to exit codes.
enum class ErrorCategory { validation, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, std::string k, const std::string& msg)
        : std::runtime_error(msg), category(cat), kind(std::move(k)) {}
    ErrorCategory category;
    std::string kind;
};

class ValidationError : public Error {
public:
    ValidationError(std::string k, const std::string& msg)
        : Error(ErrorCategory::validation, std::move(k), msg) {}
};

class NumericError : public Error {
public:
    NumericError(std::string k, const std::string& msg)
        : Error(ErrorCategory::numeric, std::move(k), msg) {}
};

/// Malformed input text. offset is the byte position of the first offending
/// character, expected describes what the parser would have accepted there.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t off, std::string exp, const std::string& msg)
        : ValidationError("parse", msg), offset(off), expected(std::move(exp)) {}
    std::size_t offset;
    std::string expected;
};

/// Evaluation hit a pole. order > 0 when the pole order is known.
class PoleError : public NumericError {
public:
    PoleError(cplx where, int ord, const std::string& msg)
        : NumericError("pole", msg), at(where), order(ord) {}
    cplx at;
    int order;
};

class QuadratureError : public NumericError {
public:
    QuadratureError(double a, double b, const std::string& msg)
        : NumericError("quadrature", msg), last(a), previous(b) {}
    double last;
    double previous;
};

/// All homogeneous coordinates vanished (or fell below the degeneracy floor)
/// at a point where a curve value was required.
class DegenerateError : public NumericError {
public:
    DegenerateError(cplx where, const std::string& msg)
        : NumericError("degenerate", msg), at(where) {}
    cplx at;
};

/// A winding-number contour passed too close to the target or the argument
/// could not be tracked reliably.
class ContourError : public NumericError {
public:
    explicit ContourError(const std::string& msg)
        : NumericError("contour", msg) {}
};

/// Local chart inversion left its branch domain.
class BranchError : public NumericError {
public:
    explicit BranchError(const std::string& msg)
        : NumericError("branch", msg) {}
};

/// Collector for non-fatal warnings. Pass nullptr to ignore.
struct Diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string w) { warnings.push_back(std::move(w)); }
};

inline void warn(Diagnostics* d, std::string w) {
    if (d) d->warn(std::move(w));
}

}  // namespace holocurve
