#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Error categories mirror the C API status codes.
enum class ErrorKind {
    usage,
    domain,
    validity,
    solver_failure,
    quadrature_failure,
    sampler_integrity,
    parse,
    degenerate_input,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Quadrature failures carry the best estimate reached and its error bound.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double best, double bound)
        : Error(ErrorKind::quadrature_failure, msg),
          best_estimate(best),
          error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

}  // namespace rmt
