#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hrlab {

using cx = std::complex<double>;
using std::int64_t;

constexpr double kPi = 3.14159265358979323846;

// Precondition violations (bad supports, escaping translations, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Solver non-convergence and tolerance violations; message carries the residual.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hrlab
