#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relqi {

/// Bad input to a public operation (non-unit axis, empty state, unknown factor, ...).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures caused by floating-point loss of structure.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A composed or constructed transform drifted off the Lorentz group.
class NumericalDegradation : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// L(Λp)⁻¹ Λ L(p) failed to fix the rest momentum.
class LittleGroupViolation : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Replaces the process-wide warning sink. Passing an empty handler restores
/// the default, which writes to stderr. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace relqi
