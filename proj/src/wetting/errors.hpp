#pragma once

#include <stdexcept>
#include <string>

namespace wetting {

/// Argument outside the domain of a model quantity (beta outside I_P, K <= 0, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke a documented precondition (site outside the box, too many sites, ...).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Linear solver or quadrature failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A monotone coupling produced B > A somewhere on the common domain.
class CouplingViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace wetting

namespace wetting {

/// Run configuration failed to parse or validate; the message lists every
/// offending field.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Filesystem trouble while writing results.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace wetting
