#pragma once

#include <stdexcept>
#include <string>

namespace switchgraph {

/// Invalid numeric parameter (tau, n, thresholds, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A degree sequence that no simple graph realizes.
class GraphicalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Odd degree sum where a perfect pairing of half-edges is required.
class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rejection sampling ran out of attempts.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit has fewer than two distinct abscissae.
class DegenerateFitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Value outside the domain of a function (e.g. log of a non-positive mean).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration requested beyond the configured vertex cap.
class CapExceededError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or CLI argument.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace switchgraph
