#pragma once

#include <stdexcept>
#include <string>

namespace serp_audit {

// Base for all toolkit-specific failures. std::domain_error is used
// directly for numeric-domain violations (weights, bootstrap).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A round was applied or scored out of round_index order.
struct OrderingError : Error {
  using Error::Error;
};

// No extraction rule matched any node and the page did not positively
// identify itself as an empty result page.
struct ParseLayoutError : Error {
  using Error::Error;
};

// URL/title could not be normalized (relative URL, no host, ...).
struct NormalizationError : Error {
  using Error::Error;
};

// Snapshot log or config file violates its schema.
struct SchemaError : Error {
  using Error::Error;
};

// Bad or inconsistent configuration (profiles, plans, run configs).
struct ConfigError : Error {
  using Error::Error;
};

// Synthetic stream generation cannot proceed (pool exhausted).
struct GenerationError : Error {
  using Error::Error;
};

// Ratio with a zero denominator.
struct UndefinedRatioError : Error {
  using Error::Error;
};

// Input data is structurally valid but unusable (empty observations, ...).
struct DataError : Error {
  using Error::Error;
};

// Filesystem write/read failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace serp_audit
