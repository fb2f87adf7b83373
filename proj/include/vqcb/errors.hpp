#pragma once

#include <stdexcept>
#include <string>

namespace vqcb {

// Invalid configuration values (qubit counts, fractions, budgets, ...).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed circuit structure: bad targets, index out of range.
class StructuralError : public std::runtime_error {
  public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter binding mismatches (unbound slots, wrong vector length).
class BindingError : public std::runtime_error {
  public:
    explicit BindingError(const std::string& what) : std::runtime_error(what) {}
};

// Bad or inconsistent data: empty inputs, dimension mismatches, ingestion failures.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures while writing or reading artifacts.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vqcb
