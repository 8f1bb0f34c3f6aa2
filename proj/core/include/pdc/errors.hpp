#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Input outside the physical/validity domain of an operation.
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical scheme failed to converge to the requested tolerance.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration input.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}
