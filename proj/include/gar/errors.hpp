#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A descriptor names an attribute or value the information system does not have.
class DescriptorError : public Error {
 public:
  using Error::Error;
};

// A ratio whose denominator would be zero: support on an empty universe,
// approximation of an empty target set, confidence of an empty extension.
class UndefinedMeasureError : public Error {
 public:
  using Error::Error;
};

class ThresholdError : public Error {
 public:
  using Error::Error;
};

// Structural problems in a model under construction (shape mismatch, bad schema).
class ModelError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateKeyError : public Error {
 public:
  using Error::Error;
};

}  // namespace gar
