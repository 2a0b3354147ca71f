#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace renyikit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// dist-core
class NegativeMass : public Error {
 public:
  NegativeMass(std::size_t index, double value);
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(double deviation);
  /// Signed deviation sum - 1.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class DuplicateLabel : public Error {
 public:
  explicit DuplicateLabel(const std::string& label)
      : Error("duplicate alphabet label '" + label + "'") {}
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  SizeOverflow(std::size_t requested, std::size_t cap)
      : Error("product would have " + std::to_string(requested) +
              " cells, cap is " + std::to_string(cap)),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// orders and measures
class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class UndefinedCorner : public Error {
 public:
  using Error::Error;
};

class InvalidRate : public Error {
 public:
  using Error::Error;
};

/// Out-of-range configuration value (sizes, sample counts, grids).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// solver
class DimensionCap : public Error {
 public:
  DimensionCap(std::size_t cells, std::size_t cap)
      : Error("optimization over " + std::to_string(cells) +
              " cells exceeds dimension cap " + std::to_string(cap)),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class NonFiniteObjectiveEverywhere : public Error {
 public:
  NonFiniteObjectiveEverywhere()
      : Error("objective is non-finite on every grid point") {}
};

// protocol simulation
class EnumerationCap : public Error {
 public:
  EnumerationCap(double requested, std::size_t cap);
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class NonPowerOfTwoAlphabet : public Error {
 public:
  using Error::Error;
};

class BetaOutOfFamilyRange : public Error {
 public:
  using Error::Error;
};

}  // namespace renyikit
