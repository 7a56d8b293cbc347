#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lnposet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class NotComparable : public Error {
 public:
  NotComparable(std::size_t x, std::size_t y)
      : Error("elements " + std::to_string(x) + " and " + std::to_string(y) +
              " are not comparable as required"),
        x(x),
        y(y) {}
  std::size_t x;
  std::size_t y;
};

/// 64-bit signed arithmetic left its range while computing the entry (x, y).
class Overflow : public Error {
 public:
  Overflow(std::size_t x, std::size_t y)
      : Error("64-bit overflow at pair (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
        x(x),
        y(y) {}
  std::size_t x;
  std::size_t y;
};

class NotAnEmbedding : public Error {
 public:
  using Error::Error;
};

class MConditionFailed : public Error {
 public:
  MConditionFailed(const std::string& what, std::size_t witness) : Error(what), witness(witness) {}
  std::size_t witness;
};

class LayerInvalid : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotElementary : public Error {
 public:
  using Error::Error;
};

class FaceLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lnposet
