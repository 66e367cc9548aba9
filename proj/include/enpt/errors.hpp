#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace enpt {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An energy denominator fell below the small-denominator guard.
/// `target` and `other` are state labels (quantum numbers), not storage slots.
class SmallDenominator : public Error {
 public:
  SmallDenominator(int target, int other, double denominator)
      : Error("small denominator between states " + std::to_string(target) +
              " and " + std::to_string(other) + " (|denominator| = " +
              std::to_string(denominator) + ")"),
        target_(target),
        other_(other),
        denominator_(denominator) {}

  int target() const { return target_; }
  int other() const { return other_; }
  double denominator() const { return denominator_; }

 private:
  int target_;
  int other_;
  double denominator_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::size_t iterations)
      : Error(what + " did not converge after " + std::to_string(iterations) +
              " iterations"),
        iterations_(iterations) {}

  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Two correct zeroth-order states carry the same weight on the target state.
class TargetAmbiguous : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace enpt
