#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bandcurve {

/// Input outside the domain of a map (v <= 0, pole of h_band, non-finite value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix or curve is too degenerate to work with (stationary point,
/// singular polar factor).
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  explicit DegeneracyError(const std::string& what)
      : std::runtime_error(what) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_ = 0;
};

/// Parameter outside its admissible range (t outside [0,1], r outside (0, pi)).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A curvature sample touches or leaves the open band. Carries the cell or
/// sequence index that triggered it.
class BandViolation : public std::runtime_error {
 public:
  BandViolation(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// A check was asked to run on an input that does not satisfy its hypotheses.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bandcurve
