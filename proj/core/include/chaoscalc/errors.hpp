#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace chaoscalc {

/// A runtime integrability gate (Assumptions A to D) failed.
class IntegrabilityViolation : public std::runtime_error {
 public:
  IntegrabilityViolation(std::string assumption, const std::string& detail)
      : std::runtime_error(assumption + ": " + detail), assumption_(std::move(assumption)) {}
  const std::string& assumption() const noexcept { return assumption_; }

 private:
  std::string assumption_;
};

/// Kernel and volatility supports overlap where strong independence is required.
class IndependenceViolation : public std::runtime_error {
 public:
  IndependenceViolation(std::size_t cell, const std::string& detail)
      : std::runtime_error(detail), cell_(cell) {}
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

/// A product or integral would exceed the configured chaos-order cap.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chaoscalc
