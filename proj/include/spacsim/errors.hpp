#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spacsim {

/// Base class for all library errors. `what()` always names the failure
/// in a form suitable for CLI diagnostics.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter or configuration validation failure (usage-level, exit code 1).
class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& msg) : Error(msg) {}
};

/// Ensemble generation hit the trial cap before reaching the requested
/// number of conditioned samples: the herald threshold is impractically rare.
class AbortedAfterMaxTrials : public Error {
 public:
  AbortedAfterMaxTrials(std::uint64_t accepted, std::uint64_t target,
                        std::uint64_t cap)
      : Error("AbortedAfterMaxTrials: " + std::to_string(accepted) + "/" +
              std::to_string(target) + " conditioned samples after " +
              std::to_string(cap) + " trials"),
        accepted_(accepted),
        target_(target),
        cap_(cap) {}
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t target() const { return target_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t accepted_, target_, cap_;
};

/// More than the tolerated fraction of quadrature samples fell outside the
/// histogram range: the q grid is mis-sized for the given (alpha, r).
class GridTooNarrow : public Error {
 public:
  explicit GridTooNarrow(const std::string& msg)
      : Error("GridTooNarrow: " + msg) {}
};

/// Requested Fock truncation exceeds the documented stable range of the
/// wavefunction recurrences.
class TruncationTooLarge : public Error {
 public:
  explicit TruncationTooLarge(const std::string& msg)
      : Error("TruncationTooLarge: " + msg) {}
};

/// Dataset and pattern table disagree about the quadrature grid.
class GridMismatch : public Error {
 public:
  explicit GridMismatch(const std::string& msg)
      : Error("GridMismatch: " + msg) {}
};

/// The phase sweep does not cover [0, pi]; the tomographic integral of a
/// partial sweep is not the density matrix.
class SweepIncomplete : public Error {
 public:
  explicit SweepIncomplete(const std::string& msg)
      : Error("SweepIncomplete: " + msg) {}
};

/// Least-squares design matrix condition number exceeds the trust threshold.
class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& msg, double cond)
      : Error("IllConditioned: " + msg), cond_(cond) {}
  double condition_number() const { return cond_; }

 private:
  double cond_;
};

/// Filesystem / serialization failure (runtime-level, exit code 2).
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace spacsim
