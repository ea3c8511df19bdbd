#pragma once

#include <stdexcept>
#include <string>

namespace natlas {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Root finder ran out of sweeps.
struct NonConvergence : Error {
  explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// num and den both vanish at the evaluation point; reduction failed upstream.
struct Indeterminate : Error {
  explicit Indeterminate(const std::string& msg) : Error(msg) {}
};

// deg(p) = 1 and q constant: the Newton map collapses to a constant.
struct ConstantMap : Error {
  explicit ConstantMap(const std::string& msg) : Error(msg) {}
};

struct DegreeTooLow : Error {
  explicit DegreeTooLow(const std::string& msg) : Error(msg) {}
};

struct NotParabolic : Error {
  explicit NotParabolic(const std::string& msg) : Error(msg) {}
};

struct NoCenter : Error {
  explicit NoCenter(const std::string& msg) : Error(msg) {}
};

struct BranchAmbiguity : Error {
  explicit BranchAmbiguity(const std::string& msg) : Error(msg) {}
};

// Cyclic matching of marked rays to petals has no unique best rotation.
struct AlignmentFailure : Error {
  explicit AlignmentFailure(const std::string& msg) : Error(msg) {}
};

struct BudgetExhausted : Error {
  explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace natlas
