#pragma once

// Property-based verification of the measure and exponent modules on seeded
// random inputs. Each property has a stable ID and reports its worst
// violation with a counterexample.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "renyikit/dist.hpp"
#include "renyikit/order.hpp"
#include "renyikit/simplex_opt.hpp"

namespace renyikit {

struct PropertyInfo {
  std::string id;
  std::string description;
};

/// All property IDs in execution order.
const std::vector<PropertyInfo>& property_catalog();

/// Replacement measure implementations; empty members use the library.
struct MeasureHooks {
  std::function<double(const JointPmf&, const OrderPair&)> h_tilde;
  std::function<double(const JointPmf&, const OrderPair&)> i_tilde;
};

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Random joints per property for the closed-form checks.
  std::size_t samples = 200;
  std::size_t max_dim = 5;
  /// Joints for the optimizer-based checks (variational, exponent-duality).
  std::size_t solver_samples = 50;
  std::size_t exponent_samples = 30;
  double slack = 1e-9;
  double divergence_slack = 1e-10;
  double continuity_tol = 1e-4;
  double variational_tol = 1e-4;
  double duality_tol = 1e-3;
  /// IDs to run; empty means all.
  std::vector<std::string> props;
  std::size_t threads = 1;
  MeasureHooks hooks;
  SolverConfig solver;
};

struct PropertyResult {
  std::string id;
  std::string description;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Largest overshoot of a check beyond its allowance; negative when all hold.
  double worst_excess = 0.0;
  /// JSON object for the worst violation.
  std::optional<std::string> counterexample;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  std::uint64_t seed = 0;

  bool all_passed() const;
  std::string to_json() const;
};

/// Throws InvalidParameter on an unknown property ID.
VerifyReport run_verification(const VerifyConfig& cfg = {});

}  // namespace renyikit
