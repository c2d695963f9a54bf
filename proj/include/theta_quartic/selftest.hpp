#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "theta_quartic/theta.hpp"

namespace tq {

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< worst residual, or the count for exact checks
  double tolerance = 0.0;  ///< 0 for exact checks
  std::string detail;
};

struct SelfTestConfig {
  int samples = 5;
  std::uint64_t seed = 1;
  TruncationPolicy policy;
  double bitangency_tol = 1e-6;
};

/// The exact combinatorial suite plus the numeric identity suite at `samples`
/// seeded random period matrices.
std::vector<SelfTestCheck> run_selftest(const SelfTestConfig& config = {});

}  // namespace tq
