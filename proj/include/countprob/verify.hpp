#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace countprob {

struct IdentityCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  int cases = 0;

  bool passed() const noexcept { return cases > 0 && worst <= tolerance; }
};

struct VerifyOptions {
  int n = 6;        // events per random mixture joint, 2..8
  int trials = 50;  // random joints and random models per identity
  std::uint64_t seed = 1;
};

/// Cross-module identity suite on random mixtures and random models. Each
/// entry records the worst deviation seen across all trials.
std::vector<IdentityCheck> run_verify(const VerifyOptions& options);

}  // namespace countprob
