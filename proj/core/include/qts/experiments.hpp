#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qts/construct.hpp"
#include "qts/homology.hpp"

namespace qts {

// Every experiment derives trial t's randomness from mix_seed(seed, t),
// so results are identical for any job count and any sharding.

struct TrialFailure {
  int trial = 0;
  std::string what;

  bool operator==(const TrialFailure&) const = default;
};

struct EmptinessReport {
  int r = 0, n = 0, trials = 0;
  std::vector<TrialFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Claim: with rank above length nothing is semistable. Samples reduced
// random data and demands a certified unstable verdict every time.
// input_error when r <= n (the claim does not apply there).
EmptinessReport verify_empty(int r, int n, int trials, std::uint64_t seed, int jobs = 1);

struct SymnReport {
  int n = 0, trials = 0;
  int semistable_pairs = 0;   // trials where both framings were certified semistable
  int unstable_excluded = 0;  // framings that came out unstable instead
  std::vector<TrialFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Claim: at r = n the moduli space is the symmetric power of 3-space.
// Each trial draws one support and two framings over it; no sample may be
// stable (n >= 2), semistable pairs must share the S-equivalence class
// given by the support multiset, and the polystable representatives must
// be isomorphic to each other and non-isomorphic to the previous trial's.
SymnReport verify_symn(int n, int trials, std::uint64_t seed, int jobs = 1);

struct DimensionReport {
  int r = 0, n = 0, trials = 0;
  long long expected_ext1 = 0;
  std::map<int, int> retry_histogram;  // extension retries per step
  std::vector<TrialFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Claim: the principal component is smooth of dimension n(r+2) - r^2 + 1
// at the iterated-extension data; checks ext1 of every constructed datum.
DimensionReport verify_dimension(int r, int n, int trials, std::uint64_t seed, int jobs = 1);

struct CommvarReport {
  int n = 0, trials = 0;
  std::map<long long, int> histogram;  // tangent dimension -> count
};

// Linearized commuting-variety dimensions over random triples, reduced
// and thick alternating, conjugated to leave normal form.
CommvarReport commuting_variety_sample(int n, int trials, std::uint64_t seed, int jobs = 1);

}  // namespace qts
