#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qts/quot.hpp"

namespace qts {

enum class Stability { stable, strictly_semistable, unstable };

// A pair (W, M): a subspace W of the framing source and the invariant
// subspace M generated by it. For an unstable verdict the pair violates
// the slope inequality r*length < n*dim W; for a strictly semistable one
// it meets it with equality and 0 < dim W < r.
struct StabilityWitness {
  Mat framing_subspace;  // canonical rows in Q^r
  Submodule destabilizing;
};

struct StabilityVerdict {
  Stability status = Stability::stable;
  bool certified = false;
  std::optional<StabilityWitness> witness;
};

struct StabilityOptions {
  // Certified subset enumeration runs when the support is reduced and n
  // stays at or under this cap; 2^n subsets are scanned.
  int max_exhaustive_n = 16;
  // Extra random framing-source seeds for the heuristic search.
  int samples = 64;
  std::uint64_t seed = 0;
};

// Reduced support within the cap: exact verdict over all coordinate
// subsets of the support (these dominate all framing subspaces there).
// Otherwise: a Krylov-closure search that can certify instability by
// witness but reports semistable or stable status uncertified.
StabilityVerdict check_stability(const QuotPoint& qp, const StabilityOptions& opts = {});

struct JHFactor {
  int rank = 0;
  // One entry per length unit of the factor's quotient, sorted; points
  // repeat when the factor support is thick.
  std::vector<std::array<Rational, 3>> support;

  bool operator==(const JHFactor&) const = default;
};

bool factor_less(const JHFactor& a, const JHFactor& b);

// Graded pieces of a Jordan-Holder filtration, listed from the bottom of
// the filtration up. A stable input yields itself as the single factor
// (input_stable set). Non-uniqueness of the filtration is resolved by a
// fixed rule: at each step the equality subset with the smallest framing
// preimage dimension and then the smallest subset mask is split off.
struct JHFiltration {
  bool input_stable = false;
  std::vector<JHFactor> factors;
};

// Requires a certified verdict (uncertified_error otherwise) and a
// semistable one (precondition_error on unstable input).
JHFiltration jordan_holder(const QuotPoint& qp, const StabilityOptions& opts = {});

// The polystable class: the JH factors sorted canonically. Two semistable
// data lie in the same orbit closure class iff these lists are equal.
std::vector<JHFactor> s_equivalence_class(const QuotPoint& qp, const StabilityOptions& opts = {});

enum class IsoAnswer { no, yes, unknown };

struct IsoResult {
  IsoAnswer answer = IsoAnswer::unknown;
  // For yes: (h, g) with h A h^-1 = A' etc. and h V = V' g.
  std::optional<std::pair<Mat, Mat>> maps;
};

struct IsoOptions {
  int grid_radius = 2;
  long long max_combinations = 10000;
};

// Exact linear reduction: intertwiner pairs form a kernel; a grid over the
// kernel hunts for an invertible pair. "no" is returned only when it is a
// proof (empty kernel, distinct support, or a fully enumerated grid whose
// size bounds the determinant degree). Otherwise a miss stays "unknown".
IsoResult is_isomorphic(const QuotPoint& a, const QuotPoint& b, const IsoOptions& opts = {});

}  // namespace qts
