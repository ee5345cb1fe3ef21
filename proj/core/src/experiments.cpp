#include "qts/experiments.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <thread>

#include "qts/rng.hpp"

namespace qts {

namespace {

// Runs fn(t) for t in [0, trials) on up to `jobs` threads. Trial t's slot
// is written only by its own thread; aggregation happens in index order.
void parallel_trials(int trials, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  const int workers = std::min(jobs, trials);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int t = w; t < trials; t += workers) fn(t);
    });
  for (auto& th : pool) th.join();
}

using MaybeFailure = std::optional<std::string>;

}  // namespace

EmptinessReport verify_empty(int r, int n, int trials, std::uint64_t seed, int jobs) {
  if (r <= n) throw input_error("verify_empty: the emptiness claim needs r > n");
  EmptinessReport rep;
  rep.r = r;
  rep.n = n;
  rep.trials = trials;
  std::vector<MaybeFailure> slots(trials);
  parallel_trials(trials, jobs, [&](int t) {
    try {
      const QuotPoint qp = random_quot_point(n, r, true, mix_seed(seed, t));
      const StabilityVerdict v = check_stability(qp);
      if (!v.certified)
        slots[t] = "verdict not certified";
      else if (v.status != Stability::unstable)
        slots[t] = std::string("expected unstable, got ") +
                   (v.status == Stability::stable ? "stable" : "strictly semistable");
    } catch (const std::exception& e) {
      slots[t] = std::string("exception: ") + e.what();
    }
  });
  for (int t = 0; t < trials; ++t)
    if (slots[t]) rep.failures.push_back({t, *slots[t]});
  return rep;
}

namespace {

struct SymnTrial {
  MaybeFailure failure;
  int unstable = 0;
  bool pair_semistable = false;
  std::vector<std::array<Rational, 3>> points;  // sorted support of the trial
};

SymnTrial symn_trial(int n, std::uint64_t seed, int t) {
  SymnTrial out;
  try {
    const QuotPoint qp1 = random_quot_point(n, n, true, mix_seed(seed, 2 * t));
    const QuotPoint qp2 = reframe_random(qp1, mix_seed(seed, 2 * t + 1));
    for (const SupportPoint& p : support_decomposition(qp1)) out.points.push_back(p.point);

    const StabilityVerdict v1 = check_stability(qp1);
    const StabilityVerdict v2 = check_stability(qp2);
    for (const StabilityVerdict* v : {&v1, &v2}) {
      if (!v->certified) {
        out.failure = "verdict not certified";
        return out;
      }
      if (n >= 2 && v->status == Stability::stable) {
        out.failure = "stable datum at r = n, none should exist";
        return out;
      }
      if (v->status == Stability::unstable) ++out.unstable;
    }
    if (v1.status != Stability::unstable && v2.status != Stability::unstable && n >= 2) {
      out.pair_semistable = true;
      const auto c1 = s_equivalence_class(qp1);
      const auto c2 = s_equivalence_class(qp2);
      if (c1 != c2) {
        out.failure = "same support, different S-equivalence classes";
        return out;
      }
      if (int(c1.size()) != n) {
        out.failure = "class does not split into n rank-one factors";
        return out;
      }
      for (int i = 0; i < n; ++i)
        if (c1[i].rank != 1 || c1[i].support != std::vector{out.points[std::size_t(i)]}) {
          out.failure = "class factors do not match the support multiset";
          return out;
        }
      // Polystable representatives: order must not matter.
      auto reversed = out.points;
      std::reverse(reversed.begin(), reversed.end());
      const IsoResult same = is_isomorphic(polystable_rep(out.points), polystable_rep(reversed));
      if (same.answer != IsoAnswer::yes) {
        out.failure = "permuted polystable representatives not recognized as isomorphic";
        return out;
      }
    }
  } catch (const std::exception& e) {
    out.failure = std::string("exception: ") + e.what();
  }
  return out;
}

}  // namespace

SymnReport verify_symn(int n, int trials, std::uint64_t seed, int jobs) {
  SymnReport rep;
  rep.n = n;
  rep.trials = trials;
  std::vector<SymnTrial> slots(trials);
  parallel_trials(trials, jobs, [&](int t) { slots[t] = symn_trial(n, seed, t); });
  for (int t = 0; t < trials; ++t) {
    if (slots[t].failure) rep.failures.push_back({t, *slots[t].failure});
    rep.unstable_excluded += slots[t].unstable;
    if (slots[t].pair_semistable) ++rep.semistable_pairs;
  }
  // Distinct supports must give distinct classes: representatives across
  // consecutive trials may never be isomorphic.
  for (int t = 1; t < trials; ++t) {
    if (slots[t].points.empty() || slots[t - 1].points.empty()) continue;
    if (slots[t].points == slots[t - 1].points) continue;  // freak collision: nothing to check
    const IsoResult iso =
        is_isomorphic(polystable_rep(slots[t].points), polystable_rep(slots[t - 1].points));
    if (iso.answer != IsoAnswer::no)
      rep.failures.push_back(
          {t, "representatives over different supports not recognized as distinct"});
  }
  return rep;
}

DimensionReport verify_dimension(int r, int n, int trials, std::uint64_t seed, int jobs) {
  DimensionReport rep;
  rep.r = r;
  rep.n = n;
  rep.trials = trials;
  rep.expected_ext1 = component_dim_formula(r, n);
  struct Slot {
    MaybeFailure failure;
    std::vector<int> tries;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, jobs, [&](int t) {
    try {
      const IterateResult res = iterate_construction(r, n, mix_seed(seed, t));
      slots[t].tries = res.tries;
      const long long e1 = ext1_E_E(res.qp);
      if (e1 != rep.expected_ext1)
        slots[t].failure = "ext1 = " + std::to_string(e1) + ", expected " +
                           std::to_string(rep.expected_ext1);
    } catch (const std::exception& e) {
      slots[t].failure = std::string("exception: ") + e.what();
    }
  });
  for (int t = 0; t < trials; ++t) {
    if (slots[t].failure) rep.failures.push_back({t, *slots[t].failure});
    for (int k : slots[t].tries) ++rep.retry_histogram[k];
  }
  return rep;
}

CommvarReport commuting_variety_sample(int n, int trials, std::uint64_t seed, int jobs) {
  CommvarReport rep;
  rep.n = n;
  rep.trials = trials;
  std::vector<long long> dims(trials, -1);
  parallel_trials(trials, jobs, [&](int t) {
    Rng rng(mix_seed(seed, t));
    const QuotPoint qp = random_quot_point(n, 1, t % 2 == 0, rng.word());
    // Unit upper-triangular conjugation leaves the normal form without
    // losing exactness.
    Mat h = Mat::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) h(i, j) = Rational(int(rng.uniform(-2, 2)));
    const QuotPoint moved = conjugate(qp, h);
    dims[t] = commuting_variety_tangent(moved.A, moved.B, moved.C);
  });
  for (int t = 0; t < trials; ++t) ++rep.histogram[dims[t]];
  return rep;
}

}  // namespace qts
