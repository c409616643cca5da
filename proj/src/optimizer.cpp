#include "stad/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stad {

namespace {

// Hand-rolled draws keep runs reproducible regardless of the standard
// library's distribution internals.
double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

struct Memo {
  const ObjectiveContext& ctx;
  std::vector<double> value;
  std::vector<uint8_t> seen;
  int evaluations = 0;
  int budget;

  Memo(const ObjectiveContext& c, int b)
      : ctx(c), value(c.domain_max() + 1), seen(c.domain_max() + 1, 0), budget(b) {}

  bool known(int i) const { return seen[i] != 0; }
  bool exhausted() const { return evaluations >= budget; }
  double get(int i) {
    if (!seen[i]) {
      value[i] = ctx.evaluate(i);
      seen[i] = 1;
      ++evaluations;
    }
    return value[i];
  }

  OptimizationResult result(std::uint64_t seed, double t0) const {
    OptimizationResult res;
    res.seed = seed;
    res.evaluations = evaluations;
    res.initial_temperature = t0;
    res.best_i = -1;
    for (int i = 0; i < static_cast<int>(value.size()); ++i) {
      if (!seen[i]) continue;
      res.trace.points.push_back({i, value[i]});
      if (res.best_i < 0 || value[i] > res.best_r) {
        res.best_i = i;
        res.best_r = value[i];
        res.trace.argmax = res.trace.points.size() - 1;
      }
    }
    return res;
  }
};

void check(const AnnealSchedule& s) {
  if (s.evaluation_budget < 10)
    throw ConfigError("evaluation budget must be >= 10");
  if (!(s.cooling_ratio > 0.0 && s.cooling_ratio < 1.0))
    throw ConfigError("cooling ratio must be in (0, 1)");
  if (s.steps_per_temperature < 1)
    throw ConfigError("steps per temperature must be >= 1");
  if (s.initial_temperature < 0.0)
    throw ConfigError("initial temperature must be positive (or 0 for auto)");
}

}  // namespace

OptimizationResult anneal(const ObjectiveContext& ctx,
                          const AnnealSchedule& schedule) {
  check(schedule);
  const int domain_max = ctx.domain_max();
  const int domain_size = domain_max + 1;
  Memo memo(ctx, schedule.evaluation_budget);
  std::mt19937_64 rng(schedule.seed);

  if (schedule.evaluation_budget >= domain_size) {
    for (int i = 0; i <= domain_max; ++i) memo.get(i);
    return memo.result(schedule.seed, schedule.initial_temperature);
  }

  auto propose = [&](int from, double sigma) {
    const long long step = std::llround(gaussian(rng) * sigma);
    return static_cast<int>(
        std::clamp<long long>(from + step, 0, domain_max));
  };

  int cur = 0;
  double cur_r = memo.get(cur);  // the tree itself is always scored first

  // Warm-up probe: full-width proposals calibrate the temperature so the
  // early acceptance rate lands at >= 0.8.
  double t0 = schedule.initial_temperature;
  {
    double uphill_sum = 0.0;
    int uphill = 0;
    for (int p = 0; p < 20 && !memo.exhausted(); ++p) {
      const int cand = propose(cur, domain_max);
      const double r = memo.get(cand);
      if (r < cur_r) {
        uphill_sum += cur_r - r;
        ++uphill;
      }
    }
    if (t0 <= 0.0)
      t0 = uphill > 0 ? (uphill_sum / uphill) / std::log(1.0 / 0.8) : 1e-3;
  }

  double temperature = t0;
  const double floor = t0 * 1e-12;
  const long long step_cap = 200LL * schedule.evaluation_budget;
  int steps = 0;
  for (long long total = 0; total < step_cap; ++total) {
    if (memo.exhausted()) break;
    const double sigma = std::max(1.0, (temperature / t0) * domain_size);
    const int cand = propose(cur, sigma);
    if (cand != cur) {
      const double cand_r = memo.get(cand);
      const double delta_energy = cur_r - cand_r;
      if (delta_energy <= 0.0 ||
          uniform01(rng) < std::exp(-delta_energy / temperature)) {
        cur = cand;
        cur_r = cand_r;
      }
    }
    if (++steps >= schedule.steps_per_temperature) {
      steps = 0;
      temperature = std::max(temperature * schedule.cooling_ratio, floor);
    }
  }

  // Leftover budget that covers every unseen point turns the search exact.
  int unseen = 0;
  for (uint8_t s : memo.seen)
    if (!s) ++unseen;
  if (unseen > 0 && memo.budget - memo.evaluations >= unseen)
    for (int i = 0; i <= domain_max; ++i) memo.get(i);

  return memo.result(schedule.seed, t0);
}

OptimizationResult brute_force_optimum(const ObjectiveContext& ctx,
                                       int evaluation_cap) {
  const int domain_size = ctx.domain_max() + 1;
  if (domain_size > evaluation_cap)
    throw ConfigError("domain of " + std::to_string(domain_size) +
                      " edge counts exceeds the exhaustive cap of " +
                      std::to_string(evaluation_cap) +
                      "; raise the cap or use the annealer");
  Memo memo(ctx, domain_size);
  for (int i = 0; i < domain_size; ++i) memo.get(i);
  return memo.result(0, 0.0);
}

}  // namespace stad
