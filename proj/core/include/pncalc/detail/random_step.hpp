#pragma once

#include <algorithm>
#include <random>
#include <vector>

namespace pncalc {

template <class Rng>
DistFn random_dyadic_step(Rng& rng, std::size_t max_breakpoints) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_breakpoints));
  std::uniform_int_distribution<int> lattice(0, 32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t k = count(rng);
  std::vector<double> bps;
  while (bps.size() < k) {
    const double b = lattice(rng) / 8.0;
    if (std::find(bps.begin(), bps.end(), b) == bps.end()) bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());

  std::vector<double> levels(k);
  for (double& v : levels) v = unit(rng);
  std::sort(levels.begin(), levels.end());
  // Half of the samples reach 1 so both D+ and non-D+ operands show up.
  if (unit(rng) < 0.5) levels.back() = 1.0;
  levels.insert(levels.begin(), 0.0);
  return DistFn::step(std::move(bps), std::move(levels));
}

}  // namespace pncalc
