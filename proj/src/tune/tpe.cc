/*
 * Copyright 2026 The gbbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gbbench/error.h"
#include "gbbench/random.h"
#include "gbbench/tune.h"

namespace gbbench {

TpeSplit TpeSplitHistory(const TuningHistory& history, double alpha) {
  if (history.trials.empty()) Fail(ErrorCode::kParameter, "empty tuning history");
  if (!(alpha > 0.0 && alpha < 1.0)) Fail(ErrorCode::kParameter, "alpha must lie in (0, 1)");
  const size_t n = history.trials.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return history.trials[a].score < history.trials[b].score;
  });
  const size_t n_good =
      std::min(n, static_cast<size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9)));
  TpeSplit out;
  out.good.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_good));
  out.bad.assign(order.begin() + static_cast<std::ptrdiff_t>(n_good), order.end());
  std::sort(out.bad.begin(), out.bad.end());
  return out;
}

namespace {

double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Parzen mixture over one continuous dimension, in the (possibly log)
// working domain [lo, hi]: one truncated gaussian per observation plus a
// uniform prior component, all equally weighted.
class ParzenMixture {
 public:
  ParzenMixture(std::vector<double> points, double lo, double hi) : lo_(lo), hi_(hi) {
    std::sort(points.begin(), points.end());
    mu_ = points;
    const double floor = (hi - lo) / 100.0;
    for (size_t i = 0; i < mu_.size(); ++i) {
      const double left = i == 0 ? lo : mu_[i - 1];
      const double right = i + 1 == mu_.size() ? hi : mu_[i + 1];
      double sigma = std::max(mu_[i] - left, right - mu_[i]);
      sigma = std::clamp(sigma, floor, hi - lo);
      sigma_.push_back(sigma);
      mass_.push_back(Phi((hi - mu_[i]) / sigma) - Phi((lo - mu_[i]) / sigma));
    }
  }

  double Density(double x) const {
    double d = 1.0 / (hi_ - lo_);
    for (size_t i = 0; i < mu_.size(); ++i) {
      const double z = (x - mu_[i]) / sigma_[i];
      d += std::exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * sigma_[i] * mass_[i]);
    }
    return d / static_cast<double>(mu_.size() + 1);
  }

  double Sample(Rng& rng) const {
    const size_t k = rng.UniformInt(mu_.size() + 1);
    if (k == mu_.size()) return rng.Uniform(lo_, hi_);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double x = mu_[k] + sigma_[k] * rng.Normal();
      if (x >= lo_ && x < hi_) return x;
    }
    return std::clamp(mu_[k], lo_, std::nextafter(hi_, lo_));
  }

 private:
  double lo_;
  double hi_;
  std::vector<double> mu_;
  std::vector<double> sigma_;
  std::vector<double> mass_;
};

// Count-plus-one smoothed categorical over choice positions.
std::vector<double> ChoiceWeights(const ParamSpec& p, const TuningHistory& h,
                                  const std::vector<size_t>& trials) {
  std::vector<double> w(p.choices.size(), 1.0);
  for (size_t t : trials) {
    const double v = h.trials[t].config.at(p.name);
    const auto it = std::find(p.choices.begin(), p.choices.end(), v);
    if (it != p.choices.end()) w[static_cast<size_t>(it - p.choices.begin())] += 1.0;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

size_t SampleIndex(const std::vector<double>& weights, Rng& rng) {
  double u = rng.Uniform();
  for (size_t i = 0; i + 1 < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

}  // namespace

ParamConfig TpeSuggest(const SearchSpace& space, const TuningHistory& history,
                       const TpeOptions& options, uint64_t seed) {
  space.Validate();
  if (options.n_candidates < 1) Fail(ErrorCode::kParameter, "n_candidates must be >= 1");
  if (static_cast<int>(history.trials.size()) < std::max(1, options.n_startup)) {
    return SampleRandom(space, seed);
  }
  const TpeSplit split = TpeSplitHistory(history, options.alpha);
  Rng rng(seed);
  const size_t num_candidates = static_cast<size_t>(options.n_candidates);
  std::vector<ParamConfig> candidates(num_candidates);
  std::vector<double> log_ratio(num_candidates, 0.0);

  for (const ParamSpec& p : space.params) {
    if (p.kind == ParamSpec::Kind::kChoice) {
      const auto l = ChoiceWeights(p, history, split.good);
      const auto g = ChoiceWeights(p, history, split.bad);
      for (size_t c = 0; c < num_candidates; ++c) {
        const size_t k = SampleIndex(l, rng);
        candidates[c][p.name] = p.choices[k];
        log_ratio[c] += std::log(l[k]) - std::log(g[k]);
      }
      continue;
    }
    const bool log_domain = p.kind == ParamSpec::Kind::kLogUniform;
    const double lo = log_domain ? std::log(p.lo) : p.lo;
    const double hi = log_domain ? std::log(p.hi) : p.hi;
    auto points = [&](const std::vector<size_t>& trials) {
      std::vector<double> out;
      for (size_t t : trials) {
        const double v = history.trials[t].config.at(p.name);
        out.push_back(std::clamp(log_domain ? std::log(v) : v, lo, hi));
      }
      return out;
    };
    const ParzenMixture l(points(split.good), lo, hi);
    const ParzenMixture g(points(split.bad), lo, hi);
    for (size_t c = 0; c < num_candidates; ++c) {
      const double x = l.Sample(rng);
      double v = log_domain ? std::exp(x) : x;
      if (v >= p.hi) v = std::nextafter(p.hi, p.lo);
      v = std::max(v, p.lo);
      candidates[c][p.name] = v;
      log_ratio[c] += std::log(l.Density(x)) - std::log(g.Density(x));
    }
  }
  const size_t best =
      static_cast<size_t>(std::max_element(log_ratio.begin(), log_ratio.end()) - log_ratio.begin());
  return candidates[best];
}

}  // namespace gbbench
