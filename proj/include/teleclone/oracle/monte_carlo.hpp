#pragma once

// Monte-Carlo integration of quasi-distributions by importance sampling from
// their Gaussian kernel. Sample i always uses the same random numbers (a
// counter-based generator keyed by seed and i), and shard sums are combined in
// a fixed order, so estimates do not depend on the worker count.

#include "teleclone/wigner.hpp"

#include <cstdint>
#include <functional>
#include <numbers>
#include <string_view>
#include <thread>
#include <vector>

namespace teleclone::oracle {

inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter+box-muller";
inline constexpr std::size_t kDefaultSamples = 1'000'000;
inline constexpr std::size_t kShards = 64;

/// Stateless generator: value(k) = splitmix64 finaliser of (key + k * golden).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * 0x9e3779b97f4a7c15ULL); }

  /// Uniform in (0, 1).
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal number j of sample i (dim normals per sample).
  void normals(std::uint64_t sample, std::size_t dim, double* out) const {
    const std::uint64_t base = sample * static_cast<std::uint64_t>(dim + dim % 2);
    for (std::size_t j = 0; j < dim; j += 2) {
      const double u1 = uniform(base + j);
      const double u2 = uniform(base + j + 1);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      const double ang = 2.0 * std::numbers::pi * u2;
      out[j] = rad * std::cos(ang);
      if (j + 1 < dim) out[j + 1] = rad * std::sin(ang);
    }
  }

 private:
  std::uint64_t key_;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::string_view algorithm = kRngAlgorithm;
};

struct McOptions {
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// scale * E_{y ~ N(0, gamma)}[P(y) f(mu + y)], i.e. the integral of W * f.
inline McEstimate mc_expectation(const PolyGaussian& w, const std::function<double(const Vector&)>& f,
                                 const McOptions& opt) {
  detail::require(opt.samples >= 1000, "mc_integral: need at least 1000 samples");
  const auto dim = static_cast<Eigen::Index>(w.num_vars());
  const Eigen::LLT<Matrix> llt(w.gamma());
  const Matrix chol = llt.matrixL();
  const CounterRng rng(opt.seed);

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    bool finite = true;
  };
  std::vector<Partial> partial(kShards);
  auto run_shard = [&](std::size_t shard) {
    const std::size_t begin = opt.samples * shard / kShards;
    const std::size_t end = opt.samples * (shard + 1) / kShards;
    Vector z(dim);
    std::vector<double> yv(static_cast<std::size_t>(dim));
    Partial acc;
    for (std::size_t i = begin; i < end; ++i) {
      rng.normals(i, static_cast<std::size_t>(dim), z.data());
      const Vector y = chol * z;
      std::copy(y.data(), y.data() + dim, yv.begin());
      const double v = w.scale() * w.poly().evaluate(yv) * f(w.mu() + y);
      if (!std::isfinite(v)) acc.finite = false;
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[shard] = acc;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, kShards));
  if (workers == 1) {
    for (std::size_t s = 0; s < kShards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t s = t; s < kShards; s += workers) run_shard(s);
      });
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partial) {
    detail::require(p.finite, "mc_integral: non-finite sample value");
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto n = static_cast<double>(opt.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / (n - 1.0)), opt.samples, kRngAlgorithm};
}

/// Estimate of trace(w).
inline McEstimate mc_integral(const PolyGaussian& w, const McOptions& opt = {}) {
  return mc_expectation(w, [](const Vector&) { return 1.0; }, opt);
}

/// Estimate of (4 pi)^N * integral of w1 w2.
inline McEstimate mc_overlap(const PolyGaussian& w1, const PolyGaussian& w2, const McOptions& opt = {}) {
  detail::require(w1.num_vars() == w2.num_vars(), "mc_overlap: mode counts differ");
  const double pref = std::pow(kWignerOverlapPrefactor, static_cast<double>(w1.num_modes()));
  McEstimate e = mc_expectation(
      w1,
      [&](const Vector& xi) {
        std::vector<double> pt(xi.data(), xi.data() + xi.size());
        return evaluate(w2, pt);
      },
      opt);
  e.estimate *= pref;
  e.std_error *= pref;
  return e;
}

/// Fidelity of the law of eta = a xi with a single-mode target, sampled on the
/// joint distribution without forming the pushforward.
inline McEstimate mc_output_overlap(const PolyGaussian& joint, const Matrix& a, const PolyGaussian& target,
                                    const McOptions& opt = {}) {
  detail::require(a.rows() == static_cast<Eigen::Index>(target.num_vars()) &&
                      a.cols() == static_cast<Eigen::Index>(joint.num_vars()),
                  "mc_output_overlap: map shape mismatch");
  const double pref = std::pow(kWignerOverlapPrefactor, static_cast<double>(target.num_modes()));
  McEstimate e = mc_expectation(
      joint,
      [&](const Vector& xi) {
        const Vector eta = a * xi;
        std::vector<double> pt(eta.data(), eta.data() + eta.size());
        return evaluate(target, pt);
      },
      opt);
  e.estimate *= pref;
  e.std_error *= pref;
  return e;
}

}  // namespace teleclone::oracle
