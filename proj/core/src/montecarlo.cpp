#include "chaoscalc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace chaoscalc {

namespace {

// H_n(x; v): He with variance v, H_{k+1} = x H_k - k v H_{k-1}.
double hermite_var(std::size_t n, double x, double v) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (std::size_t k = 1; k < n; ++k) {
    const double next = x * cur - static_cast<double>(k) * v * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double kernel_value(const SymKernel& k, const NoiseVector& omega, const std::vector<std::vector<double>>& he) {
  const std::size_t n = k.order();
  const double step = k.grid().step();
  double sparse = 0.0;
  for (const auto& [t, c] : k.entries()) {
    double prod = c * multiplicity(t);
    std::size_t i = 0;
    while (i < t.size()) {
      std::size_t j = i;
      while (j < t.size() && t[j] == t[i]) ++j;
      prod *= he[t[i]][j - i];
      i = j;
    }
    sparse += prod;
  }
  double out = std::pow(step, 0.5 * static_cast<double>(n)) * sparse;
  for (const PrefixBlock& b : k.blocks()) {
    const double a = static_cast<double>(b.prefix) * step;
    const double x = omega.brownian(b.prefix);
    if (!b.has_cell()) {
      out += b.coef * hermite_var(n, x, a);
    } else {
      const auto j = static_cast<CellIndex>(b.cell);
      const double inside = j < b.prefix ? step : 0.0;
      out += b.coef * (hermite_var(n - 1, x, a) * omega.increment(j) -
                       static_cast<double>(n - 1) * inside * hermite_var(n - 2, x, a));
    }
  }
  return out;
}

}  // namespace

double hermite_he(std::size_t n, double x) { return hermite_var(n, x, 1.0); }

NoiseVector::NoiseVector(const Grid& grid, std::vector<double> xi) : grid_(grid), xi_(std::move(xi)) {
  if (xi_.size() != grid_.cells()) throw std::invalid_argument("noise vector needs one value per cell");
  partial_.resize(xi_.size() + 1, 0.0);
  const double rs = std::sqrt(grid_.step());
  for (std::size_t i = 0; i < xi_.size(); ++i) partial_[i + 1] = partial_[i] + rs * xi_[i];
}

double NoiseVector::increment(CellIndex i) const { return std::sqrt(grid_.step()) * xi_.at(i); }

double NoiseVector::brownian(std::size_t p) const { return partial_.at(p); }

NoiseVector sample_noise(const Grid& grid, std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::vector<double> xi(grid.cells());
  for (auto& x : xi) x = normal(rng);
  return NoiseVector(grid, std::move(xi));
}

double evaluate(const ChaosVector& phi, const NoiseVector& omega) {
  require_same_grid(phi.grid(), omega.grid(), "evaluate");
  if (phi.is_zero()) return 0.0;
  const std::size_t top = phi.max_order();
  std::vector<std::vector<double>> he(omega.xi().size(), std::vector<double>(top + 1));
  for (std::size_t i = 0; i < he.size(); ++i)
    for (std::size_t a = 0; a <= top; ++a) he[i][a] = hermite_he(a, omega.xi()[i]);
  double acc = 0.0;
  for (const auto& k : phi.components()) acc += kernel_value(k, omega, he);
  return acc;
}

double ito_oracle(const ChaosProcess& adapted, const NoiseVector& omega) {
  require_same_grid(adapted.grid(), omega.grid(), "ito_oracle");
  double acc = 0.0;
  for (std::size_t s = 0; s < adapted.cells(); ++s) {
    const ChaosVector& v = adapted.values()[s];
    for (const auto& k : v.components()) {
      const auto sup = k.support();
      if (!sup.empty() && *sup.rbegin() >= s)
        throw std::invalid_argument("ito_oracle: integrand at cell " + std::to_string(s) + " is not adapted");
    }
    acc += evaluate(v, omega) * omega.increment(static_cast<CellIndex>(s));
  }
  return acc;
}

MomentEstimate mc_moments(const std::function<double(const NoiseVector&)>& f, const Grid& grid,
                          std::size_t n_samples, std::uint64_t seed, unsigned threads) {
  if (n_samples < 2) throw std::invalid_argument("mc_moments needs at least 2 samples");
  std::vector<double> x(n_samples);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_samples)));
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) x[p] = f(sample_noise(grid, seed, p));
  };
  if (threads == 1) {
    work(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk, hi = std::min(n_samples, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  const auto n = static_cast<double>(n_samples);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double s1 = 0.0, s2 = 0.0;
  for (double v : x) {
    const double y = v - mean;
    s1 += y;
    s2 += y * y;
  }
  MomentEstimate est;
  est.samples = n_samples;
  est.mean = mean + s1 / n;
  est.variance = (s2 - s1 * s1 / n) / (n - 1.0);
  est.se_mean = std::sqrt(est.variance / n);
  if (n_samples >= 3) {
    std::vector<double> loo(n_samples);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      const double y = x[i] - mean;
      const double a1 = s1 - y, a2 = s2 - y * y;
      loo[i] = (a2 - a1 * a1 / (n - 1.0)) / (n - 2.0);
      loo_mean += loo[i];
    }
    loo_mean /= n;
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    est.se_variance = std::sqrt((n - 1.0) / n * ss);
  }
  return est;
}

MomentEstimate mc_moments(const ChaosVector& phi, std::size_t n_samples, std::uint64_t seed, unsigned threads) {
  return mc_moments([&](const NoiseVector& w) { return evaluate(phi, w); }, phi.grid(), n_samples, seed, threads);
}

}  // namespace chaoscalc
