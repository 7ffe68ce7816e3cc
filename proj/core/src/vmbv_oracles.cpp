#include "chaoscalc/vmbv_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace chaoscalc {

namespace {

constexpr double kEnumerationCap = 2.0e6;

// Scalar K_g data, computed straight from kernel_eval.
struct KernelTable {
  std::size_t cells = 0;
  std::vector<double> edge;
  std::vector<std::vector<double>> w;  // w[i][k], zero unless k > i
};

KernelTable kernel_table(const VolterraKernel& k, const Grid& grid, double t) {
  KernelTable kt;
  kt.cells = grid.boundary_index(t);
  if (kt.cells == 0 || t > grid.horizon() * (1.0 + 1e-12)) throw std::invalid_argument("oracle: bad t");
  kt.edge.resize(kt.cells);
  kt.w.assign(kt.cells, std::vector<double>(kt.cells, 0.0));
  for (std::size_t i = 0; i < kt.cells; ++i) {
    const double s = (static_cast<double>(i) + k.diagonal_offset()) * grid.step();
    kt.edge[i] = kernel_eval(k, grid, grid.point(i + 1), s).value;
    double prev = kt.edge[i];
    for (std::size_t c = i + 1; c < kt.cells; ++c) {
      const double next = kernel_eval(k, grid, grid.point(c + 1), s).value;
      kt.w[i][c] = next - prev;
      prev = next;
    }
  }
  return kt;
}

double kernel_value(const ChaosVector& v, std::size_t order, const Tuple& x) {
  if (order >= v.size()) return 0.0;
  return v.components()[order].value_at(x);
}

// K_g(Phi^{(r)})(t, s_i) at the sorted tuple x.
double kg_at(const KernelTable& kt, const ChaosProcess& phi, std::size_t i, std::size_t r, const Tuple& x) {
  double acc = kt.edge[i] * kernel_value(phi.values()[i], r, x);
  for (std::size_t c = i + 1; c < kt.cells; ++c)
    if (kt.w[i][c] != 0.0) acc += kt.w[i][c] * kernel_value(phi.values()[c], r, x);
  return acc;
}

Tuple without_position(const Tuple& u, std::size_t l) {
  Tuple x;
  x.reserve(u.size() - 1);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (i != l) x.push_back(u[i]);
  return x;
}

// Sym(F (x) G)(x) as the average over position subsets S of size |F|.
template <class F, class G>
double sym_product_at(const Tuple& x, std::size_t nf, F&& f, G&& g) {
  const std::size_t n = x.size();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(nf), true);
  double acc = 0.0;
  std::size_t count = 0;
  do {
    Tuple a, b;
    for (std::size_t i = 0; i < n; ++i) (mask[i] ? a : b).push_back(x[i]);
    acc += f(a) * g(b);
    ++count;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return acc / static_cast<double>(count);
}

void check_enumerable(std::size_t order, std::size_t cells) {
  if (multiset_count(order, cells) > kEnumerationCap)
    throw std::length_error("oracle: too many multisets to enumerate");
}

ChaosVector assemble(const Grid& grid, std::size_t top,
                     const std::function<double(std::size_t, const Tuple&)>& value) {
  std::vector<SymKernel> comps;
  for (std::size_t n = 0; n <= top; ++n) {
    check_enumerable(n, grid.cells());
    SymKernelBuilder b(n, grid);
    for_each_multiset(n, grid.cells(), [&](const Tuple& u) { b.add_entry(u, value(n, u)); });
    comps.push_back(std::move(b).build());
  }
  return ChaosVector(grid, std::move(comps));
}

}  // namespace

ChaosVector chaos_formula_oracle(const ChaosProcess& phi, const VolterraKernel& k, double t) {
  const Grid& grid = phi.grid();
  const KernelTable kt = kernel_table(k, grid, t);
  const double step = grid.step();
  const std::size_t top = phi.max_order() + 1;
  return assemble(grid, top, [&](std::size_t n, const Tuple& u) {
    double skor = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      if (u[l] < kt.cells) skor += kg_at(kt, phi, u[l], n - 1, without_position(u, l));
    if (n > 0) skor /= static_cast<double>(n);
    double drift = 0.0;
    for (std::size_t s = 0; s < kt.cells; ++s) {
      Tuple us = u;
      us.insert(std::upper_bound(us.begin(), us.end(), static_cast<CellIndex>(s)), static_cast<CellIndex>(s));
      drift += kg_at(kt, phi, s, n + 1, us);
    }
    return skor + static_cast<double>(n + 1) * step * drift;
  });
}

ChaosVector chaos_formula_oracle_wick(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k,
                                      double t) {
  const Grid& grid = phi.grid();
  require_same_grid(grid, vol.grid(), "oracle");
  const KernelTable kt = kernel_table(k, grid, t);
  const double step = grid.step();
  const std::size_t pmax = phi.max_order();
  const std::size_t vmax = vol.max_order();

  // (K_g(Phi)(t,s) <> Sigma(s))^{(r)} at x.
  auto wick_at = [&](std::size_t s, std::size_t r, const Tuple& x) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= std::min(r, vmax); ++m) {
      if (r - m > pmax) continue;
      acc += sym_product_at(
          x, r - m, [&](const Tuple& a) { return kg_at(kt, phi, s, r - m, a); },
          [&](const Tuple& b) { return kernel_value(vol.values()[s], m, b); });
    }
    return acc;
  };
  // (D_s K_g(Phi)(t,s) <> Sigma(s))^{(r)} at x.
  auto drift_at = [&](std::size_t s, std::size_t r, const Tuple& x) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= std::min(r, vmax); ++m) {
      const std::size_t q = r - m + 1;
      if (q > pmax) continue;
      acc += static_cast<double>(q) *
             sym_product_at(
                 x, r - m,
                 [&](const Tuple& a) {
                   Tuple as = a;
                   as.insert(std::upper_bound(as.begin(), as.end(), static_cast<CellIndex>(s)),
                             static_cast<CellIndex>(s));
                   return kg_at(kt, phi, s, q, as);
                 },
                 [&](const Tuple& b) { return kernel_value(vol.values()[s], m, b); });
    }
    return acc;
  };

  const std::size_t top = pmax + vmax + 1;
  return assemble(grid, top, [&](std::size_t n, const Tuple& u) {
    double skor = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      if (u[l] < kt.cells) skor += wick_at(u[l], n - 1, without_position(u, l));
    if (n > 0) skor /= static_cast<double>(n);
    double drift = 0.0;
    for (std::size_t s = 0; s < kt.cells; ++s) drift += drift_at(s, n, u);
    return skor + step * drift;
  });
}

double s_transform_oracle(const ChaosProcess& phi, const VolterraKernel& k, double t, const TestFunctionXi& xi,
                          const ChaosProcess* vol) {
  const Grid& grid = phi.grid();
  require_same_grid(grid, xi.grid(), "s_transform_oracle");
  if (vol) require_same_grid(grid, vol->grid(), "s_transform_oracle");
  const KernelTable kt = kernel_table(k, grid, t);
  const std::size_t m = kt.cells;
  const double step = grid.step();

  std::vector<double> s_phi(m);
  for (std::size_t u = 0; u < m; ++u) s_phi[u] = s_transform(phi.values()[u], xi);
  // frechet[u][s] = S(D_s Phi(u))(xi)
  std::vector<std::vector<double>> frechet(m, std::vector<double>(m));
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t s = 0; s < m; ++s)
      frechet[u][s] = s_transform_frechet(phi.values()[u], xi, static_cast<CellIndex>(s));

  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double kg_s = kt.edge[i] * s_phi[i];
    double kg_d = kt.edge[i] * frechet[i][i];
    for (std::size_t c = i + 1; c < m; ++c) {
      kg_s += kt.w[i][c] * s_phi[c];
      kg_d += kt.w[i][c] * frechet[c][i];
    }
    const double sv = vol ? s_transform(vol->values()[i], xi) : 1.0;
    acc += step * (kg_s * xi[static_cast<CellIndex>(i)] + kg_d) * sv;
  }
  return acc;
}

std::vector<StabilityRow> stability_suite(const ChaosProcess& phi, const ChaosProcess& psi, const VolterraKernel& k,
                                          double t, double lambda, double epsilon, std::size_t n_max, Modulation m,
                                          const ChaosProcess* vol) {
  const double index = -lambda - epsilon - (m == Modulation::wick ? 0.5 : 0.0);
  VmbvOptions opt;
  opt.lambda = lambda;
  const ChaosVector base = integrate(m, phi, vol, k, t, opt).value;
  const double psi_norm = gnorm(integrate(m, psi, vol, k, t, opt).value, index);
  std::vector<StabilityRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const ChaosProcess phi_n = phi + psi.scaled(1.0 / static_cast<double>(n));
    const ChaosVector diff = integrate(m, phi_n, vol, k, t, opt).value - base;
    rows.push_back({n, gnorm(diff, index), psi_norm / static_cast<double>(n)});
  }
  return rows;
}

}  // namespace chaoscalc
