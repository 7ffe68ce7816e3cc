#include "chaoscalc/volterra_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace chaoscalc {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr unsigned kQuadDepth = 15;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double turbulence_g(double r, double alpha, double nu) { return std::pow(r, nu - 1.0) * std::exp(-alpha * r); }

// int_s^t (u-s)^(H-3/2) (1 - (s/u)^(1/2-H)) du with u = s + w^2.
double fbm_tail_integral(double t, double s, double h) {
  const double a = 0.5 - h;
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double w2 = w * w;
    const double bracket = -std::expm1(-a * std::log1p(w2 / s));
    return 2.0 * std::pow(w, 2.0 * h - 2.0) * bracket;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, std::sqrt(t - s), kQuadDepth,
                                                                      kQuadTol);
}

}  // namespace

VolterraKernel VolterraKernel::ou(double alpha) {
  require(std::isfinite(alpha) && alpha >= 0.0, "ou kernel needs alpha >= 0");
  VolterraKernel k;
  k.kind_ = KernelKind::ou;
  k.alpha_ = alpha;
  return k;
}

VolterraKernel VolterraKernel::turbulence(double alpha, double nu) {
  require(std::isfinite(alpha) && alpha > 0.0, "turbulence kernel needs alpha > 0");
  require(std::isfinite(nu) && nu > 0.5, "turbulence kernel needs nu > 1/2");
  VolterraKernel k;
  k.kind_ = KernelKind::turbulence;
  k.alpha_ = alpha;
  k.nu_ = nu;
  return k;
}

double VolterraKernel::fbm_constant(double h) {
  return std::sqrt(2.0 * h * std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2.0 - 2.0 * h)));
}

VolterraKernel VolterraKernel::fbm(double hurst) {
  require(hurst > 0.0 && hurst < 1.0, "fbm kernel needs H in (0, 1)");
  VolterraKernel k;
  k.kind_ = KernelKind::fbm;
  k.hurst_ = hurst;
  k.fbm_c_ = fbm_constant(hurst);
  return k;
}

VolterraKernel VolterraKernel::table(const Grid& grid, std::vector<std::vector<double>> values) {
  require(values.size() == grid.cells() + 1, "table kernel needs cells+1 rows");
  for (const auto& row : values) {
    require(row.size() == grid.cells(), "table kernel rows need one value per cell");
    for (double v : row) require(std::isfinite(v), "table kernel values must be finite");
  }
  VolterraKernel k;
  k.kind_ = KernelKind::table;
  k.table_horizon_ = grid.horizon();
  k.table_cells_ = grid.cells();
  k.table_ = std::move(values);
  return k;
}

VolterraKernel VolterraKernel::from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    VolterraKernel k;
    if (kind == "ou") {
      k = ou(j.at("alpha").get<double>());
    } else if (kind == "turbulence") {
      k = turbulence(j.at("alpha").get<double>(), j.at("nu").get<double>());
    } else if (kind == "fbm") {
      k = fbm(j.at("H").get<double>());
    } else if (kind == "table") {
      auto values = j.at("values").get<std::vector<std::vector<double>>>();
      require(!values.empty(), "table kernel needs values");
      const double horizon = j.contains("T") ? j.at("T").get<double>() : 1.0;
      k = table(Grid::make(horizon, values.size() - 1), std::move(values));
    } else {
      throw std::invalid_argument("unknown kernel kind '" + kind + "'");
    }
    if (j.contains("diagonal_offset")) k = k.with_diagonal_offset(j.at("diagonal_offset").get<double>());
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("kernel config: ") + e.what());
  }
}

nlohmann::json VolterraKernel::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case KernelKind::ou:
      j = {{"kind", "ou"}, {"alpha", alpha_}};
      break;
    case KernelKind::turbulence:
      j = {{"kind", "turbulence"}, {"alpha", alpha_}, {"nu", nu_}};
      break;
    case KernelKind::fbm:
      j = {{"kind", "fbm"}, {"H", hurst_}};
      break;
    case KernelKind::table:
      j = {{"kind", "table"}, {"T", table_horizon_}, {"values", table_}};
      break;
  }
  j["diagonal_offset"] = diagonal_offset_;
  return j;
}

std::string VolterraKernel::name() const {
  switch (kind_) {
    case KernelKind::ou: return "ou";
    case KernelKind::turbulence: return "turbulence";
    case KernelKind::fbm: return "fbm";
    case KernelKind::table: return "table";
  }
  return "unknown";
}

VolterraKernel VolterraKernel::with_diagonal_offset(double offset) const {
  require(offset > 0.0 && offset < 1.0, "diagonal_offset must lie in (0, 1)");
  VolterraKernel k = *this;
  k.diagonal_offset_ = offset;
  return k;
}

bool VolterraKernel::singular_at_diagonal() const noexcept {
  switch (kind_) {
    case KernelKind::turbulence: return nu_ < 1.0;
    case KernelKind::fbm: return hurst_ < 0.5;
    default: return false;
  }
}

double VolterraKernel::singularity_exponent() const noexcept {
  switch (kind_) {
    case KernelKind::turbulence: return nu_ - 1.0;
    case KernelKind::fbm: return hurst_ - 0.5;
    default: return 0.0;
  }
}

double VolterraKernel::table_value(double t, double s) const {
  const double step = table_horizon_ / static_cast<double>(table_cells_);
  const double a = std::round(t / step);
  require(std::abs(t / step - a) <= 1e-9 * std::max(1.0, a) && a <= static_cast<double>(table_cells_),
          "table kernel is only defined at grid times");
  auto b = static_cast<std::size_t>(std::floor(s / step));
  b = std::min(b, table_cells_ - 1);
  return table_[static_cast<std::size_t>(a)][b];
}

double VolterraKernel::operator()(double t, double s) const {
  require(s >= 0.0 && s < t, "kernel evaluation needs 0 <= s < t");
  const double r = t - s;
  switch (kind_) {
    case KernelKind::ou:
      return std::exp(-alpha_ * r);
    case KernelKind::turbulence:
      return turbulence_g(r, alpha_, nu_);
    case KernelKind::fbm: {
      if (hurst_ == 0.5) return 1.0;
      require(s > 0.0, "fbm kernel is singular at s = 0");
      return fbm_c_ * std::pow(r, hurst_ - 0.5) + fbm_c_ * (0.5 - hurst_) * fbm_tail_integral(t, s, hurst_);
    }
    case KernelKind::table:
      return table_value(t, s);
  }
  return 0.0;
}

double VolterraKernel::density(double u, double s) const {
  require(s >= 0.0 && s < u, "kernel density needs 0 <= s < u");
  const double r = u - s;
  switch (kind_) {
    case KernelKind::ou:
      return -alpha_ * std::exp(-alpha_ * r);
    case KernelKind::turbulence:
      return turbulence_g(r, alpha_, nu_) * ((nu_ - 1.0) / r - alpha_);
    case KernelKind::fbm:
      if (hurst_ == 0.5) return 0.0;
      return fbm_c_ * (hurst_ - 0.5) * std::pow(r, hurst_ - 1.5) * std::pow(s / u, 0.5 - hurst_);
    case KernelKind::table: {
      const double step = table_horizon_ / static_cast<double>(table_cells_);
      const double lo = std::max(s + 1e-12, u - 0.5 * step);
      const double hi = std::min(table_horizon_, u + 0.5 * step);
      const double a = std::round(lo / step) * step, b = std::round(hi / step) * step;
      if (!(b > a) || !(a > s)) return 0.0;
      return (table_value(b, s) - table_value(a, s)) / (b - a);
    }
  }
  return 0.0;
}

double VolterraKernel::variation(double s, double lo, double hi) const {
  require(s < lo && lo <= hi, "variation needs s < lo <= hi");
  const double g_lo = (*this)(lo, s);
  const double g_hi = (*this)(hi, s);
  if (kind_ == KernelKind::turbulence && nu_ > 1.0) {
    const double peak = s + (nu_ - 1.0) / alpha_;
    if (peak > lo && peak < hi) {
      const double g_peak = (*this)(peak, s);
      return std::abs(g_peak - g_lo) + std::abs(g_hi - g_peak);
    }
  }
  if (kind_ == KernelKind::table) {
    const double step = table_horizon_ / static_cast<double>(table_cells_);
    const auto a0 = static_cast<std::size_t>(std::llround(lo / step));
    const auto a1 = static_cast<std::size_t>(std::llround(hi / step));
    const auto b = std::min(static_cast<std::size_t>(std::floor(s / step)), table_cells_ - 1);
    double acc = 0.0;
    for (std::size_t a = a0; a < a1; ++a) acc += std::abs(table_[a + 1][b] - table_[a][b]);
    return acc;
  }
  return std::abs(g_hi - g_lo);
}

KernelValue kernel_eval(const VolterraKernel& k, const Grid& grid, double t, double s) {
  require(s >= 0.0 && s < t, "kernel_eval needs 0 <= s < t");
  require(t <= grid.horizon() * (1.0 + 1e-12), "kernel_eval: t beyond horizon");
  KernelValue out;
  const double gap = k.diagonal_offset() * grid.step();
  if (k.singular_at_diagonal() && t - s < gap) {
    s = t - gap;
    out.clipped = true;
  }
  out.value = k(t, s);
  return out;
}

KernelMeasure kernel_measure(const VolterraKernel& k, const Grid& grid, double s, double u_lo, double u_hi) {
  const std::size_t lo = grid.boundary_index(u_lo);
  const std::size_t hi = grid.boundary_index(u_hi);
  require(lo <= hi, "kernel_measure: empty interval");
  require(grid.point(lo) > s, "kernel_measure: interval must start after s");
  KernelMeasure m;
  m.weights.reserve(hi - lo);
  double prev = k(grid.point(lo), s);
  for (std::size_t c = lo; c < hi; ++c) {
    const double next = k(grid.point(c + 1), s);
    m.weights.emplace_back(static_cast<CellIndex>(c), next - prev);
    m.total_variation += k.variation(s, grid.point(c), grid.point(c + 1));
    prev = next;
  }
  return m;
}

}  // namespace chaoscalc
