#include "spacsim/wigner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "spacsim/errors.hpp"
#include "spacsim/special_functions.hpp"

namespace spacsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Integer power by repeated multiplication: std::pow(complex, exponent)
// goes through exp/log and turns 0^0 into NaN.
std::complex<double> int_pow(std::complex<double> base, int exponent) {
  std::complex<double> out{1.0, 0.0};
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace

void WignerGridSpec::validate() const {
  if (!std::isfinite(extent) || extent <= 0.0)
    throw InvalidParams("Wigner grid extent must be positive and finite");
  if (points < 2)
    throw InvalidParams("Wigner grid needs at least 2 points per axis");
}

std::vector<double> WignerGridSpec::axis() const {
  validate();
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double step = 2.0 * extent / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    xs[static_cast<std::size_t>(i)] = -extent + static_cast<double>(i) * step;
  xs.back() = extent;
  return xs;
}

double WignerGrid::grid_integral() const {
  if (re_axis.size() < 2 || im_axis.size() < 2) return 0.0;
  const double dx = re_axis[1] - re_axis[0];
  const double dy = im_axis[1] - im_axis[0];
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * dx * dy;
}

std::complex<double> wigner_basis(int n, int m, std::complex<double> alpha) {
  if (m < 0 || n < m)
    throw InvalidParams("wigner_basis expects 0 <= m <= n");
  const int d = n - m;
  const double r2 = std::norm(alpha);

  double ratio = 1.0;  // sqrt(m!/n!) as a running product, overflow-free
  for (int k = m + 1; k <= n; ++k) ratio /= static_cast<double>(k);
  ratio = std::sqrt(ratio);

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double lag = std::assoc_laguerre(static_cast<unsigned>(m),
                                         static_cast<unsigned>(d), 4.0 * r2);
  const double radial =
      (2.0 / kPi) * sign * std::ldexp(ratio, d) * std::exp(-2.0 * r2) * lag;
  return radial * int_pow(std::conj(alpha), d);
}

namespace {

// Bivariate quadratic least-squares fit on the 3x3 stencil around (i0, j0);
// returns false when the stencil leaves the grid or the paraboloid is not
// convex (saddle / ridge), in which case the grid minimum stands.
bool refine_minimum(const WignerGrid& g, std::size_t i0, std::size_t j0,
                    double& out_value, std::pair<double, double>& out_loc) {
  const std::size_t nx = g.re_axis.size(), ny = g.im_axis.size();
  if (i0 == 0 || j0 == 0 || i0 + 1 >= nx || j0 + 1 >= ny) return false;

  Eigen::Matrix<double, 9, 6> A;
  Eigen::Matrix<double, 9, 1> b;
  int row = 0;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      const double u = static_cast<double>(di);  // cell-local coordinates
      const double v = static_cast<double>(dj);
      A.row(row) << 1.0, u, v, u * u, u * v, v * v;
      b(row) = g.at(i0 + static_cast<std::size_t>(di + 1) - 1,
                    j0 + static_cast<std::size_t>(dj + 1) - 1);
      ++row;
    }
  }
  const Eigen::Matrix<double, 6, 1> c =
      A.colPivHouseholderQr().solve(b);  // w = c0 + c1 u + c2 v + c3 u^2 + ...

  // Stationary point of the fitted quadratic.
  const double det = 4.0 * c(3) * c(5) - c(4) * c(4);
  if (det <= 0.0 || c(3) <= 0.0) return false;  // not a strict minimum
  const double u0 = (-2.0 * c(5) * c(1) + c(4) * c(2)) / det;
  const double v0 = (-2.0 * c(3) * c(2) + c(4) * c(1)) / det;
  if (std::abs(u0) > 1.0 || std::abs(v0) > 1.0) return false;  // left the cell

  const double w0 = c(0) + c(1) * u0 + c(2) * v0 + c(3) * u0 * u0 +
                    c(4) * u0 * v0 + c(5) * v0 * v0;
  const double dx = g.re_axis[1] - g.re_axis[0];
  const double dy = g.im_axis[1] - g.im_axis[0];
  out_value = w0;
  out_loc = {g.re_axis[i0] + u0 * dx, g.im_axis[j0] + v0 * dy};
  return true;
}

}  // namespace

WignerGrid evaluate_grid(const DensityMatrix& rho, const WignerGridSpec& spec) {
  spec.validate();
  const int n_max = rho.n_max;
  if (n_max < 1) throw InvalidParams("evaluate_grid: empty density matrix");

  WignerGrid grid;
  grid.re_axis = spec.axis();
  grid.im_axis = grid.re_axis;
  const std::size_t nx = grid.re_axis.size(), ny = grid.im_axis.size();
  grid.values.assign(nx * ny, 0.0);

  double max_imag = 0.0;
  std::size_t min_i = 0, min_j = 0;
  double min_v = std::numeric_limits<double>::infinity();
  double max_v = -std::numeric_limits<double>::infinity();
  std::size_t max_i = 0, max_j = 0;

  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::complex<double> alpha{grid.re_axis[i], grid.im_axis[j]};
      double w = 0.0;                    // paired 2*Re accumulation: exact real
      std::complex<double> full{0.0};    // full double sum, for the residue
      for (int n = 0; n < n_max; ++n) {
        const std::complex<double> wnn = wigner_basis(n, n, alpha);
        w += rho.entries(n, n).real() * wnn.real();
        full += rho.entries(n, n) * wnn;
        for (int m = 0; m < n; ++m) {
          const std::complex<double> wnm = wigner_basis(n, m, alpha);
          const std::complex<double> rnm = rho.entries(n, m);
          w += 2.0 * (rnm.real() * wnm.real() - rnm.imag() * wnm.imag());
          full += rnm * wnm + rho.entries(m, n) * std::conj(wnm);
        }
      }
      max_imag = std::max(max_imag, std::abs(full.imag()));
      grid.values[i * ny + j] = w;
      if (w < min_v) {
        min_v = w;
        min_i = i;
        min_j = j;
      }
      if (w > max_v) {
        max_v = w;
        max_i = i;
        max_j = j;
      }
    }
  }

  grid.max_imag_residue = max_imag;
  grid.min_value = min_v;
  grid.min_location = {grid.re_axis[min_i], grid.im_axis[min_j]};
  grid.max_value = max_v;
  grid.max_location = {grid.re_axis[max_i], grid.im_axis[max_j]};

  grid.refined_min_value = grid.min_value;
  grid.refined_min_location = grid.min_location;
  double rv;
  std::pair<double, double> rl;
  if (refine_minimum(grid, min_i, min_j, rv, rl)) {
    grid.refined_min_value = rv;
    grid.refined_min_location = rl;
  }
  return grid;
}

std::vector<std::complex<double>> ideal_spacs_coefficients(
    std::complex<double> alpha, int n_max) {
  if (n_max < 2)
    throw InvalidParams("photon-added state needs n_max >= 2");
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n_max),
                                      std::complex<double>{0.0});
  for (int n = 1; n < n_max; ++n) {
    // sqrt(n) alpha^{n-1} / sqrt((n-1)!)
    c[static_cast<std::size_t>(n)] = std::sqrt(static_cast<double>(n)) *
                                     int_pow(alpha, n - 1) /
                                     std::sqrt(factorial(n - 1));
  }
  double norm2 = 0.0;
  for (const auto& v : c) norm2 += std::norm(v);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : c) v *= inv;
  return c;
}

DensityMatrix ideal_spacs(std::complex<double> alpha, int n_max) {
  const auto c = ideal_spacs_coefficients(alpha, n_max);
  DensityMatrix rho;
  rho.n_max = n_max;
  rho.raw_trace = 1.0;
  rho.entries.resize(n_max, n_max);
  for (int n = 0; n < n_max; ++n)
    for (int m = 0; m < n_max; ++m)
      rho.entries(n, m) = c[static_cast<std::size_t>(n)] *
                          std::conj(c[static_cast<std::size_t>(m)]);
  rho.meta.method = "ideal-state";
  return rho;
}

double fidelity(const DensityMatrix& rho,
                std::span<const std::complex<double>> reference) {
  if (static_cast<int>(reference.size()) != rho.n_max)
    throw InvalidParams("fidelity: reference truncation mismatch");
  Eigen::VectorXcd psi(rho.n_max);
  for (int n = 0; n < rho.n_max; ++n)
    psi(n) = reference[static_cast<std::size_t>(n)];
  const std::complex<double> val = psi.adjoint() * rho.entries * psi;
  return val.real();
}

double marginal_gap(const WignerGrid& grid, std::span<const double> q_centers,
                    std::span<const double> density0) {
  if (q_centers.size() != density0.size() || q_centers.size() < 2)
    throw InvalidParams("marginal_gap: grid/density size mismatch");
  const std::size_t nx = grid.re_axis.size(), ny = grid.im_axis.size();
  if (ny < 2) throw InvalidParams("marginal_gap: degenerate Wigner grid");
  const double dy = grid.im_axis[1] - grid.im_axis[0];

  const double root2 = std::sqrt(2.0);
  double gap = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double q = root2 * grid.re_axis[i];
    if (q < q_centers.front() || q > q_centers.back()) continue;

    // trapezoid over the y axis
    double marg = 0.5 * (grid.at(i, 0) + grid.at(i, ny - 1));
    for (std::size_t j = 1; j + 1 < ny; ++j) marg += grid.at(i, j);
    marg *= dy;

    // linear interpolation of the measured theta = 0 density at q
    const auto it =
        std::upper_bound(q_centers.begin(), q_centers.end(), q);
    std::size_t hi = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(std::distance(q_centers.begin(), it),
                                 static_cast<std::ptrdiff_t>(q_centers.size()) - 1));
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (q - q_centers[lo]) / (q_centers[hi] - q_centers[lo]);
    const double p = (1.0 - t) * density0[lo] + t * density0[hi];

    gap = std::max(gap, std::abs(marg - root2 * p));
  }
  return gap;
}

}  // namespace spacsim
