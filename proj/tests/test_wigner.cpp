// Fock-basis Wigner kernels, grid evaluation, reference states, fidelity,
// and the quadrature-marginal identity.

#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spacsim/empirics.hpp"
#include "spacsim/errors.hpp"
#include "spacsim/tomography.hpp"
#include "spacsim/wigner.hpp"

using namespace spacsim;
using cplx = std::complex<double>;

namespace {

// W_nm for arbitrary index order via the Hermitian-conjugate symmetry
cplx w_full(int n, int m, cplx alpha) {
  if (m <= n) return wigner_basis(n, m, alpha);
  return std::conj(wigner_basis(m, n, alpha));
}

DensityMatrix wrap(const Eigen::MatrixXcd& entries) {
  DensityMatrix dm;
  dm.n_max = static_cast<int>(entries.rows());
  dm.entries = entries;
  dm.raw_trace = entries.trace().real();
  return dm;
}

}  // namespace

TEST_CASE("associated Laguerre backend matches frozen references") {
  // [DERIVED] guards the library convention L_n^{(m)}(x)
  CHECK(std::assoc_laguerre(1u, 1u, 0.5) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::assoc_laguerre(2u, 1u, 2.0) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::assoc_laguerre(3u, 2u, 4.0) ==
        doctest::Approx(-0.66666666666666652).epsilon(1e-13));
  CHECK(std::assoc_laguerre(2u, 0u, 3.3) ==
        doctest::Approx(-0.15500000000000025).epsilon(1e-13));
  CHECK(std::assoc_laguerre(4u, 3u, 1.7) ==
        doctest::Approx(0.4611708333333332).epsilon(1e-13));
}

TEST_CASE("Wigner kernels match frozen references") {
  // [DERIVED] frozen from an independent implementation of the Laguerre
  // expansion.
  const auto check = [](cplx got, cplx want) {
    CHECK(got.real() == doctest::Approx(want.real()).epsilon(1e-13));
    CHECK(std::abs(got.imag() - want.imag()) < 1e-13);
  };
  check(wigner_basis(0, 0, {0.3, 0.4}), {0.38612941052021565, 0.0});
  check(wigner_basis(1, 0, {0.3, -0.2}),
        {0.29452001102275738, 0.19634667401517161});
  check(wigner_basis(2, 1, {0.5, 0.1}),
        {-0.25692314382155013, 0.051384628764310027});
  check(wigner_basis(3, 0, {-0.7, 0.25}),
        {-0.14582181560594962, -0.24231901471708864});
  check(wigner_basis(3, 2, {1.0, 0.0}), {-0.099485669624582732, 0.0});
  check(wigner_basis(2, 2, {0.9, 1.1}), {0.19586252175963925, 0.0});

  // origin values fixed by the normalization
  CHECK(wigner_basis(0, 0, {0.0, 0.0}).real() ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(wigner_basis(1, 1, {0.0, 0.0}).real() ==
        doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-15));

  CHECK_THROWS_AS(wigner_basis(1, 2, {0.0, 0.0}), InvalidParams);
  CHECK_THROWS_AS(wigner_basis(1, -1, {0.0, 0.0}), InvalidParams);
}

TEST_CASE("Wigner kernels are orthonormal under the trace product") {
  // pi * int W_nm conj(W_jk) d^2alpha = delta_nj delta_mk; the Riemann sum
  // over [-5, 5]^2 is exponentially accurate for these Gaussian-decaying
  // integrands.
  const int pts = 201;
  const double h = 10.0 / (pts - 1);
  const int modes = 3;

  std::vector<std::vector<cplx>> w(static_cast<std::size_t>(modes * modes));
  std::vector<cplx> points;
  points.reserve(static_cast<std::size_t>(pts) * pts);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j)
      points.emplace_back(-5.0 + i * h, -5.0 + j * h);
  for (int n = 0; n < modes; ++n)
    for (int m = 0; m < modes; ++m) {
      auto& dst = w[static_cast<std::size_t>(n * modes + m)];
      dst.reserve(points.size());
      for (const auto& a : points) dst.push_back(w_full(n, m, a));
    }

  double worst = 0.0;
  for (int n = 0; n < modes; ++n)
    for (int m = 0; m < modes; ++m)
      for (int j = 0; j < modes; ++j)
        for (int k = 0; k < modes; ++k) {
          cplx acc{0.0, 0.0};
          const auto& a = w[static_cast<std::size_t>(n * modes + m)];
          const auto& b = w[static_cast<std::size_t>(j * modes + k)];
          for (std::size_t i = 0; i < points.size(); ++i)
            acc += a[i] * std::conj(b[i]);
          acc *= std::numbers::pi * h * h;
          const double expect = (n == j && m == k) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(acc - cplx{expect, 0.0}));
        }
  CHECK(worst < 1e-4);
}

TEST_CASE("diagonal Wigner kernels integrate to one") {
  const int pts = 201;
  const double h = 10.0 / (pts - 1);
  for (int n = 0; n < 4; ++n) {
    double acc = 0.0;
    for (int i = 0; i < pts; ++i)
      for (int j = 0; j < pts; ++j)
        acc += wigner_basis(n, n, {-5.0 + i * h, -5.0 + j * h}).real();
    CHECK(acc * h * h == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("WignerGridSpec validation and axis construction") {
  WignerGridSpec spec;
  CHECK_NOTHROW(spec.validate());
  const auto ax = spec.axis();
  REQUIRE(ax.size() == 161);
  CHECK(ax.front() == -4.0);
  CHECK(ax.back() == 4.0);
  CHECK(ax[80] == 0.0);  // odd point count pins the origin

  WignerGridSpec bad;
  bad.extent = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidParams);
  bad = WignerGridSpec{};
  bad.points = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidParams);
}

TEST_CASE("single-photon Wigner function reaches -2/pi at the origin") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(1, 1) = 1.0;
  const auto grid = evaluate_grid(wrap(rho), WignerGridSpec{});
  CHECK(grid.min_value == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(grid.min_location.first == 0.0);
  CHECK(grid.min_location.second == 0.0);
  CHECK(grid.grid_integral() == doctest::Approx(1.0).epsilon(1e-8));
  // quadratic refinement at a smooth interior minimum stays put
  CHECK(std::abs(grid.refined_min_value + 2.0 / std::numbers::pi) < 1e-4);
  CHECK(std::hypot(grid.refined_min_location.first,
                   grid.refined_min_location.second) < 1e-4);
  CHECK(grid.max_imag_residue < 1e-12);
}

TEST_CASE("vacuum Wigner function is nonnegative with maximum 2/pi") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  const auto grid = evaluate_grid(wrap(rho), WignerGridSpec{});
  CHECK(grid.min_value >= 0.0);
  CHECK(grid.max_value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(grid.max_location.first == 0.0);
  CHECK(grid.max_location.second == 0.0);
  CHECK(grid.grid_integral() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("even vacuum/one-photon mixture vanishes at the origin") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  const auto grid = evaluate_grid(wrap(rho), WignerGridSpec{});
  CHECK(std::abs(grid.at(80, 80)) < 1e-14);
}

TEST_CASE("grid evaluation is linear in the density matrix") {
  const auto rho1 = ideal_spacs(cplx{0.9, 0.0}, 5).entries;
  Eigen::MatrixXcd rho2 = Eigen::MatrixXcd::Zero(5, 5);
  rho2(0, 0) = 0.7;
  rho2(2, 2) = 0.3;
  const Eigen::MatrixXcd mixed = 0.3 * rho1 + 0.7 * rho2;

  WignerGridSpec spec;
  spec.points = 81;
  const auto g1 = evaluate_grid(wrap(rho1), spec);
  const auto g2 = evaluate_grid(wrap(rho2), spec);
  const auto gm = evaluate_grid(wrap(mixed), spec);
  for (std::size_t i = 0; i < gm.values.size(); ++i)
    CHECK(gm.values[i] ==
          doctest::Approx(0.3 * g1.values[i] + 0.7 * g2.values[i])
              .epsilon(1e-12));
}

TEST_CASE("diagonal states give rotation-symmetric grids") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.15;
  rho(3, 3) = 0.05;
  const auto grid = evaluate_grid(wrap(rho), WignerGridSpec{});
  // axis nodes mirror only up to an ulp (-extent + i*step), so compare with
  // an absolute tolerance rather than bitwise
  const std::size_t n = 161;
  for (std::size_t i = 0; i < n; i += 7)
    for (std::size_t j = 0; j < n; j += 7) {
      CHECK(std::abs(grid.at(i, j) - grid.at(n - 1 - i, j)) < 1e-12);  // x -> -x
      CHECK(std::abs(grid.at(i, j) - grid.at(i, n - 1 - j)) < 1e-12);  // y -> -y
      CHECK(std::abs(grid.at(i, j) - grid.at(j, i)) < 1e-12);          // x <-> y
    }
}

TEST_CASE("complex displacement keeps the Hermitian sum real") {
  const auto dm = ideal_spacs(cplx{0.7, 0.3}, 6);
  const auto grid = evaluate_grid(dm, WignerGridSpec{});
  CHECK(grid.max_imag_residue < 1e-12);
  CHECK(grid.grid_integral() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ideal photon-added state: coefficients and purity") {
  const auto zero = ideal_spacs_coefficients(cplx{0.0, 0.0}, 5);
  REQUIRE(zero.size() == 5);
  CHECK(zero[0] == cplx{0.0, 0.0});
  CHECK(zero[1] == cplx{1.0, 0.0});
  for (std::size_t n = 2; n < 5; ++n) CHECK(std::abs(zero[n]) == 0.0);

  const auto c = ideal_spacs_coefficients(cplx{0.9, 0.0}, 8);
  CHECK(c[0] == cplx{0.0, 0.0});
  double norm2 = 0.0;
  for (const auto& v : c) norm2 += std::norm(v);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
  // c_{n+1}/c_n = sqrt((n+1)/n) alpha / sqrt(n): check the first ratio
  CHECK(std::norm(c[2]) / std::norm(c[1]) ==
        doctest::Approx(2.0 * 0.81).epsilon(1e-12));

  const auto dm = ideal_spacs(cplx{0.9, 0.0}, 8);
  CHECK(dm.raw_trace == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((dm.entries * dm.entries).trace().real() ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dm.hermiticity_residual() < 1e-16);

  CHECK_THROWS_AS(ideal_spacs(cplx{0.9, 0.0}, 1), InvalidParams);
}

TEST_CASE("fidelity against pure references") {
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Zero(4, 4);
  one(1, 1) = 1.0;
  const auto dm = wrap(one);

  std::vector<cplx> e1{{0, 0}, {1, 0}, {0, 0}, {0, 0}};
  std::vector<cplx> e0{{1, 0}, {0, 0}, {0, 0}, {0, 0}};
  CHECK(fidelity(dm, e1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(fidelity(dm, e0)) < 1e-15);

  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(4, 4);
  mix(0, 0) = 0.5;
  mix(1, 1) = 0.5;
  CHECK(fidelity(wrap(mix), e1) == doctest::Approx(0.5).epsilon(1e-15));

  std::vector<cplx> wrong_size{{1, 0}, {0, 0}};
  CHECK_THROWS_AS(fidelity(dm, wrong_size), InvalidParams);
}

TEST_CASE("vacuum marginal matches the theta = 0 quadrature density") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  const auto grid = evaluate_grid(wrap(rho), WignerGridSpec{});
  const HistogramSpec hist;
  const auto centers = hist.centers();
  std::vector<double> density(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i)
    density[i] =
        std::exp(-centers[i] * centers[i]) / std::sqrt(std::numbers::pi);
  CHECK(marginal_gap(grid, centers, density) < 1e-3);

  std::vector<double> short_density(centers.size() - 1);
  CHECK_THROWS_AS(marginal_gap(grid, centers, short_density), InvalidParams);
}
