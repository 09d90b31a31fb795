#include "spacsim/special_functions.hpp"

#include <gsl/gsl_sf_dawson.h>

#include <cmath>
#include <numbers>

#include "spacsim/errors.hpp"

namespace spacsim {

namespace {
const double kPiQuarterRoot = std::pow(std::numbers::pi, 0.25);

void check_mode(int n) {
  if (n < 0) throw InvalidParams("mode index must be >= 0");
  if (n > kMaxStableMode)
    throw TruncationTooLarge("mode " + std::to_string(n) +
                             " exceeds stable range " +
                             std::to_string(kMaxStableMode));
}
}  // namespace

double dawson(double x) { return gsl_sf_dawson(x); }

double regular_wavefunction(int n, double q) {
  check_mode(n);
  double prev = 0.0;
  double cur = std::exp(-q * q / 2) / kPiQuarterRoot;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * q * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double irregular_wavefunction(int n, double q) {
  check_mode(n);
  const double e = std::exp(q * q / 2);
  double cur = kPiQuarterRoot * e * dawson(q);
  if (n == 0) return cur;
  double prev = cur;
  cur = kPiQuarterRoot * e * (2 * q * dawson(q) - 1) / std::sqrt(2.0);
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * q * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<std::vector<double>> regular_table(int rows,
                                               std::span<const double> q) {
  if (rows < 1) throw InvalidParams("table needs at least one row");
  check_mode(rows - 1);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(rows),
                                       std::vector<double>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    out[0][i] = std::exp(-q[i] * q[i] / 2) / kPiQuarterRoot;
  if (rows >= 2)
    for (std::size_t i = 0; i < q.size(); ++i)
      out[1][i] = std::sqrt(2.0) * q[i] * out[0][i];
  for (int n = 1; n + 1 < rows; ++n) {
    const double c1 = std::sqrt(2.0 / (n + 1));
    const double c2 = std::sqrt(static_cast<double>(n) / (n + 1));
    for (std::size_t i = 0; i < q.size(); ++i)
      out[static_cast<std::size_t>(n) + 1][i] =
          c1 * q[i] * out[static_cast<std::size_t>(n)][i] -
          c2 * out[static_cast<std::size_t>(n) - 1][i];
  }
  return out;
}

std::vector<std::vector<double>> irregular_table(int rows,
                                                 std::span<const double> q) {
  if (rows < 1) throw InvalidParams("table needs at least one row");
  check_mode(rows - 1);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(rows),
                                       std::vector<double>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    out[0][i] = kPiQuarterRoot * std::exp(q[i] * q[i] / 2) * dawson(q[i]);
  if (rows >= 2)
    for (std::size_t i = 0; i < q.size(); ++i)
      out[1][i] = kPiQuarterRoot * std::exp(q[i] * q[i] / 2) *
                  (2 * q[i] * dawson(q[i]) - 1) / std::sqrt(2.0);
  for (int n = 1; n + 1 < rows; ++n) {
    const double c1 = std::sqrt(2.0 / (n + 1));
    const double c2 = std::sqrt(static_cast<double>(n) / (n + 1));
    for (std::size_t i = 0; i < q.size(); ++i)
      out[static_cast<std::size_t>(n) + 1][i] =
          c1 * q[i] * out[static_cast<std::size_t>(n)][i] -
          c2 * out[static_cast<std::size_t>(n) - 1][i];
  }
  return out;
}

std::vector<std::vector<double>> derivative_rows(
    const std::vector<std::vector<double>>& table, std::span<const double> q,
    bool irregular) {
  if (table.size() < 2)
    throw InvalidParams("derivative_rows needs at least two table rows");
  const std::size_t rows = table.size() - 1;
  std::vector<std::vector<double>> out(rows, std::vector<double>(q.size()));
  for (std::size_t n = 0; n < rows; ++n) {
    const double lo = n >= 1 ? std::sqrt(static_cast<double>(n) / 2.0) : 0.0;
    const double hi = std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double low_term = n >= 1 ? lo * table[n - 1][i] : 0.0;
      out[n][i] = low_term - hi * table[n + 1][i];
    }
  }
  if (irregular)
    for (std::size_t i = 0; i < q.size(); ++i)
      out[0][i] += 0.5 * kPiQuarterRoot * std::exp(q[i] * q[i] / 2);
  return out;
}

double factorial(int n) {
  if (n < 0) throw InvalidParams("factorial of negative argument");
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

}  // namespace spacsim
