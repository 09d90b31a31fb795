#pragma once

#include <span>
#include <vector>

namespace spacsim {

/// Largest mode index for which the wavefunction recurrences are documented
/// stable on |q| <= 8 (the classically allowed region of mode 64 extends to
/// |q| ~ 11.4, so the three-term recurrences stay well conditioned).
inline constexpr int kMaxStableMode = 64;

/// Dawson's integral D(x) = e^{-x^2} \int_0^x e^{t^2} dt.
double dawson(double x);

/// Normalized harmonic-oscillator eigenfunction psi_n(q), by the stable
/// three-term recurrence psi_{n+1} = sqrt(2/(n+1)) q psi_n - sqrt(n/(n+1)) psi_{n-1}
/// from psi_0 = pi^{-1/4} e^{-q^2/2}. Throws TruncationTooLarge for
/// n > kMaxStableMode.
double regular_wavefunction(int n, double q);

/// Second (non-normalizable) solution phi_n of the oscillator equation,
/// generated by the same recurrence from Dawson-integral seeds
///   phi_0 = pi^{1/4} e^{q^2/2} D(q),
///   phi_1 = pi^{1/4} e^{q^2/2} (2 q D(q) - 1) / sqrt(2),
/// normalized so the Wronskian psi_n phi_n' - psi_n' phi_n = 1 for every n.
double irregular_wavefunction(int n, double q);

/// Rows 0..rows-1 of psi_n evaluated on an arbitrary grid.
std::vector<std::vector<double>> regular_table(int rows,
                                               std::span<const double> q);

/// Rows 0..rows-1 of phi_n evaluated on an arbitrary grid.
std::vector<std::vector<double>> irregular_table(int rows,
                                                 std::span<const double> q);

/// Derivatives of the first `rows-1` rows of a wavefunction table via the
/// ladder identity u_n' = sqrt(n/2) u_{n-1} - sqrt((n+1)/2) u_{n+1}.
/// The identity is exact for the regular family; for the irregular family
/// the lowering operator does not annihilate phi_0 (a phi_0 =
/// pi^{1/4} e^{q^2/2} / sqrt(2)), so phi_0' gains the anomalous term
/// + pi^{1/4} e^{q^2/2} / 2, applied when `irregular` is set.
std::vector<std::vector<double>> derivative_rows(
    const std::vector<std::vector<double>>& table, std::span<const double> q,
    bool irregular);

/// n! as a double (exact for n <= 20, which covers the working mode range).
double factorial(int n);

}  // namespace spacsim
