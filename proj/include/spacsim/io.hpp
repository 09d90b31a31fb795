#pragma once

#include <filesystem>
#include <string>

#include "spacsim/empirics.hpp"
#include "spacsim/tomography.hpp"
#include "spacsim/wigner.hpp"

namespace spacsim::io {

// Canonical artifact names inside a run directory.
inline constexpr const char* kConfigFile = "config.cfg";
inline constexpr const char* kDatasetCsv = "quadratures.csv";
inline constexpr const char* kDatasetSidecar = "quadratures.json";
inline constexpr const char* kDensityFile = "density_matrix.json";
inline constexpr const char* kWignerCsv = "wigner.csv";
inline constexpr const char* kWignerSummary = "wigner.json";
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kFailedMarker = "FAILED";

/// Shortest-width 17-significant-digit decimal form; always round-trips the
/// exact double. All numeric artifact text goes through this one formatter so
/// identical runs produce byte-identical files.
std::string fmt17(double v);

/// Plot-ready long-format table: header `theta_deg,q_bin_center,density`,
/// one row per (theta, bin).
void write_dataset_csv(const std::filesystem::path& path,
                       const QuadratureDataset& ds);

/// Machine-readable sidecar: seed, model params, sweep and histogram specs,
/// per-theta raw counts and out-of-range totals, trial bookkeeping. Together
/// with the CSV this reproduces every downstream number (samples themselves
/// are not persisted; the sample-mean estimator is an in-memory diagnostic).
void write_dataset_sidecar(const std::filesystem::path& path,
                           const QuadratureDataset& ds);

/// Rebuilds a dataset (without raw samples) from the CSV + sidecar pair.
QuadratureDataset read_dataset(const std::filesystem::path& csv_path,
                               const std::filesystem::path& sidecar_path);

void write_density_matrix(const std::filesystem::path& path,
                          const DensityMatrix& rho);

DensityMatrix read_density_matrix(const std::filesystem::path& path);

/// Long-format grid table: header `re_alpha,im_alpha,wigner`.
void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& g);

/// Extrema + normalization summary for quick inspection.
void write_wigner_summary(const std::filesystem::path& path,
                          const WignerGrid& g);

/// Pattern-function table dump for external inspection: header
/// `q,f_<n>_<m>,...` over all n <= m columns.
void write_pattern_table_csv(const std::filesystem::path& path,
                             const PatternTable& table);

}  // namespace spacsim::io
