#include "spacsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "spacsim/errors.hpp"

namespace spacsim::io {

namespace {

using nlohmann::json;

void ensure_parent(const std::filesystem::path& path) {
  const auto dir = path.parent_path();
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory " + dir.string() + ": " +
                  ec.message());
}

std::ofstream open_out(const std::filesystem::path& path) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

double parse_double(std::string_view text, const char* what) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw IoError(std::string("malformed ") + what + ": '" +
                  std::string(text) + "'");
  return v;
}

// Emit a double array on one line: [a,b,...]
std::string num_array(std::span<const double> vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += fmt17(vs[i]);
  }
  s += ']';
  return s;
}

std::string uint_array(std::span<const std::uint64_t> vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vs[i]);
  }
  s += ']';
  return s;
}

json parse_json(const std::filesystem::path& path) {
  json j = json::parse(slurp(path), nullptr, false);
  if (j.is_discarded())
    throw IoError("malformed JSON in " + path.string());
  return j;
}

}  // namespace

std::string fmt17(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_dataset_csv(const std::filesystem::path& path,
                       const QuadratureDataset& ds) {
  auto out = open_out(path);
  out << "theta_deg,q_bin_center,density\n";
  const auto centers = ds.bin_centers();
  for (std::size_t t = 0; t < ds.theta_deg.size(); ++t) {
    const std::string theta = fmt17(ds.theta_deg[t]);
    for (std::size_t b = 0; b < centers.size(); ++b) {
      out << theta << ',' << fmt17(centers[b]) << ','
          << fmt17(ds.density[t][b]) << '\n';
    }
  }
  finish(out, path);
}

void write_dataset_sidecar(const std::filesystem::path& path,
                           const QuadratureDataset& ds) {
  auto out = open_out(path);
  const ModelParams& p = ds.params;
  out << "{\n";
  out << "  \"schema\": \"quadrature-dataset-v1\",\n";
  out << "  \"seed\": " << ds.seed << ",\n";
  out << "  \"params\": {\n";
  out << "    \"alpha_re\": " << fmt17(p.alpha.real()) << ",\n";
  out << "    \"alpha_im\": " << fmt17(p.alpha.imag()) << ",\n";
  out << "    \"sigma\": " << fmt17(p.sigma) << ",\n";
  out << "    \"r\": " << fmt17(p.r) << ",\n";
  out << "    \"gamma\": " << fmt17(p.gamma) << ",\n";
  out << "    \"target_conditioned\": " << p.target_conditioned << ",\n";
  out << "    \"max_trials\": " << p.max_trials << "\n";
  out << "  },\n";
  out << "  \"theta_deg\": " << num_array(ds.theta_deg) << ",\n";
  out << "  \"bin_edges\": " << num_array(ds.bin_edges) << ",\n";
  out << "  \"samples_per_theta\": " << ds.samples_per_theta << ",\n";
  out << "  \"total_trials\": " << ds.total_trials << ",\n";
  out << "  \"efficiency\": " << fmt17(ds.efficiency) << ",\n";
  out << "  \"drop_warning\": " << (ds.drop_warning ? "true" : "false")
      << ",\n";
  out << "  \"out_of_range\": " << uint_array(ds.out_of_range) << ",\n";
  out << "  \"counts\": [\n";
  for (std::size_t t = 0; t < ds.counts.size(); ++t) {
    out << "    " << uint_array(ds.counts[t])
        << (t + 1 < ds.counts.size() ? ",\n" : "\n");
  }
  out << "  ]\n";
  out << "}\n";
  finish(out, path);
}

QuadratureDataset read_dataset(const std::filesystem::path& csv_path,
                               const std::filesystem::path& sidecar_path) {
  const json j = parse_json(sidecar_path);
  QuadratureDataset ds;
  try {
    ds.seed = j.at("seed").get<std::uint64_t>();
    const json& p = j.at("params");
    ds.params.alpha = {p.at("alpha_re").get<double>(),
                       p.at("alpha_im").get<double>()};
    ds.params.sigma = p.at("sigma").get<double>();
    ds.params.r = p.at("r").get<double>();
    ds.params.gamma = p.at("gamma").get<double>();
    ds.params.target_conditioned =
        p.at("target_conditioned").get<std::uint64_t>();
    ds.params.max_trials = p.at("max_trials").get<std::uint64_t>();
    ds.params.seed = ds.seed;
    ds.theta_deg = j.at("theta_deg").get<std::vector<double>>();
    ds.bin_edges = j.at("bin_edges").get<std::vector<double>>();
    ds.samples_per_theta = j.at("samples_per_theta").get<std::uint64_t>();
    ds.total_trials = j.at("total_trials").get<std::uint64_t>();
    ds.efficiency = j.at("efficiency").get<double>();
    ds.drop_warning = j.at("drop_warning").get<bool>();
    ds.out_of_range = j.at("out_of_range").get<std::vector<std::uint64_t>>();
    ds.counts =
        j.at("counts").get<std::vector<std::vector<std::uint64_t>>>();
  } catch (const json::exception& e) {
    throw IoError("bad dataset sidecar " + sidecar_path.string() + ": " +
                  e.what());
  }

  constexpr double kDegToRad = 3.1415926535897932384626433832795 / 180.0;
  ds.theta_rad.reserve(ds.theta_deg.size());
  for (double d : ds.theta_deg) ds.theta_rad.push_back(d * kDegToRad);

  // Densities come from the CSV (the authoritative 17-digit record).
  const std::size_t n_theta = ds.theta_deg.size();
  const std::size_t n_bins = ds.bin_edges.empty() ? 0 : ds.bin_edges.size() - 1;
  ds.density.assign(n_theta, std::vector<double>(n_bins, 0.0));

  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + csv_path.string());
  std::string line;
  if (!std::getline(in, line) || line != "theta_deg,q_bin_center,density")
    throw IoError("bad dataset CSV header in " + csv_path.string());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw IoError("bad dataset CSV row in " + csv_path.string());
    const std::size_t t = row / n_bins;
    const std::size_t b = row % n_bins;
    if (t >= n_theta)
      throw IoError("dataset CSV has more rows than the sidecar describes");
    ds.density[t][b] = parse_double(
        std::string_view(line).substr(c2 + 1), "density value");
    ++row;
  }
  if (row != n_theta * n_bins)
    throw IoError("dataset CSV row count mismatches the sidecar");
  return ds;
}

void write_density_matrix(const std::filesystem::path& path,
                          const DensityMatrix& rho) {
  auto out = open_out(path);
  const int n = rho.n_max;
  const ReconstructionMeta& m = rho.meta;
  out << "{\n";
  out << "  \"schema\": \"density-matrix-v1\",\n";
  out << "  \"n_max\": " << n << ",\n";
  out << "  \"raw_trace\": " << fmt17(rho.raw_trace) << ",\n";
  out << "  \"entries_re\": [\n";
  for (int i = 0; i < n; ++i) {
    out << "    [";
    for (int k = 0; k < n; ++k)
      out << fmt17(rho.entries(i, k).real()) << (k + 1 < n ? "," : "");
    out << (i + 1 < n ? "],\n" : "]\n");
  }
  out << "  ],\n";
  out << "  \"entries_im\": [\n";
  for (int i = 0; i < n; ++i) {
    out << "    [";
    for (int k = 0; k < n; ++k)
      out << fmt17(rho.entries(i, k).imag()) << (k + 1 < n ? "," : "");
    out << (i + 1 < n ? "],\n" : "]\n");
  }
  out << "  ],\n";
  const auto eig = rho.eigenvalues();
  out << "  \"eigenvalues\": " << num_array(eig) << ",\n";
  out << "  \"hermiticity_residual\": " << fmt17(rho.hermiticity_residual())
      << ",\n";
  out << "  \"meta\": {\n";
  out << "    \"method\": \"" << m.method << "\",\n";
  out << "    \"seed\": " << m.seed << ",\n";
  out << "    \"samples_per_theta\": " << m.samples_per_theta << ",\n";
  out << "    \"total_trials\": " << m.total_trials << ",\n";
  out << "    \"efficiency\": " << fmt17(m.efficiency) << ",\n";
  out << "    \"q_min\": " << fmt17(m.q_min) << ",\n";
  out << "    \"q_max\": " << fmt17(m.q_max) << ",\n";
  out << "    \"bins\": " << m.bins << ",\n";
  out << "    \"theta_deg\": " << num_array(m.theta_deg) << "\n";
  out << "  }\n";
  out << "}\n";
  finish(out, path);
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  const json j = parse_json(path);
  DensityMatrix rho;
  try {
    rho.n_max = j.at("n_max").get<int>();
    rho.raw_trace = j.at("raw_trace").get<double>();
    const auto re = j.at("entries_re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("entries_im").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != rho.n_max ||
        static_cast<int>(im.size()) != rho.n_max)
      throw IoError("entry matrix size mismatch in " + path.string());
    rho.entries.resize(rho.n_max, rho.n_max);
    for (int i = 0; i < rho.n_max; ++i) {
      if (static_cast<int>(re[static_cast<std::size_t>(i)].size()) !=
              rho.n_max ||
          static_cast<int>(im[static_cast<std::size_t>(i)].size()) !=
              rho.n_max)
        throw IoError("entry row size mismatch in " + path.string());
      for (int k = 0; k < rho.n_max; ++k)
        rho.entries(i, k) = {re[static_cast<std::size_t>(i)]
                               [static_cast<std::size_t>(k)],
                             im[static_cast<std::size_t>(i)]
                               [static_cast<std::size_t>(k)]};
    }
    const json& m = j.at("meta");
    rho.meta.method = m.at("method").get<std::string>();
    rho.meta.seed = m.at("seed").get<std::uint64_t>();
    rho.meta.samples_per_theta = m.at("samples_per_theta").get<std::uint64_t>();
    rho.meta.total_trials = m.at("total_trials").get<std::uint64_t>();
    rho.meta.efficiency = m.at("efficiency").get<double>();
    rho.meta.q_min = m.at("q_min").get<double>();
    rho.meta.q_max = m.at("q_max").get<double>();
    rho.meta.bins = m.at("bins").get<int>();
    rho.meta.theta_deg = m.at("theta_deg").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw IoError("bad density matrix file " + path.string() + ": " +
                  e.what());
  }
  return rho;
}

void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& g) {
  auto out = open_out(path);
  out << "re_alpha,im_alpha,wigner\n";
  for (std::size_t i = 0; i < g.re_axis.size(); ++i) {
    const std::string x = fmt17(g.re_axis[i]);
    for (std::size_t jj = 0; jj < g.im_axis.size(); ++jj) {
      out << x << ',' << fmt17(g.im_axis[jj]) << ',' << fmt17(g.at(i, jj))
          << '\n';
    }
  }
  finish(out, path);
}

void write_wigner_summary(const std::filesystem::path& path,
                          const WignerGrid& g) {
  auto out = open_out(path);
  out << "{\n";
  out << "  \"schema\": \"wigner-summary-v1\",\n";
  out << "  \"points\": " << g.re_axis.size() << ",\n";
  out << "  \"extent\": " << fmt17(g.re_axis.empty() ? 0.0 : g.re_axis.back())
      << ",\n";
  out << "  \"min\": " << fmt17(g.min_value) << ",\n";
  out << "  \"argmin\": [" << fmt17(g.min_location.first) << ","
      << fmt17(g.min_location.second) << "],\n";
  out << "  \"max\": " << fmt17(g.max_value) << ",\n";
  out << "  \"argmax\": [" << fmt17(g.max_location.first) << ","
      << fmt17(g.max_location.second) << "],\n";
  out << "  \"refined_min\": " << fmt17(g.refined_min_value) << ",\n";
  out << "  \"refined_argmin\": [" << fmt17(g.refined_min_location.first)
      << "," << fmt17(g.refined_min_location.second) << "],\n";
  out << "  \"grid_integral\": " << fmt17(g.grid_integral()) << ",\n";
  out << "  \"max_imag_residue\": " << fmt17(g.max_imag_residue) << "\n";
  out << "}\n";
  finish(out, path);
}

void write_pattern_table_csv(const std::filesystem::path& path,
                             const PatternTable& table) {
  auto out = open_out(path);
  out << "q";
  for (int n = 0; n < table.n_max; ++n)
    for (int m = n; m < table.n_max; ++m)
      out << ",f_" << n << '_' << m;
  out << '\n';
  for (std::size_t i = 0; i < table.q_grid.size(); ++i) {
    out << fmt17(table.q_grid[i]);
    for (int n = 0; n < table.n_max; ++n)
      for (int m = n; m < table.n_max; ++m)
        out << ',' << fmt17(table.at(n, m)[i]);
    out << '\n';
  }
  finish(out, path);
}

}  // namespace spacsim::io
