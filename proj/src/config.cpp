#include "spacsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spacsim/errors.hpp"
#include "spacsim/io.hpp"

namespace spacsim {

namespace {

double to_double(const std::string& value, const std::string& key) {
  double v = 0.0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw InvalidParams("config key '" + key + "': bad number '" + value +
                        "'");
  return v;
}

std::uint64_t to_u64(const std::string& value, const std::string& key) {
  std::uint64_t v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw InvalidParams("config key '" + key + "': bad integer '" + value +
                        "'");
  return v;
}

int to_int(const std::string& value, const std::string& key) {
  int v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw InvalidParams("config key '" + key + "': bad integer '" + value +
                        "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string maybe_quote(const std::string& s) {
  if (s.find_first_of(" \t#\"") == std::string::npos && !s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string unquote(const std::string& s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return s;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  if (!(theta_step_deg > 0.0))
    throw InvalidParams("theta-step-deg must be positive");
  if (!(theta_stop_deg > theta_start_deg))
    throw InvalidParams("theta sweep must have stop > start");
  if (!(q_range > 0.0)) throw InvalidParams("q-range must be positive");
  if (bins < 1) throw InvalidParams("bins must be >= 1");
  if (n_max < 2) throw InvalidParams("nmax must be >= 2");
  if (grid_points < 2)
    throw InvalidParams("Wigner grid needs at least 2 points");
  if (!(grid_extent > 0.0))
    throw InvalidParams("Wigner grid extent must be positive");
  if (out_dir.empty()) throw InvalidParams("output directory must be set");
  if (format != "text" && format != "json")
    throw InvalidParams("format must be 'text' or 'json', got '" + format +
                        "'");
  sweep().validate();
  histogram().validate();
  wigner_spec().validate();
}

ThetaSweep ExperimentConfig::sweep() const {
  return ThetaSweep::degrees(theta_start_deg, theta_stop_deg, theta_step_deg);
}

HistogramSpec ExperimentConfig::histogram() const {
  HistogramSpec h;
  h.q_min = -q_range;
  h.q_max = q_range;
  h.bins = bins;
  return h;
}

WignerGridSpec ExperimentConfig::wigner_spec() const {
  WignerGridSpec w;
  w.points = grid_points;
  w.extent = grid_extent;
  return w;
}

void parse_grid_spec(const std::string& text, int& points, double& extent) {
  const auto colon = text.find(':');
  const std::string p_part =
      colon == std::string::npos ? text : text.substr(0, colon);
  points = to_int(p_part, "grid");
  if (colon != std::string::npos)
    extent = to_double(text.substr(colon + 1), "grid");
}

void write_config(const std::filesystem::path& path,
                  const ExperimentConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  std::ostringstream grid;
  grid << cfg.grid_points << ':' << io::fmt17(cfg.grid_extent);
  out << "# quadrature-simulator run configuration\n";
  out << "alpha-re=" << io::fmt17(cfg.params.alpha.real()) << '\n';
  out << "alpha-im=" << io::fmt17(cfg.params.alpha.imag()) << '\n';
  out << "sigma=" << io::fmt17(cfg.params.sigma) << '\n';
  out << "r=" << io::fmt17(cfg.params.r) << '\n';
  out << "gamma=" << io::fmt17(cfg.params.gamma) << '\n';
  out << "seed=" << cfg.params.seed << '\n';
  out << "samples=" << cfg.params.target_conditioned << '\n';
  out << "max-trials=" << cfg.params.max_trials << '\n';
  out << "theta-start-deg=" << io::fmt17(cfg.theta_start_deg) << '\n';
  out << "theta-stop-deg=" << io::fmt17(cfg.theta_stop_deg) << '\n';
  out << "theta-step-deg=" << io::fmt17(cfg.theta_step_deg) << '\n';
  out << "q-range=" << io::fmt17(cfg.q_range) << '\n';
  out << "bins=" << cfg.bins << '\n';
  out << "nmax=" << cfg.n_max << '\n';
  out << "grid=" << grid.str() << '\n';
  out << "out=" << maybe_quote(cfg.out_dir) << '\n';
  out << "format=" << cfg.format << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "alpha-re")
    cfg.params.alpha = {to_double(value, key), cfg.params.alpha.imag()};
  else if (key == "alpha-im")
    cfg.params.alpha = {cfg.params.alpha.real(), to_double(value, key)};
  else if (key == "sigma")
    cfg.params.sigma = to_double(value, key);
  else if (key == "r")
    cfg.params.r = to_double(value, key);
  else if (key == "gamma")
    cfg.params.gamma = to_double(value, key);
  else if (key == "seed")
    cfg.params.seed = to_u64(value, key);
  else if (key == "samples")
    cfg.params.target_conditioned = to_u64(value, key);
  else if (key == "max-trials")
    cfg.params.max_trials = to_u64(value, key);
  else if (key == "theta-start-deg")
    cfg.theta_start_deg = to_double(value, key);
  else if (key == "theta-stop-deg")
    cfg.theta_stop_deg = to_double(value, key);
  else if (key == "theta-step-deg")
    cfg.theta_step_deg = to_double(value, key);
  else if (key == "q-range")
    cfg.q_range = to_double(value, key);
  else if (key == "bins")
    cfg.bins = to_int(value, key);
  else if (key == "nmax")
    cfg.n_max = to_int(value, key);
  else if (key == "grid")
    parse_grid_spec(unquote(value), cfg.grid_points, cfg.grid_extent);
  else if (key == "out")
    cfg.out_dir = unquote(value);
  else if (key == "format")
    cfg.format = unquote(value);
  else
    throw InvalidParams("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidParams("config line " + std::to_string(line_no) +
                          " is not key=value: '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    apply_config_key(cfg, key, value);
  }
  return cfg;
}

}  // namespace spacsim
