#include "dwell/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dwell/classical.hpp"
#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kOutputInterval = 0.1;  // correlation sampling, time units

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key,
                    const std::string& origin) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size())
    throw ConfigError(origin + ": bad numeric value for '" + key + "': " + v);
  return out;
}

int parse_int(const std::string& v, const std::string& key,
              const std::string& origin) {
  std::size_t pos = 0;
  int out = 0;
  try {
    out = std::stoi(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size())
    throw ConfigError(origin + ": bad integer value for '" + key + "': " + v);
  return out;
}

bool parse_bool(const std::string& v, const std::string& key,
                const std::string& origin) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(origin + ": bad boolean value for '" + key + "': " + v);
}

std::vector<double> parse_times(const std::string& v, const std::string& key,
                                const std::string& origin) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item, key, origin));
  }
  return out;
}

// fixed 17-significant-digit formatting for byte-stable CSV output
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header)
      : out_(path, std::ios::binary) {
    if (!out_)
      throw ConfigError("cannot open output file: " + path.string());
    out_ << header << "\n";
  }
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ",";
      out_ << c;
      first = false;
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace

MadeGrid make_grid(const GridSpec& spec) {
  if (spec.nq < 1 || spec.np < 1 || spec.nq % 2 == 0 || spec.np % 2 == 0)
    throw ConfigError("make_grid: nq and np must be odd positive counts");
  const double step_q =
      spec.nq > 1 ? 2.0 * spec.half_width_q / (spec.nq - 1) : 0.0;
  const double step_p =
      spec.np > 1 ? 2.0 * spec.half_width_p / (spec.np - 1) : 0.0;

  MadeGrid out;
  out.labels.reserve(static_cast<std::size_t>(spec.nq) * spec.np *
                     (spec.mirrored ? 2 : 1));
  for (int iq = 0; iq < spec.nq; ++iq) {
    const double q = spec.center.q + (iq - (spec.nq - 1) / 2) * step_q;
    for (int ip = 0; ip < spec.np; ++ip) {
      const double p = spec.center.p + (ip - (spec.np - 1) / 2) * step_p;
      out.labels.push_back(label_from_qp(q, p));
    }
  }
  out.occupied = static_cast<std::size_t>((spec.nq - 1) / 2) * spec.np +
                 (spec.np - 1) / 2;
  if (spec.mirrored) {
    const std::size_t base = out.labels.size();
    for (std::size_t i = 0; i < base; ++i)
      out.labels.push_back(-out.labels[i]);
  }
  return out;
}

std::vector<EnergyClass> classify_energies(std::span<const cplx> labels,
                                           const WellParams& params) {
  const double sep = landmarks(params).separatrix_energy_ordered;
  std::vector<EnergyClass> out;
  out.reserve(labels.size());
  for (cplx z : labels) {
    const double e = h_ord(std::conj(z), z, params).real();
    out.push_back(e < sep ? EnergyClass::below : EnergyClass::above);
  }
  return out;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": empty key or value");

    if (key == "D") cfg.D = parse_double(val, key, origin);
    else if (key == "nq") cfg.grid.nq = parse_int(val, key, origin);
    else if (key == "np") cfg.grid.np = parse_int(val, key, origin);
    else if (key == "half_width_q")
      cfg.grid.half_width_q = parse_double(val, key, origin);
    else if (key == "half_width_p")
      cfg.grid.half_width_p = parse_double(val, key, origin);
    else if (key == "mirrored") cfg.grid.mirrored = parse_bool(val, key, origin);
    else if (key == "dt") cfg.dt = parse_double(val, key, origin);
    else if (key == "t_final") cfg.t_final = parse_double(val, key, origin);
    else if (key == "eps") cfg.eps = parse_double(val, key, origin);
    else if (key == "snapshot_times")
      cfg.snapshot_times = parse_times(val, key, origin);
    else if (key == "scenario") cfg.scenario = val;
    else if (key == "out_dir") cfg.out_dir = val;
    else
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
  }

  if (!(cfg.D > 0.0)) throw ConfigError(origin + ": D must be > 0");
  if (!(cfg.dt > 0.0)) throw ConfigError(origin + ": dt must be > 0");
  if (!(cfg.t_final > 0.0)) throw ConfigError(origin + ": t_final must be > 0");
  if (cfg.eps < 0.0) throw ConfigError(origin + ": eps must be >= 0");
  if (!(cfg.grid.half_width_q > 0.0) || !(cfg.grid.half_width_p > 0.0))
    throw ConfigError(origin + ": grid half-widths must be > 0");
  if (cfg.grid.nq < 1 || cfg.grid.np < 1 || cfg.grid.nq % 2 == 0 ||
      cfg.grid.np % 2 == 0)
    throw ConfigError(origin + ": nq and np must be odd positive counts");
  for (double t : cfg.snapshot_times)
    if (t < 0.0 || t > cfg.t_final)
      throw ConfigError(origin + ": snapshot_times must lie in [0, t_final]");

  // occupied Gaussian sits at the right plain minimum
  cfg.grid.center = {std::sqrt(8.0 * cfg.D), 0.0};
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void write_separatrix_csv(const std::filesystem::path& path,
                          const WellParams& params, int n_sweep) {
  CsvWriter csv(path, "q,p,variant");
  for (const bool ordered : {false, true}) {
    const auto pts = separatrix_points(ordered, params, n_sweep);
    for (const auto& pt : pts)
      csv.row({fmt(pt.q), fmt(pt.p), ordered ? "ordered" : "plain"});
  }
}

GridReport write_grid_report(const ExperimentConfig& cfg) {
  const WellParams well = cfg.well();
  const MadeGrid grid = make_grid(cfg.grid);
  const auto classes = classify_energies(grid.labels, well);

  std::filesystem::create_directories(cfg.out_dir);
  GridReport rep;
  rep.csv = std::filesystem::path(cfg.out_dir) / (cfg.scenario + "_grid.csv");
  CsvWriter csv(rep.csv,
                "label_index,q,p,energy_ordered,classification,occupied");
  for (std::size_t i = 0; i < grid.labels.size(); ++i) {
    const auto [q, p] = qp_from_label(grid.labels[i]);
    const double e = h_ord(std::conj(grid.labels[i]), grid.labels[i], well)
                         .real();
    csv.row({std::to_string(i), fmt(q), fmt(p), fmt(e),
             classes[i] == EnergyClass::below ? "below" : "above",
             i == grid.occupied ? "1" : "0"});
  }
  rep.total = grid.labels.size();
  rep.below = static_cast<std::size_t>(
      std::count(classes.begin(), classes.end(), EnergyClass::below));
  return rep;
}

ScenarioResult run_scenario(const ExperimentConfig& cfg) {
  const WellParams well = cfg.well();
  const OrderedDoubleWell symbol(well);
  const MadeGrid grid = make_grid(cfg.grid);
  const double q0 = std::sqrt(8.0 * cfg.D);
  const cplx beta = label_from_qp(-q0, 0.0);

  const long n_steps = std::lround(cfg.t_final / cfg.dt);
  if (n_steps < 1) throw ConfigError("run_scenario: t_final shorter than dt");
  const long stride =
      std::max<long>(1, std::lround(kOutputInterval / cfg.dt));

  // snapshot times must land on the sampling grid
  std::vector<long> snap_steps;
  for (double t : cfg.snapshot_times) {
    const long s = std::lround(t / cfg.dt);
    if (s % stride != 0 || std::abs(s * cfg.dt - t) > 1e-9)
      throw ConfigError(
          "run_scenario: snapshot_times must be multiples of the output "
          "interval 0.1");
    snap_steps.push_back(s);
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);

  ScenarioResult result;
  result.correlation_csv = dir / (cfg.scenario + "_correlation.csv");
  result.snapshot_csv = dir / (cfg.scenario + "_snapshots.csv");
  result.separatrix_csv = dir / (cfg.scenario + "_separatrix.csv");

  // reference propagation, sampled on the same time grid
  std::vector<double> sample_times;
  for (long s = 0; s <= n_steps; s += stride) sample_times.push_back(s * cfg.dt);
  if (sample_times.back() != n_steps * cfg.dt)
    sample_times.push_back(n_steps * cfg.dt);
  const ReferenceState psi0 = init_gaussian(q0, 0.0, SpatialGrid{});
  const std::vector<cplx> c_ref = correlation_reference(
      psi0, {-q0, 0.0}, sample_times, cfg.dt, PotentialKind::plain, well);

  // CCS propagation
  CCSOptions opt;
  opt.dt = cfg.dt;
  opt.n_steps = n_steps;
  opt.eps = cfg.eps;
  opt.snapshot_stride = stride;

  CCSState s0 = initial_state(grid.labels, grid.occupied);
  std::size_t sample_idx = 0;
  propagate_ccs(s0, symbol, opt, [&](const CCSState& s) {
    CorrelationRow row;
    row.t = s.t;
    row.c_ccs = cross_correlation(s, beta);
    row.norm_ccs = norm(s);
    row.abs_c_ref =
        sample_idx < c_ref.size() ? std::abs(c_ref[sample_idx]) : 0.0;
    ++sample_idx;
    result.series.push_back(row);

    const long step_now = std::lround(s.t / cfg.dt);
    if (std::find(snap_steps.begin(), snap_steps.end(), step_now) !=
        snap_steps.end()) {
      for (std::size_t l = 0; l < s.labels.size(); ++l) {
        const auto [q, p] = qp_from_label(s.labels[l]);
        result.snapshots.push_back(
            {s.t, static_cast<int>(l), q, p, s.coeffs[l]});
      }
    }
  });

  {
    CsvWriter csv(result.correlation_csv,
                  "t,re_c_ccs,im_c_ccs,abs_c_ccs,abs_c_ref,norm_ccs");
    for (const auto& r : result.series)
      csv.row({fmt(r.t), fmt(r.c_ccs.real()), fmt(r.c_ccs.imag()),
               fmt(std::abs(r.c_ccs)), fmt(r.abs_c_ref), fmt(r.norm_ccs)});
  }
  {
    CsvWriter csv(result.snapshot_csv, "t,label_index,q,p,re_a,im_a");
    for (const auto& r : result.snapshots)
      csv.row({fmt(r.t), std::to_string(r.label_index), fmt(r.q), fmt(r.p),
               fmt(r.a.real()), fmt(r.a.imag())});
  }
  write_separatrix_csv(result.separatrix_csv, well);
  return result;
}

}  // namespace dwell
