#include "envent/sweep.hpp"

#include "envent/config_io.hpp"
#include "envent/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace envent {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("cannot parse " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
std::string fmt(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : std::string(); }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_q = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_q) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_q = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_q = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<double> opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, "csv value");
}

std::optional<bool> opt_bool(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "1") return true;
  if (s == "0") return false;
  throw ConfigError("bad boolean csv value '" + s + "'");
}

const std::string kConfigTag = "# config: ";
const std::string kAxisTag = "# axis: ";

}  // namespace

const std::vector<std::string>& sweep_keys() {
  static const std::vector<std::string> k = {"R_nm", "r_nm", "temperature_ratio", "gamma_ghz", "cutoff_ghz"};
  return k;
}

SweepAxis SweepAxis::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep axis must look like KEY=START:STOP:COUNT[:log]");
  SweepAxis a;
  a.key = text.substr(0, eq);
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3 && parts.size() != 4) throw ConfigError("sweep axis must look like KEY=START:STOP:COUNT[:log]");
  a.start = parse_double(parts[0], "sweep start");
  a.stop = parse_double(parts[1], "sweep stop");
  const double c = parse_double(parts[2], "sweep count");
  if (c != std::floor(c) || c < 0) throw ConfigError("sweep count must be a whole number");
  a.count = static_cast<std::size_t>(c);
  if (parts.size() == 4) {
    if (parts[3] == "log")
      a.log = true;
    else if (parts[3] != "lin")
      throw ConfigError("sweep spacing must be 'log' or 'lin'");
  }
  a.validate();
  return a;
}

std::string SweepAxis::spec() const {
  return key + "=" + fmt(start) + ":" + fmt(stop) + ":" + std::to_string(count) + (log ? ":log" : "");
}

void SweepAxis::validate() const {
  const auto& k = sweep_keys();
  if (std::find(k.begin(), k.end(), key) == k.end()) throw ConfigError("unknown sweep key '" + key + "'");
  if (count < 2) throw ConfigError("sweep axis needs at least two points");
  if (!(start < stop)) throw ConfigError("sweep axis needs start < stop");
  if (log && !(start > 0.0)) throw ConfigError("log spacing needs a positive start");
}

std::vector<double> SweepAxis::values() const {
  validate();
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start))) : start + t * (stop - start);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

void apply_sweep_value(PhysicalConfig& cfg, const std::string& key, double value) {
  if (key == "R_nm")
    cfg.geometry.R = value * constants::nm;
  else if (key == "r_nm")
    cfg.geometry.r = value * constants::nm;
  else if (key == "temperature_ratio")
    cfg.temperature = Temperature::ratio(value);
  else if (key == "gamma_ghz")
    cfg.coupling = value * constants::ghz;
  else if (key == "cutoff_ghz")
    cfg.cutoff = value * constants::ghz;
  else
    throw ConfigError("unknown sweep key '" + key + "'");
}

PointResult run_point(const PhysicalConfig& cfg, const QuadratureSpec& quad, const ClassifyOptions& cls) {
  const auto t0 = std::chrono::steady_clock::now();
  PointResult p;
  p.config = to_dimensionless(cfg);
  p.covariance = covariance_blocks(p.config, quad);
  p.report = make_report(p.covariance.G(), p.config, cls);
  p.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return p;
}

SweepRow make_row(const std::vector<double>& swept, const PointResult& p) {
  SweepRow r;
  r.swept = swept;
  r.ok = true;
  const auto& rep = p.report;
  const std::size_t n = rep.n;
  auto pair = [&](std::size_t i, std::size_t j, std::optional<double>& en, std::optional<double>& nu) {
    if (j < n) {
      en = rep.log_negativity(i, j);
      nu = rep.nu_minus(i, j);
    }
  };
  pair(0, 1, r.en_ab, r.nu_ab);
  pair(0, 2, r.en_ac, r.nu_ac);
  pair(1, 2, r.en_bc, r.nu_bc);
  if (rep.ppt.size() == 3) {
    r.ppt_a_bc = rep.ppt[0].separable;
    r.ppt_ab_c = rep.ppt[1].separable;
    r.ppt_ac_b = rep.ppt[2].separable;
  }
  if (rep.tripartite) r.tripartite = to_string(*rep.tripartite);
  r.fidelity = rep.fidelity;
  r.quad_error = p.covariance.max_error();
  r.wall_ms = p.wall_ms;
  return r;
}

std::size_t SweepResult::failed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; }));
}

const std::vector<std::string>& sweep_result_columns() {
  static const std::vector<std::string> c = {
      "status",      "E_N.AB",      "E_N.AC",   "E_N.BC",   "nu_minus.AB", "nu_minus.AC",
      "nu_minus.BC", "ppt.A|BC",    "ppt.AB|C", "ppt.AC|B", "class",       "fidelity",
      "quad_error",  "wall_ms",     "error"};
  return c;
}

SweepResult run_sweep(const PhysicalConfig& base, const std::vector<SweepAxis>& axes, const SweepOptions& opts,
                      const std::function<void(const SweepRow&)>& on_row) {
  if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep takes one or two axes");
  if (axes.size() == 2 && axes[0].key == axes[1].key) throw ConfigError("sweep axes must differ");
  for (const auto& a : axes) a.validate();
  opts.quad.validate();

  std::vector<std::vector<double>> grid;
  const auto v0 = axes[0].values();
  if (axes.size() == 1) {
    for (double a : v0) grid.push_back({a});
  } else {
    const auto v1 = axes[1].values();
    for (double a : v0)
      for (double b : v1) grid.push_back({a, b});
  }

  SweepResult res;
  res.base = base;
  res.axes = axes;
  res.rows.resize(grid.size());
  std::vector<char> ready(grid.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      SweepRow row;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        PhysicalConfig cfg = base;
        for (std::size_t k = 0; k < axes.size(); ++k) apply_sweep_value(cfg, axes[k].key, grid[i][k]);
        row = make_row(grid[i], run_point(cfg, opts.quad, opts.classify));
      } catch (const std::exception& e) {
        row = SweepRow{};
        row.swept = grid[i];
        row.ok = false;
        row.error = e.what();
      }
      row.wall_ms = opts.record_timing
                        ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
                        : 0.0;
      {
        std::lock_guard<std::mutex> lock(mu);
        res.rows[i] = std::move(row);
        ready[i] = 1;
      }
      cv.notify_all();
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);

  // single writer: hand rows over in grid order
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return ready[i] != 0; });
    const SweepRow& row = res.rows[i];
    lock.unlock();
    if (on_row) on_row(row);
    if (opts.progress) {
      *opts.progress << "[" << i + 1 << "/" << grid.size() << "]";
      for (std::size_t k = 0; k < axes.size(); ++k) *opts.progress << " " << axes[k].key << "=" << row.swept[k];
      *opts.progress << (row.ok ? " ok" : " failed: " + row.error) << "\n";
    }
  }
  for (auto& t : pool) t.join();
  return res;
}

void write_sweep_header(std::ostream& os, const PhysicalConfig& base, const std::vector<SweepAxis>& axes,
                        const QuadratureSpec& quad) {
  os << "# envent sweep\n";
  os << kConfigTag << dump_config(base) << "\n";
  for (const auto& a : axes) os << kAxisTag << a.spec() << "\n";
  os << "# quadrature: rtol=" << fmt(quad.rtol) << " atol=" << fmt(quad.atol) << "\n";
  for (std::size_t k = 0; k < axes.size(); ++k) os << axes[k].key << ",";
  const auto& cols = sweep_result_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << "\n";
}

void write_sweep_row(std::ostream& os, const SweepRow& r) {
  for (double v : r.swept) os << fmt(v) << ",";
  os << (r.ok ? "ok" : "failed") << ",";
  os << fmt(r.en_ab) << "," << fmt(r.en_ac) << "," << fmt(r.en_bc) << ",";
  os << fmt(r.nu_ab) << "," << fmt(r.nu_ac) << "," << fmt(r.nu_bc) << ",";
  os << fmt(r.ppt_a_bc) << "," << fmt(r.ppt_ab_c) << "," << fmt(r.ppt_ac_b) << ",";
  os << r.tripartite << "," << fmt(r.fidelity) << "," << fmt(r.quad_error) << "," << fmt(r.wall_ms) << ",";
  os << quote(r.error) << "\n";
  os.flush();
}

void write_sweep_csv(std::ostream& os, const SweepResult& r, const QuadratureSpec& quad) {
  write_sweep_header(os, r.base, r.axes, quad);
  for (const auto& row : r.rows) write_sweep_row(os, row);
}

SweepResult read_sweep_csv(std::istream& is) {
  SweepResult res;
  std::string line;
  bool have_config = false, have_header = false;
  const std::size_t ncols = sweep_result_columns().size();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(kConfigTag, 0) == 0) {
        res.base = parse_config(line.substr(kConfigTag.size()));
        have_config = true;
      } else if (line.rfind(kAxisTag, 0) == 0) {
        res.axes.push_back(SweepAxis::parse(line.substr(kAxisTag.size())));
      }
      continue;
    }
    const auto f = parse_csv_line(line);
    if (!have_header) {
      if (f.size() != res.axes.size() + ncols) throw ConfigError("sweep csv header does not match its axes");
      for (std::size_t k = 0; k < res.axes.size(); ++k)
        if (f[k] != res.axes[k].key) throw ConfigError("sweep csv header does not match its axes");
      have_header = true;
      continue;
    }
    if (f.size() != res.axes.size() + ncols) throw ConfigError("sweep csv row has the wrong number of fields");
    SweepRow r;
    std::size_t c = 0;
    for (std::size_t k = 0; k < res.axes.size(); ++k) r.swept.push_back(parse_double(f[c++], "swept value"));
    r.ok = f[c++] == "ok";
    r.en_ab = opt_double(f[c++]);
    r.en_ac = opt_double(f[c++]);
    r.en_bc = opt_double(f[c++]);
    r.nu_ab = opt_double(f[c++]);
    r.nu_ac = opt_double(f[c++]);
    r.nu_bc = opt_double(f[c++]);
    r.ppt_a_bc = opt_bool(f[c++]);
    r.ppt_ab_c = opt_bool(f[c++]);
    r.ppt_ac_b = opt_bool(f[c++]);
    r.tripartite = f[c++];
    r.fidelity = opt_double(f[c++]);
    r.quad_error = opt_double(f[c++]);
    r.wall_ms = parse_double(f[c++], "wall_ms");
    r.error = f[c++];
    res.rows.push_back(std::move(r));
  }
  if (!have_config) throw ConfigError("sweep csv has no config metadata line");
  if (!have_header) throw ConfigError("sweep csv has no header");
  return res;
}

}  // namespace envent
