#pragma once

#include "envent/covariance.hpp"
#include "envent/gaussian_cv.hpp"
#include "envent/units.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace envent {

struct SweepAxis {
  std::string key;  // R_nm, r_nm, temperature_ratio, gamma_ghz, cutoff_ghz
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;
  bool log = false;

  // KEY=START:STOP:COUNT[:log]
  static SweepAxis parse(const std::string& text);
  std::string spec() const;
  std::vector<double> values() const;
  void validate() const;
};

const std::vector<std::string>& sweep_keys();
void apply_sweep_value(PhysicalConfig& cfg, const std::string& key, double value);

struct PointResult {
  DimensionlessConfig config;
  CovarianceMatrix covariance;
  EntanglementReport report;
  double wall_ms = 0.0;
};

PointResult run_point(const PhysicalConfig& cfg, const QuadratureSpec& quad = {}, const ClassifyOptions& cls = {});

// One CSV row. Pair and bipartition entries that do not exist for the system size are absent.
struct SweepRow {
  std::vector<double> swept;
  bool ok = false;
  std::optional<double> en_ab, en_ac, en_bc;
  std::optional<double> nu_ab, nu_ac, nu_bc;
  std::optional<bool> ppt_a_bc, ppt_ab_c, ppt_ac_b;
  std::string tripartite;
  std::optional<double> fidelity;
  std::optional<double> quad_error;
  double wall_ms = 0.0;
  std::string error;

  bool operator==(const SweepRow& o) const = default;
};

SweepRow make_row(const std::vector<double>& swept, const PointResult& p);

struct SweepOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  QuadratureSpec quad;
  ClassifyOptions classify;
  bool record_timing = true;  // false writes wall_ms = 0 so output is byte-reproducible
  std::ostream* progress = nullptr;
};

struct SweepResult {
  PhysicalConfig base;
  std::vector<SweepAxis> axes;
  std::vector<SweepRow> rows;

  std::size_t failed() const;
};

const std::vector<std::string>& sweep_result_columns();

// Row-major grid (last axis fastest). Rows are handed to on_row in grid order.
SweepResult run_sweep(const PhysicalConfig& base, const std::vector<SweepAxis>& axes, const SweepOptions& opts,
                      const std::function<void(const SweepRow&)>& on_row = {});

void write_sweep_header(std::ostream& os, const PhysicalConfig& base, const std::vector<SweepAxis>& axes,
                        const QuadratureSpec& quad);
void write_sweep_row(std::ostream& os, const SweepRow& row);
void write_sweep_csv(std::ostream& os, const SweepResult& r, const QuadratureSpec& quad = {});
SweepResult read_sweep_csv(std::istream& is);

}  // namespace envent
