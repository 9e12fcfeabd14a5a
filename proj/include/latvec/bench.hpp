#pragma once

// Run-configuration, verification and timing harness behind the CLI:
// builds seeded random fields, runs the hopping term in the configured
// width/precision/strategy, checks against the scalar reference, and emits
// CSV report rows.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latvec/dslash.hpp"
#include "latvec/field_io.hpp"

namespace latvec {

// Invalid run configuration; the CLI maps this to exit code 2. The message
// names the violated constraint.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { verify, bench, dump };

inline const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::verify: return "verify";
    case RunMode::bench: return "bench";
    case RunMode::dump: return "dump";
  }
  return "?";
}

struct BenchConfig {
  std::array<int, 4> dims{8, 8, 8, 16};
  int width_bits = 512;
  ElemKind kind = ElemKind::f64;
  std::optional<int> lanes; // layout override; default derives from width
  Strategy strategy = Strategy::fcmla;
  long iters = 100;
  std::uint64_t seed = 42;
  RunMode mode = RunMode::verify;
  std::string csv_path;
  std::string dump_path;
  bool inject_fault = false; // self-test hook: perturbs one site before checking
};

struct ReportRow {
  Strategy strategy = Strategy::fcmla;
  ElemKind precision = ElemKind::f64;
  int width_bits = 0;
  int lanes = 0;
  std::array<int, 4> dims{};
  long iters = 0;
  double wall_seconds = 0;
  double gflops_model = 0;
  double checksum = 0;
  double max_rel_err = -1; // -1: not computed (bench/dump modes)
};

struct RunResult {
  ReportRow row;
  bool passed = true;
};

inline double verify_tolerance(ElemKind kind) {
  return kind == ElemKind::f64 ? 1e-11 : 5e-4;
}

// ---------------------------------------------------------------------------
// Configuration checking. Fails with a message naming the constraint.

struct ResolvedConfig {
  BenchConfig cfg;
  Geometry geometry;
  LaneShape shape;
  int lanes = 1;
};

inline ResolvedConfig resolve_config(const BenchConfig& cfg) {
  ResolvedConfig r{cfg, {}, {}, 1};
  try {
    r.geometry = make_geometry(cfg.dims);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid --dims: ") + e.what());
  }
  try {
    r.shape = make_shape(cfg.kind, cfg.width_bits);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid --width: ") + e.what());
  }
  if (r.shape.complex_lanes() > 16)
    throw UsageError("unsupported width/precision combination: lanes exceed 16 (" +
                     std::string(to_string(cfg.kind)) + " at " + std::to_string(cfg.width_bits) +
                     " bits has " + std::to_string(r.shape.complex_lanes()) + " complex lanes)");
  r.lanes = cfg.lanes.value_or(r.shape.complex_lanes());
  if (r.lanes < 1 || r.lanes > 16 || (r.lanes & (r.lanes - 1)) != 0)
    throw UsageError("lane count must be 1, 2, 4, 8 or 16; " + std::to_string(r.lanes) +
                     (cfg.lanes ? " was requested" : " is derived from the vector width; pass --lanes"));
  try {
    make_layout(r.geometry, r.lanes);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("lanes not realizable for these dims: ") + e.what());
  }
  if (cfg.mode == RunMode::bench && cfg.iters < 1)
    throw UsageError("--iters must be at least 1 in bench mode");
  if (cfg.mode == RunMode::dump && cfg.dump_path.empty())
    throw UsageError("dump mode requires --dump PATH");
  return r;
}

// ---------------------------------------------------------------------------

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename T>
ReportRow base_row(const ResolvedConfig& rc) {
  ReportRow row;
  row.strategy = rc.cfg.strategy;
  row.precision = rc.cfg.kind;
  row.width_bits = rc.cfg.width_bits;
  row.lanes = rc.lanes;
  row.dims = rc.cfg.dims;
  row.iters = 1;
  return row;
}

// One application of the configured operator; fields are generated and
// packed outside the timed section.
template <typename T>
SpinorField<T> apply_once(const ResolvedConfig& rc, const GaugeField<T>& u,
                          const SpinorField<T>& psi, double* wall) {
  const auto t0 = std::chrono::steady_clock::now();
  if (rc.cfg.strategy == Strategy::scalar_ref) {
    SpinorField<T> out = dslash_ref(u, psi);
    *wall = seconds_since(t0);
    return out;
  }
  const VirtualNodeLayout ly = make_layout(rc.geometry, rc.lanes);
  const PackedGaugeField<T> pu = pack_gauge(ly, u);
  const PackedSpinorField<T> ppsi = pack_spinor(ly, psi);
  const auto t1 = std::chrono::steady_clock::now();
  PackedSpinorField<T> pout = dslash_vec(pu, ppsi, rc.cfg.strategy, rc.shape);
  *wall = seconds_since(t1);
  return unpack_spinor(pout);
}

template <typename T>
RunResult run_verify_impl(const ResolvedConfig& rc) {
  const GaugeField<T> u = random_gauge_field<T>(rc.geometry, rc.cfg.seed);
  const SpinorField<T> psi = random_spinor_field<T>(rc.geometry, rc.cfg.seed);
  const SpinorField<T> ref = dslash_ref(u, psi);

  ReportRow row = base_row<T>(rc);
  SpinorField<T> vec = apply_once(rc, u, psi, &row.wall_seconds);
  if (rc.cfg.inject_fault) vec.data[0] += std::complex<T>(T(1e-6), T(0));

  row.max_rel_err = max_rel_deviation(vec, ref);
  row.checksum = norm_sq(vec);
  row.gflops_model =
      row.wall_seconds > 0 ? kFlopsPerSite * double(rc.geometry.volume()) / row.wall_seconds / 1e9
                           : 0;
  if (!rc.cfg.dump_path.empty()) write_spinor_dump_file(rc.cfg.dump_path, vec);
  return {row, row.max_rel_err <= verify_tolerance(rc.cfg.kind)};
}

template <typename T>
RunResult run_bench_impl(const ResolvedConfig& rc) {
  const GaugeField<T> u = random_gauge_field<T>(rc.geometry, rc.cfg.seed);
  const SpinorField<T> psi = random_spinor_field<T>(rc.geometry, rc.cfg.seed);

  ReportRow row = base_row<T>(rc);
  row.iters = rc.cfg.iters;

  SpinorField<T> last(rc.geometry);
  if (rc.cfg.strategy == Strategy::scalar_ref) {
    const auto t0 = std::chrono::steady_clock::now();
    for (long i = 0; i < rc.cfg.iters; ++i) last = dslash_ref(u, psi);
    row.wall_seconds = seconds_since(t0);
  } else {
    const VirtualNodeLayout ly = make_layout(rc.geometry, rc.lanes);
    const PackedGaugeField<T> pu = pack_gauge(ly, u);
    const PackedSpinorField<T> ppsi = pack_spinor(ly, psi);
    PackedSpinorField<T> pout{ly, {}};
    const auto t0 = std::chrono::steady_clock::now();
    for (long i = 0; i < rc.cfg.iters; ++i) pout = dslash_vec(pu, ppsi, rc.cfg.strategy, rc.shape);
    row.wall_seconds = seconds_since(t0);
    last = unpack_spinor(pout);
  }
  row.checksum = norm_sq(last);
  row.gflops_model = row.wall_seconds > 0
                         ? kFlopsPerSite * double(rc.geometry.volume()) * double(rc.cfg.iters) /
                               row.wall_seconds / 1e9
                         : 0;
  if (!rc.cfg.dump_path.empty()) write_spinor_dump_file(rc.cfg.dump_path, last);
  return {row, true};
}

template <typename T>
RunResult run_dump_impl(const ResolvedConfig& rc) {
  const GaugeField<T> u = random_gauge_field<T>(rc.geometry, rc.cfg.seed);
  const SpinorField<T> psi = random_spinor_field<T>(rc.geometry, rc.cfg.seed);
  ReportRow row = base_row<T>(rc);
  const SpinorField<T> out = apply_once(rc, u, psi, &row.wall_seconds);
  row.checksum = norm_sq(out);
  row.gflops_model =
      row.wall_seconds > 0 ? kFlopsPerSite * double(rc.geometry.volume()) / row.wall_seconds / 1e9
                           : 0;
  write_spinor_dump_file(rc.cfg.dump_path, out);
  return {row, true};
}

} // namespace detail

inline RunResult run(const BenchConfig& cfg) {
  const ResolvedConfig rc = resolve_config(cfg);
  switch (cfg.mode) {
    case RunMode::verify:
      return cfg.kind == ElemKind::f64 ? detail::run_verify_impl<double>(rc)
                                       : detail::run_verify_impl<float>(rc);
    case RunMode::bench:
      return cfg.kind == ElemKind::f64 ? detail::run_bench_impl<double>(rc)
                                       : detail::run_bench_impl<float>(rc);
    case RunMode::dump:
      return cfg.kind == ElemKind::f64 ? detail::run_dump_impl<double>(rc)
                                       : detail::run_dump_impl<float>(rc);
  }
  throw UsageError("unknown run mode");
}

inline RunResult run_verify(const BenchConfig& cfg) {
  BenchConfig c = cfg;
  c.mode = RunMode::verify;
  return run(c);
}

inline RunResult run_bench(const BenchConfig& cfg) {
  BenchConfig c = cfg;
  c.mode = RunMode::bench;
  return run(c);
}

// ---------------------------------------------------------------------------
// CSV report. Stable column order, floats at 17 significant digits.

inline std::string csv_header() {
  return "strategy,precision,width_bits,lanes,dims,iters,wall_seconds,gflops_model,checksum,"
         "max_rel_err";
}

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string dims_string(const std::array<int, 4>& dims) {
  return std::to_string(dims[0]) + "X" + std::to_string(dims[1]) + "X" + std::to_string(dims[2]) +
         "X" + std::to_string(dims[3]);
}

inline std::string emit_csv(std::span<const ReportRow> rows) {
  std::string out = csv_header() + "\n";
  for (const ReportRow& r : rows) {
    out += std::string(to_string(r.strategy)) + ',' + to_string(r.precision) + ',' +
           std::to_string(r.width_bits) + ',' + std::to_string(r.lanes) + ',' +
           dims_string(r.dims) + ',' + std::to_string(r.iters) + ',' +
           format_g17(r.wall_seconds) + ',' + format_g17(r.gflops_model) + ',' +
           format_g17(r.checksum) + ',' + format_g17(r.max_rel_err) + '\n';
  }
  return out;
}

} // namespace latvec
