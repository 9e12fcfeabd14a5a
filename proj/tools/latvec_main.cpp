// latvec command-line harness: verification runs, timed sweeps and field
// dumps of the vectorized Wilson hopping term.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latvec/bench.hpp"

namespace {

latvec::Strategy parse_strategy(const std::string& s) {
  if (s == "fcmla") return latvec::Strategy::fcmla;
  if (s == "deinterleave") return latvec::Strategy::deinterleave;
  if (s == "real_permute") return latvec::Strategy::real_permute;
  if (s == "scalar_ref") return latvec::Strategy::scalar_ref;
  throw latvec::UsageError("unknown --strategy '" + s +
                           "' (expected fcmla|deinterleave|real_permute|scalar_ref)");
}

latvec::RunMode parse_mode(const std::string& s) {
  if (s == "verify") return latvec::RunMode::verify;
  if (s == "bench") return latvec::RunMode::bench;
  if (s == "dump") return latvec::RunMode::dump;
  throw latvec::UsageError("unknown --mode '" + s + "' (expected verify|bench|dump)");
}

latvec::ElemKind parse_prec(const std::string& s) {
  if (s == "f64") return latvec::ElemKind::f64;
  if (s == "f32") return latvec::ElemKind::f32;
  throw latvec::UsageError("unknown --prec '" + s + "' (expected f64|f32)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Width-generic vectorized Wilson hopping term: verify, bench, dump"};

  std::vector<int> dims{8, 8, 8, 16};
  int width = 512;
  std::string prec = "f64";
  std::string strategy = "fcmla";
  int lanes = 0; // 0: derive from width
  long iters = 100;
  std::uint64_t seed = 42;
  std::string mode = "verify";
  std::string csv_path, dump_path;
  bool inject_fault = false;

  app.add_option("--dims", dims, "lattice extents x,y,z,t")->delimiter(',')->expected(4);
  app.add_option("--width", width, "vector register width in bits");
  app.add_option("--prec", prec, "element precision: f64|f32");
  app.add_option("--strategy", strategy,
                 "complex arithmetic: fcmla|deinterleave|real_permute|scalar_ref");
  app.add_option("--lanes", lanes, "virtual-node count override (default: width/precision)");
  app.add_option("--iters", iters, "kernel applications in bench mode");
  app.add_option("--seed", seed, "seed for the deterministic random fields");
  app.add_option("--mode", mode, "verify|bench|dump");
  app.add_option("--csv", csv_path, "append-free CSV report path");
  app.add_option("--dump", dump_path, "field dump path for the result spinor");
  app.add_flag("--inject-fault", inject_fault,
               "perturb one site of the result before checking (self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    latvec::BenchConfig cfg;
    cfg.dims = {dims[0], dims[1], dims[2], dims[3]};
    cfg.width_bits = width;
    cfg.kind = parse_prec(prec);
    cfg.strategy = parse_strategy(strategy);
    if (lanes != 0) cfg.lanes = lanes;
    cfg.iters = iters;
    cfg.seed = seed;
    cfg.mode = parse_mode(mode);
    cfg.csv_path = csv_path;
    cfg.dump_path = dump_path;
    cfg.inject_fault = inject_fault;

    const latvec::RunResult result = latvec::run(cfg);
    const std::string csv = latvec::emit_csv(std::span<const latvec::ReportRow>(&result.row, 1));
    std::cout << csv;
    if (!csv_path.empty()) {
      std::ofstream os(csv_path);
      if (!os) throw std::runtime_error("cannot open CSV path: " + csv_path);
      os << csv;
    }
    if (cfg.mode == latvec::RunMode::verify) {
      std::cerr << (result.passed ? "verify: PASS" : "verify: FAIL") << " (max_rel_err "
                << latvec::format_g17(result.row.max_rel_err) << ", tolerance "
                << latvec::format_g17(latvec::verify_tolerance(cfg.kind)) << ")\n";
      return result.passed ? 0 : 1;
    }
    return 0;
  } catch (const latvec::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
