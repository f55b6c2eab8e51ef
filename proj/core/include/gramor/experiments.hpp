#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gramor/reduce.hpp"

namespace gramor {

enum class ExperimentKind { verify, symmetric, nonsquare, nonsymmetric };

const char* experiment_kind_name(ExperimentKind kind);

// Configuration shared by the verification check and the three reduction
// experiments. m and o left at 0 take the kind's defaults (symmetric and
// nonsymmetric: m = o = 8; nonsquare: m = 4, o = 8); an empty orders list
// means the full sweep 1..n.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::verify;
  std::size_t n = 64;
  std::size_t m = 0;
  std::size_t o = 0;
  std::uint64_t seed = 1;
  double dt = 0.01;
  double horizon = 10.0;
  std::vector<std::size_t> orders;
  std::string out_dir = ".";
  bool plot = false;
  std::string symmetrizer_path;  // optional matrix file with J for the embedding
};

// Resolved copy: kind-specific channel defaults applied, orders filled in,
// basic consistency enforced (square experiments require m == o).
ExperimentConfig with_defaults(ExperimentConfig cfg);

// "a:b:step" -> {a, a+step, ..., <= b}; rejects malformed specs.
std::vector<std::size_t> parse_orders(const std::string& spec);

struct VerifyReport {
  double discrepancy = 0.0;
  double threshold = 1e-10;
  bool pass = false;
};

// Builds the state-space symmetric Lehmer system and compares the
// non-symmetric cross gramian computed by subsystem summation against the
// averaged-system fast path (Frobenius norm of the difference).
VerifyReport run_verify(const ExperimentConfig& cfg);

struct ExperimentArtifacts {
  RomReport report;
  std::string csv_path;
  std::string svg_path;  // empty unless plotting was requested
};

// Generates the experiment's system, computes its gramian set, sweeps the
// reduction methods over the orders, and writes <kind>.csv (and <kind>.svg
// with --plot) into out_dir via write-then-rename.
ExperimentArtifacts run_experiment(const ExperimentConfig& cfg);

// Self-contained SVG line chart of an error sweep: linear order axis,
// log10 error axis, one polyline per method (split at unavailable orders).
std::string render_svg(const RomReport& report, const std::string& title);

}  // namespace gramor
