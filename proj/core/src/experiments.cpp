#include "gramor/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gramor/gramians.hpp"
#include "gramor/model_io.hpp"

namespace gramor {

namespace {

template <typename Fn>
auto stage(const ExperimentConfig& cfg, const char* what, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("experiment ") +
                             experiment_kind_name(cfg.experiment) + ": " + what + ": " +
                             e.what());
  }
}

std::vector<RomMethod> methods_for(ExperimentKind kind) {
  if (kind == ExperimentKind::nonsquare) {
    return {RomMethod::balanced_truncation, RomMethod::embedding_cross_gramian,
            RomMethod::nonsym_cross_gramian};
  }
  return {RomMethod::balanced_truncation, RomMethod::cross_gramian,
          RomMethod::nonsym_cross_gramian};
}

LtiSystem build_system(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::verify:
    case ExperimentKind::symmetric:
      return lehmer_system(cfg.n, cfg.m, cfg.seed);
    case ExperimentKind::nonsquare:
      return random_system(cfg.n, cfg.m, cfg.o, cfg.seed, AMode::lehmer);
    case ExperimentKind::nonsymmetric:
      return random_system(cfg.n, cfg.m, cfg.o, cfg.seed, AMode::stable_random);
  }
  throw std::invalid_argument("build_system: unknown experiment kind");
}

GramianSet build_gramians(const ExperimentConfig& cfg, const LtiSystem& sys,
                          const SimGrid& grid) {
  GramianSet gs;
  gs.grid = grid;
  gs.wc = GramianEntry{wc_empirical(sys, grid), GramianMethod::empirical};
  gs.wo = GramianEntry{wo_empirical(sys, grid), GramianMethod::empirical};
  if (cfg.experiment == ExperimentKind::nonsquare) {
    Matrix j = cfg.symmetrizer_path.empty() ? identity(sys.n)
                                            : read_matrix_file(cfg.symmetrizer_path);
    gs.wx_embed = GramianEntry{wx_embedding(sys, j, grid), GramianMethod::empirical};
  } else {
    gs.wx = GramianEntry{wx_empirical(sys, grid), GramianMethod::empirical};
  }
  gs.wz = GramianEntry{wz_nonsymmetric(sys, grid, WzPath::averaged_fast_path),
                       GramianMethod::averaged_fast_path};
  return gs;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

const char* method_color(RomMethod method) {
  switch (method) {
    case RomMethod::balanced_truncation:
      return "#1f77b4";
    case RomMethod::cross_gramian:
      return "#d62728";
    case RomMethod::nonsym_cross_gramian:
      return "#2ca02c";
    case RomMethod::embedding_cross_gramian:
      return "#9467bd";
  }
  return "#000000";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::verify:
      return "verify";
    case ExperimentKind::symmetric:
      return "symmetric";
    case ExperimentKind::nonsquare:
      return "nonsquare";
    case ExperimentKind::nonsymmetric:
      return "nonsymmetric";
  }
  throw std::invalid_argument("experiment_kind_name: unknown kind");
}

ExperimentConfig with_defaults(ExperimentConfig cfg) {
  if (cfg.n == 0) throw std::invalid_argument("config: n must be positive");
  const bool square_kind = cfg.experiment != ExperimentKind::nonsquare;
  if (cfg.m == 0) cfg.m = square_kind ? 8 : 4;
  if (cfg.o == 0) cfg.o = square_kind ? cfg.m : 8;
  if (square_kind && cfg.m != cfg.o) {
    throw std::invalid_argument(std::string("config: the ") +
                                experiment_kind_name(cfg.experiment) +
                                " experiment requires m == o, got m = " +
                                std::to_string(cfg.m) + ", o = " + std::to_string(cfg.o));
  }
  if (cfg.orders.empty()) {
    for (std::size_t k = 1; k <= cfg.n; ++k) cfg.orders.push_back(k);
  }
  for (std::size_t k : cfg.orders) {
    if (k == 0 || k > cfg.n) {
      throw std::invalid_argument("config: order " + std::to_string(k) +
                                  " out of range 1.." + std::to_string(cfg.n));
    }
  }
  return cfg;
}

std::vector<std::size_t> parse_orders(const std::string& spec) {
  std::size_t a = 0, b = 0, step = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%zu:%zu:%zu%c", &a, &b, &step, &tail) != 3 || a == 0 ||
      step == 0 || b < a) {
    throw std::invalid_argument("orders: expected a:b:step with 1 <= a <= b and step >= 1, got \"" +
                                spec + "\"");
  }
  std::vector<std::size_t> orders;
  for (std::size_t k = a; k <= b; k += step) orders.push_back(k);
  return orders;
}

VerifyReport run_verify(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  cfg.experiment = ExperimentKind::verify;
  cfg = with_defaults(std::move(cfg));
  return stage(cfg, "verification", [&] {
    LtiSystem sys = build_system(cfg);
    SimGrid grid = make_grid(cfg.dt, cfg.horizon);
    Matrix slow = wz_nonsymmetric(sys, grid, WzPath::subsystem_sum);
    Matrix fast = wz_nonsymmetric(sys, grid, WzPath::averaged_fast_path);
    VerifyReport report;
    report.discrepancy = fro_norm(sub(slow, fast));
    report.pass = report.discrepancy <= report.threshold;
    return report;
  });
}

ExperimentArtifacts run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = with_defaults(raw);
  if (cfg.experiment == ExperimentKind::verify) {
    throw std::invalid_argument("run_experiment: the verify command has no sweep; use run_verify");
  }

  LtiSystem sys = stage(cfg, "system generation", [&] { return build_system(cfg); });
  SimGrid grid = make_grid(cfg.dt, cfg.horizon);
  GramianSet gramians =
      stage(cfg, "gramian computation", [&] { return build_gramians(cfg, sys, grid); });
  RomReport report = stage(cfg, "error sweep", [&] {
    return error_sweep(sys, grid, gramians, cfg.orders, methods_for(cfg.experiment));
  });

  ExperimentArtifacts artifacts;
  artifacts.report = std::move(report);
  stage(cfg, "artifact write", [&] {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string base =
        (std::filesystem::path(cfg.out_dir) / experiment_kind_name(cfg.experiment)).string();
    artifacts.csv_path = base + ".csv";
    write_file_atomic(artifacts.csv_path, rom_report_csv(artifacts.report));
    if (cfg.plot) {
      char title[160];
      std::snprintf(title, sizeof title, "%s experiment: n=%zu, m=%zu, o=%zu, seed=%llu",
                    experiment_kind_name(cfg.experiment), cfg.n, cfg.m, cfg.o,
                    static_cast<unsigned long long>(cfg.seed));
      artifacts.svg_path = base + ".svg";
      write_file_atomic(artifacts.svg_path, render_svg(artifacts.report, title));
    }
    return 0;
  });
  return artifacts;
}

std::string render_svg(const RomReport& report, const std::string& title) {
  const double width = 760.0, height = 520.0;
  const double left = 70.0, right = width - 180.0, top = 48.0, bottom = height - 64.0;

  // Order axis limits and log-decade error limits from the valid data.
  std::size_t max_order = 1;
  double lo = 1.0, hi = 1e-16;
  bool any = false;
  for (std::size_t k = 0; k < report.orders.size(); ++k) {
    max_order = std::max(max_order, report.orders[k]);
    for (const RomCurve& curve : report.curves) {
      if (!curve.valid[k]) continue;
      const double e = std::max(curve.errors[k], 1e-16);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      any = true;
    }
  }
  if (!any) {
    lo = 1e-16;
    hi = 1.0;
  }
  const double dec_lo = std::floor(std::log10(lo));
  const double dec_hi = std::ceil(std::log10(hi) + 1e-9);
  const double decades = std::max(dec_hi - dec_lo, 1.0);

  const auto x_of = [&](double order) {
    return left + (right - left) * (max_order <= 1 ? 0.5 : (order - 1.0) / (max_order - 1.0));
  };
  const auto y_of = [&](double err) {
    const double d = std::log10(std::max(err, 1e-16));
    return bottom - (bottom - top) * (d - dec_lo) / decades;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(left) + "\" y=\"24\" font-size=\"15\" fill=\"#111\">" + title +
         "</text>\n";

  // Horizontal decade grid and labels.
  for (double d = dec_lo; d <= dec_hi + 1e-9; d += 1.0) {
    const double y = y_of(std::pow(10.0, d));
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(right) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(left - 8.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"#333\">1e" +
           std::to_string(static_cast<long>(d)) + "</text>\n";
  }
  // Order ticks.
  const std::size_t tick = std::max<std::size_t>(1, max_order / 8);
  for (std::size_t k = 1; k <= max_order; k += tick) {
    const double x = x_of(static_cast<double>(k));
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(bottom + 5.0) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(bottom + 20.0) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333\">" + std::to_string(k) +
           "</text>\n";
  }
  svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(left) +
         "\" y2=\"" + fmt(bottom) + "\" stroke=\"#333\"/>\n";
  svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" + fmt(right) +
         "\" y2=\"" + fmt(bottom) + "\" stroke=\"#333\"/>\n";
  svg += "<text x=\"" + fmt((left + right) / 2.0) + "\" y=\"" + fmt(height - 20.0) +
         "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\">reduced order n</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt((top + bottom) / 2.0) +
         "\" font-size=\"13\" fill=\"#111\" transform=\"rotate(-90 20 " +
         fmt((top + bottom) / 2.0) + ")\" text-anchor=\"middle\">relative L2 error</text>\n";

  // One polyline per contiguous valid run of each method.
  double legend_y = top + 10.0;
  for (const RomCurve& curve : report.curves) {
    const char* color = method_color(curve.method);
    std::string points;
    const auto flush = [&] {
      if (points.empty()) return;
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t k = 0; k < report.orders.size(); ++k) {
      if (!curve.valid[k]) {
        flush();
        continue;
      }
      points += fmt(x_of(static_cast<double>(report.orders[k]))) + "," +
                fmt(y_of(curve.errors[k])) + " ";
    }
    flush();
    svg += "<line x1=\"" + fmt(right + 12.0) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" +
           fmt(right + 34.0) + "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(right + 40.0) + "\" y=\"" + fmt(legend_y + 4.0) +
           "\" font-size=\"11\" fill=\"#333\">" + rom_method_name(curve.method) + "</text>\n";
    legend_y += 18.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gramor
