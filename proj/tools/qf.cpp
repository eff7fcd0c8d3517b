// qf: command-line front end for the kicked-oscillator numerics.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numerical divergence.
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qf/commands.hpp"

namespace {

struct OutputOptions {
  std::string format;
  std::string path;  // empty: standard output
};

void add_output_options(CLI::App* sub, OutputOptions& out) {
  sub->add_option("--format", out.format,
                  "csv or json (default: $QF_DEFAULT_FORMAT, else csv)");
  sub->add_option("-o,--output", out.path, "write to this file instead of stdout");
}

qf::OutputFormat resolve_format(const std::string& flag) {
  std::string name = flag;
  if (name.empty()) {
    const char* env = std::getenv("QF_DEFAULT_FORMAT");
    name = env != nullptr && *env != '\0' ? env : "csv";
  }
  const auto f = qf::parse_format(name);
  if (!f) throw std::invalid_argument("unknown format '" + name + "'");
  return *f;
}

int emit(const qf::Table& table, const OutputOptions& opts) {
  const qf::OutputFormat fmt = resolve_format(opts.format);
  std::ostringstream buf;
  qf::write_table(buf, table, fmt);
  if (opts.path.empty()) {
    std::cout << buf.str() << std::flush;
    return std::cout ? qf::kExitOk : qf::kExitIo;
  }
  std::ofstream file(opts.path, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "qf: cannot open '" << opts.path << "' for writing\n";
    return qf::kExitIo;
  }
  file << buf.str();
  file.close();
  if (!file) {
    std::cerr << "qf: failed writing '" << opts.path << "'\n";
    return qf::kExitIo;
  }
  return qf::kExitOk;
}

int emit_run(const qf::RunResult& run, const OutputOptions& opts,
             const char* what) {
  const int code = emit(run.table, opts);
  if (code != qf::kExitOk) return code;
  if (run.diverged_at) {
    std::cerr << "qf: " << what << " diverged at step " << *run.diverged_at
              << '\n';
    return qf::kExitDiverged;
  }
  return qf::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using std::numbers::pi;
  CLI::App app{"Floquet and Fibonacci-kicked oscillator numerics", "qf"};
  app.require_subcommand(1);

  std::function<int()> run;

  // bands
  OutputOptions bands_out;
  double bands_ratio = 1.0;
  std::string bands_range = "0:6.283185307179586:0.01";
  auto* bands = app.add_subcommand(
      "bands", "half-trace curve h(beta) = cos beta + r sin beta on a grid");
  bands->add_option("--ratio", bands_ratio, "r = u / (2 omega)");
  bands->add_option("--range", bands_range, "beta grid start:stop:step");
  add_output_options(bands, bands_out);
  bands->callback([&] {
    run = [&] {
      return emit(qf::bands_table(bands_ratio, qf::GridSpec::parse(bands_range)),
                  bands_out);
    };
  });

  // band-edges
  OutputOptions edges_out;
  double edges_ratio = 1.0;
  int edges_periods = 1;
  auto* edges = app.add_subcommand(
      "band-edges", "band and gap intervals over [0, periods * 2 pi]");
  edges->add_option("--ratio", edges_ratio, "r = u / (2 omega)");
  edges->add_option("--periods", edges_periods, "number of 2 pi periods");
  add_output_options(edges, edges_out);
  edges->callback([&] {
    run = [&] {
      return emit(qf::band_edges_table(edges_ratio, edges_periods), edges_out);
    };
  });

  // fibonacci-scan
  OutputOptions scan_out;
  qf::ScanFamily scan_family;
  std::string scan_range = "0:20:0.001";
  auto* scan = app.add_subcommand(
      "fibonacci-scan",
      "Nielsen invariant, band overlap and commutative points over omega*T");
  scan->add_option("--u", scan_family.kick, "kick strength u");
  scan->add_option("--omega", scan_family.omega, "oscillator frequency");
  scan->add_option("--m", scan_family.mass, "mass");
  scan->add_option("--t-ratio", scan_family.t_ratio,
                   "T2 / T1 (default: golden ratio)");
  scan->add_option("--range", scan_range, "omega*T grid start:stop:step");
  add_output_options(scan, scan_out);
  scan->callback([&] {
    run = [&] {
      return emit(
          qf::fibonacci_scan_table(scan_family, qf::GridSpec::parse(scan_range)),
          scan_out);
    };
  });

  // orbit
  OutputOptions orbit_out;
  qf::FibonacciKickedParams orbit_params{1.0, 1.0, 2.0, 0.0, 0.0};
  std::optional<double> orbit_t1;
  std::optional<double> orbit_t2;
  qf::PhasePoint orbit_start{1.0, 0.0};
  std::size_t orbit_steps = 200;
  auto* orb = app.add_subcommand(
      "orbit", "phase-space orbit along the Fibonacci interval sequence");
  orb->add_option("--u", orbit_params.kick, "kick strength u");
  orb->add_option("--omega", orbit_params.omega, "oscillator frequency");
  orb->add_option("--m", orbit_params.mass, "mass");
  orb->add_option("--t1", orbit_t1,
                  "first interval (default: pi * golden ratio / omega)");
  orb->add_option("--t2", orbit_t2, "second interval (default: golden ratio * t1)");
  orb->add_option("--x0", orbit_start.x, "initial position");
  orb->add_option("--p0", orbit_start.p, "initial momentum");
  orb->add_option("-n,--steps", orbit_steps, "number of intervals (<= 1e6)");
  add_output_options(orb, orbit_out);
  orb->callback([&] {
    run = [&] {
      qf::FibonacciKickedParams p = orbit_params;
      p.t1 = orbit_t1.value_or(pi * qf::kGoldenRatio / p.omega);
      p.t2 = orbit_t2.value_or(qf::kGoldenRatio * p.t1);
      return emit_run(qf::orbit_table(p, orbit_start, orbit_steps), orbit_out,
                      "orbit");
    };
  });

  // words
  OutputOptions words_out;
  unsigned words_n = 4;
  auto* words = app.add_subcommand(
      "words", "Fibonacci words phi^k(y1) for k = 0..n");
  words->add_option("-n", words_n, "largest iterate (<= 30)");
  add_output_options(words, words_out);
  words->callback([&] {
    run = [&] { return emit(qf::words_table(words_n), words_out); };
  });

  // trace-rec
  OutputOptions trace_out;
  qf::TraceTriple trace_start{1.0, 1.0, 1.0};
  std::size_t trace_steps = 50;
  auto* trace = app.add_subcommand(
      "trace-rec", "trace map (x, y, z) -> (y, z, 2yz - x) and its invariant");
  trace->add_option("--x0", trace_start.x, "half-trace of g1");
  trace->add_option("--y0", trace_start.y, "half-trace of g2");
  trace->add_option("--z0", trace_start.z, "half-trace of g1 g2");
  trace->add_option("-n,--steps", trace_steps, "number of steps");
  add_output_options(trace, trace_out);
  trace->callback([&] {
    run = [&] {
      return emit_run(qf::trace_rec_table(trace_start, trace_steps), trace_out,
                      "trace recursion");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "qf: " << e.what() << "\n\n";
    const auto active = app.get_subcommands();
    std::cerr << (active.empty() ? app.help() : active.front()->help());
    return qf::kExitUsage;
  }

  try {
    return run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "qf: " << e.what() << '\n';
    return qf::kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "qf: " << e.what() << '\n';
    return qf::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qf: " << e.what() << '\n';
    return qf::kExitDiverged;
  }
}
