#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "osborne/driver.hpp"
#include "osborne/errors.hpp"
#include "osborne/matrix_io.hpp"
#include "osborne/report.hpp"
#include "osborne/trace.hpp"

namespace {

struct RunConfig {
  std::string input;
  std::string format = "matrix-market";
  double p = 1.0;
  double epsilon = 0.01;
  std::string variant = "strict";
  std::int64_t max_iters = 10'000'000;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string report_path;  // empty: stdout
  int workers = 1;
};

int default_workers() {
  if (const char* env = std::getenv("OSBORNE_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.workers = default_workers();

  CLI::App app{"Balances a square matrix in the L_p norm with a diagonal "
               "similarity D A D^{-1}"};
  app.add_option("--input", cfg.input, "matrix file to balance")->required();
  app.add_option("--format", cfg.format,
                 "input format: matrix-market | dense-csv")
      ->check(CLI::IsMember({"matrix-market", "dense-csv"}));
  app.add_option("--p", cfg.p, "L_p norm exponent, p >= 1");
  app.add_option("--epsilon", cfg.epsilon,
                 "balance target: max/min norm ratio <= 1 + epsilon");
  app.add_option("--variant", cfg.variant,
                 "iteration variant: strict | greedy | round-robin | random")
      ->check(CLI::IsMember({"strict", "greedy", "round-robin", "random"}));
  app.add_option("--max-iters", cfg.max_iters, "balancing step cap");
  app.add_option("--seed", cfg.seed, "PRNG seed for the random variant");
  app.add_option("--trace", cfg.trace_path, "write a per-step CSV trace here");
  app.add_option("--report", cfg.report_path,
                 "write the JSON report here instead of stdout");
  app.add_option("--workers", cfg.workers,
                 "components balanced concurrently (default "
                 "$OSBORNE_WORKERS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!(cfg.epsilon > 0.0) || cfg.epsilon > 0.5)
      throw std::invalid_argument("--epsilon must lie in (0, 1/2]");
    if (!(cfg.p >= 1.0)) throw std::invalid_argument("--p must be >= 1");
    if (cfg.max_iters <= 0)
      throw std::invalid_argument("--max-iters must be positive");
    if (cfg.workers < 1)
      throw std::invalid_argument("--workers must be >= 1");

    const osborne::DenseMatrix raw =
        osborne::parse_matrix(cfg.input, osborne::format_from_name(cfg.format));

    osborne::BalanceOptions options;
    options.p = cfg.p;
    options.epsilon = cfg.epsilon;
    options.policy.kind = osborne::variant_from_name(cfg.variant);
    options.policy.seed = cfg.seed;
    options.max_iters = cfg.max_iters;
    options.workers = cfg.workers;

    std::ofstream trace_file;
    std::unique_ptr<osborne::CsvTraceWriter> trace_writer;
    if (!cfg.trace_path.empty()) {
      trace_file.open(cfg.trace_path);
      if (!trace_file)
        throw std::invalid_argument("cannot open trace file '" +
                                    cfg.trace_path + "'");
      trace_writer = std::make_unique<osborne::CsvTraceWriter>(trace_file);
      options.sink = trace_writer.get();
    }

    const osborne::RunReport report = osborne::balance_matrix(raw, options);
    const std::string json = osborne::report_to_json(report);
    if (cfg.report_path.empty()) {
      std::cout << json << "\n";
    } else {
      std::ofstream out(cfg.report_path);
      if (!out)
        throw std::invalid_argument("cannot open report file '" +
                                    cfg.report_path + "'");
      out << json << "\n";
    }
    return report.exit_code;
  } catch (const osborne::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
