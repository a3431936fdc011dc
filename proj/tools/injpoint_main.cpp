#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "injpoint/cli.hpp"
#include "injpoint/experiment.hpp"
#include "injpoint/report.hpp"

int main(int argc, char** argv) {
  using namespace injpoint;

  CliOptions opts;
  try {
    opts = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for options\n";
    return 1;
  }

  try {
    const auto records = sweep(opts.config);
    emit_csv(records, opts.output);
    emit_plot(records, opts.output);

    bool failed = false;
    for (const auto& r : records) {
      if (r.error) {
        std::cerr << "n=" << r.node_count << " " << r.spec.label() << ": " << *r.error << '\n';
        failed = true;
      }
    }
    std::cerr << "wrote " << records.size() << " records to " << opts.output.csv_path << '\n';
    if (opts.output.plot_path) std::cerr << "wrote chart to " << *opts.output.plot_path << '\n';
    return failed ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
