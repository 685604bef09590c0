#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "crnosc/acceptance.hpp"
#include "crnosc/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  crnosc::AcceptanceOptions opt;
  std::string out;
  app.add_flag("--quick", opt.quick, "skip the five-species enumeration sweep");
  app.add_option("--only", opt.only, "criterion ids or names");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--workers", opt.workers, "enumeration threads (0: hardware)");
  app.add_option("--json", out, "write the JSON summary here");
  CLI11_PARSE(app, argc, argv);

  auto results = crnosc::run_acceptance(opt);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << crnosc::summary_line(r) << std::endl;
    if (r.passed) ++passed;
  }
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  if (!out.empty()) {
    std::ofstream os(out);
    os << crnosc::dump_report(crnosc::to_json(results));
  }
  return passed == results.size() ? 0 : 1;
}
