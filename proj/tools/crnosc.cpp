#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "crnosc/acceptance.hpp"
#include "crnosc/classifier.hpp"
#include "crnosc/dynamics.hpp"
#include "crnosc/enumerate.hpp"
#include "crnosc/errors.hpp"
#include "crnosc/hopf.hpp"
#include "crnosc/network.hpp"
#include "crnosc/report.hpp"
#include "crnosc/report_format.hpp"

using namespace crnosc;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Rational> rational_list(const std::string& s, const char* flag) {
  std::vector<Rational> out;
  try {
    for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  } catch (const std::invalid_argument&) {
    throw InputError(std::string(flag) + ": expected comma-separated numbers, got '" + s + "'");
  }
  return out;
}

std::vector<double> double_list(const std::string& s, const char* flag) { return to_doubles(rational_list(s, flag)); }

// Network file plus an optional rate override; kappa defaults to the file's @ annotations.
MassActionSystem load_system(const std::string& path, const std::string& kappa) {
  auto parsed = parse_system(read_file(path));
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  if (parsed.network.num_reactions() == 0) throw InputError(path + ": network has no reactions");
  if (kappa.empty()) return parsed.system();
  auto k = rational_list(kappa, "--kappa");
  if (k.size() != parsed.network.num_reactions())
    throw InputError("--kappa: expected " + std::to_string(parsed.network.num_reactions()) + " values, got " +
                     std::to_string(k.size()));
  for (const auto& v : k)
    if (sgn(v) <= 0) throw InputError("--kappa: rate constants must be positive");
  return {parsed.network, k};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os) throw InputError("cannot write " + out);
  os << text;
}

std::pair<double, double> parse_range(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2) throw InputError("--t-range: expected LO:HI, got '" + s + "'");
  auto lo = to_double(parse_rational(parts[0])), hi = to_double(parse_rational(parts[1]));
  if (!(lo < hi)) throw InputError("--t-range: LO must be below HI");
  return {lo, hi};
}

int error_report(const std::string& code, const std::string& message, int exit_code) {
  json j{{"report_kind", "error"}, {"errors", json::array({{{"code", code}, {"message", message}}})}};
  std::cout << dump_report(j);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillation analysis of mass-action reaction networks"};
  app.require_subcommand(1);

  std::string net_file, kappa, x0, out, path_text, t_range;
  double T = 10, tol = 1e-10;
  std::size_t starts = 32, max_iter = 100, n_max = 4, samples = 0, scan_samples = 64;
  std::uint64_t seed = 20240611;
  unsigned workers = 0;
  bool quick = false, orbit = false, cross_check = false;
  std::vector<std::string> only;

  auto* classify = app.add_subcommand("classify", "structural, equilibrium, Jacobian and verdict report");
  classify->add_option("file,--net", net_file, "network file")->check(CLI::ExistingFile);
  classify->add_option("--kappa", kappa, "rate constants, comma separated");
  classify->add_option("--x0", x0, "point selecting the stoichiometric class");
  classify->add_option("--starts", starts, "Newton starts per class dimension");
  classify->add_option("--tol", tol, "equilibrium residual tolerance");
  classify->add_option("--max-iter", max_iter, "Newton iterations per start");
  classify->add_option("--seed", seed, "recorded seed");
  classify->add_flag("--orbit", orbit, "add a return-map orbit block");
  classify->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", quick, "skip the five-species enumeration sweep");
  verify->add_option("--only", only, "criterion ids or names");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--workers", workers, "enumeration threads (0: hardware)");
  verify->add_option("--out", out, "JSON summary file");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate trimolecular three-reaction networks");
  enumerate->add_option("--n-max", n_max, "largest species count (2..5)")->check(CLI::Range(2, 5));
  enumerate->add_option("--workers", workers, "threads (0: hardware)");
  enumerate->add_flag("--cross-check", cross_check, "re-run the slow classifier on every distinct network");
  enumerate->add_option("--out", out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "integrate the mass-action ODE");
  simulate->add_option("--net", net_file, "network file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--kappa", kappa, "rate constants, comma separated");
  simulate->add_option("--x0", x0, "initial state, comma separated")->required();
  simulate->add_option("--T", T, "final time")->check(CLI::PositiveNumber);
  simulate->add_option("--tol", tol, "per-step tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--samples", samples, "equally spaced output times (0: every step)");
  simulate->add_option("--out", out, "CSV file (default stdout)");

  auto* hopf_scan = app.add_subcommand("hopf-scan", "locate trace J = 0 along a rate path");
  hopf_scan->add_option("--net", net_file, "network file")->required()->check(CLI::ExistingFile);
  hopf_scan->add_option("--kappa", kappa, "base rate constants");
  hopf_scan->add_option("--path", path_text, "e.g. k1=t,k2=1")->required();
  hopf_scan->add_option("--t-range", t_range, "LO:HI")->required();
  hopf_scan->add_option("--samples", scan_samples, "bracketing samples");
  hopf_scan->add_option("--out", out, "output file (default stdout)");

  auto* expand = app.add_subcommand("expand", "split reactions into trimolecular steps");
  expand->add_option("--net", net_file, "network file")->required()->check(CLI::ExistingFile);
  expand->add_option("--kappa", kappa, "rate constants");
  expand->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitOk : ExitInputError;
  }

  try {
    if (*classify) {
      if (net_file.empty()) throw InputError("classify: a network file is required");
      auto sys = load_system(net_file, kappa);
      AnalysisOptions opt;
      opt.solver.starts_per_dim = starts;
      opt.solver.tol = tol;
      opt.solver.max_iter = max_iter;
      opt.seed = seed;
      opt.orbit = orbit;
      if (!x0.empty()) opt.x0 = double_list(x0, "--x0");
      auto outcome = analyze(sys, opt);
      emit(dump_report(outcome.report), out);
      return outcome.exit_code;
    }

    if (*verify) {
      AcceptanceOptions opt;
      opt.quick = quick;
      opt.only = only;
      opt.seed = seed;
      opt.workers = workers;
      for (const auto& o : only) {
        const auto& all = acceptance_criteria();
        if (std::none_of(all.begin(), all.end(), [&](const CriterionInfo& c) { return c.id == o || c.name == o; }))
          throw InputError("--only: unknown criterion '" + o + "'");
      }
      auto results = run_acceptance(opt);
      bool ok = true;
      for (const auto& r : results) {
        std::cout << summary_line(r) << "\n";
        ok = ok && r.passed;
      }
      if (!out.empty()) emit(dump_report(to_json(results)), out);
      return ok ? ExitOk : 3;
    }

    if (*enumerate) {
      EnumerationOptions opt;
      opt.workers = workers;
      opt.cross_check = cross_check;
      auto rep = enumerate_trimolecular(n_max, opt);
      emit(dump_report(to_json(rep)), out);
      return ExitOk;
    }

    if (*simulate) {
      auto sys = load_system(net_file, kappa);
      auto x = double_list(x0, "--x0");
      if (x.size() != sys.network().num_species())
        throw InputError("--x0: expected " + std::to_string(sys.network().num_species()) + " values");
      IntegratorOptions io;
      io.tol = tol;
      for (std::size_t i = 0; i <= samples && samples > 0; ++i) io.sample_times.push_back(T * double(i) / double(samples));
      auto tr = integrate(sys, x, T, io);
      std::ostringstream os;
      write_csv(os, tr, sys.network().species());
      emit(os.str(), out);
      if (tr.truncated) std::cerr << "warning: integration stopped at t = " << tr.times.back() << "\n";
      return ExitOk;
    }

    if (*hopf_scan) {
      auto sys = load_system(net_file, kappa);
      auto path = KappaPath::parse(path_text, sys.network().num_reactions());
      auto [lo, hi] = parse_range(t_range);
      auto hp = find_hopf_point(sys, path, lo, hi, scan_samples);
      json j{{"report_kind", "hopf_scan"},
             {"network", render(sys.network())},
             {"path", path_text},
             {"t_range", {lo, hi}}};
      if (!hp) {
        j["errors"] = json::array({{{"code", "NoHopfPoint"}, {"message", "trace J does not change sign on the range"}}});
        emit(dump_report(j), out);
        return ExitPrecondition;
      }
      j["hopf_point"] = {{"t_star", hp->t_star},
                         {"kappa_star", hp->kappa_star},
                         {"equilibrium", hp->equilibrium.x_bar},
                         {"trace_residual", hp->trace_residual},
                         {"det", hp->det_value},
                         {"omega", hp->lyapunov.omega},
                         {"l1", hp->lyapunov.raw},
                         {"l1_normalized", hp->lyapunov.normalized},
                         {"vertical_override", hp->lyapunov.vertical_override},
                         {"classification", to_string(hp->lyapunov.classification)}};
      emit(dump_report(j), out);
      return ExitOk;
    }

    if (*expand) {
      auto sys = load_system(net_file, kappa);
      auto ex = expand_to_trimolecular(sys);
      emit(render(ex) + "\n", out);
      return ExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitInputError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << net_file << ": " << e.what() << "\n";
    return ExitInputError;
  } catch (const PreconditionError& e) {
    return error_report(e.code(), e.what(), ExitPrecondition);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitInputError;
  }
  return ExitOk;
}
