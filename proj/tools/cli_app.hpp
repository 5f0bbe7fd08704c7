// Command-line front end shared by the propo binary and its tests.

#ifndef PROPO_TOOLS_CLI_APP_HPP
#define PROPO_TOOLS_CLI_APP_HPP

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "propo/propo.hpp"

namespace propo::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // verify: violation found; census: Property O tournament found
  kUsage = 2,
  kIo = 3,
  kInvalidInput = 4,
  kBudget = 5,
  kOverflow = 6,
};

inline constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success (verify: Property O holds; census: no Property O tournament)\n"
    "  1  verify: violating order found; census: Property O tournament found\n"
    "  2  usage error (unknown flag, missing argument)\n"
    "  3  I/O failure\n"
    "  4  invalid input file or arguments\n"
    "  5  enumeration budget exceeded\n"
    "  6  exact arithmetic overflow\n";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline std::string join_edges(const OrientedHypergraph& h) {
  std::string s;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (i) s += ',';
    s += edge_to_string(h.edge(i));
  }
  return s;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

inline MethodChoice parse_method(const std::string& m) {
  if (m == "brute") return MethodChoice::kExhaustive;
  if (m == "dfs") return MethodChoice::kBacktracking;
  return MethodChoice::kAuto;
}

inline OrientedHypergraph build_family(const std::string& family, unsigned k) {
  if (family == "cyclic2") return construct_cyclic_triangle();
  if (family == "claim1") return construct_claim1();
  if (family == "h1") return construct_h1();
  if (family == "h2") return construct_h2();
  return construct_general(k);
}

/// Runs one invocation. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify, audit and search oriented hypergraphs with Property O",
               "propo"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  unsigned max_n = EnumerationBudget{}.max_vertices;
  unsigned jobs = 1;

  // construct
  auto* construct = app.add_subcommand("construct", "Write a known construction to a file");
  std::string family;
  unsigned construct_k = 3;
  std::string out_path;
  construct->add_option("--family", family, "cyclic2|claim1|general|h1|h2")
      ->required()
      ->check(CLI::IsMember({"cyclic2", "claim1", "general", "h1", "h2"}));
  construct->add_option("--k", construct_k, "Uniformity for --family general (default 3)")
      ->check(CLI::Range(3u, 8u));
  construct->add_option("--out", out_path, "Output file (default: standard output)");

  // verify
  auto* verify = app.add_subcommand("verify", "Decide Property O for a hypergraph file");
  std::string verify_file;
  std::string method = "auto";
  verify->add_option("file", verify_file)->required();
  verify->add_option("--method", method, "brute|dfs|auto")
      ->check(CLI::IsMember({"brute", "dfs", "auto"}));
  verify->add_option("--max-n", max_n, "Largest n enumerated exhaustively");
  verify->add_option("--jobs", jobs, "Worker threads for exhaustive enumeration");

  // histogram
  auto* histogram = app.add_subcommand("histogram", "Count orders by number of consistent edges");
  std::string histogram_file;
  histogram->add_option("file", histogram_file)->required();
  histogram->add_option("--max-n", max_n, "Largest n enumerated exhaustively");

  // audit
  auto* audit = app.add_subcommand("audit", "Class-size audit relative to a base edge");
  std::string audit_file;
  std::size_t base_edge = 0;
  audit->add_option("file", audit_file)->required();
  audit->add_option("--base-edge", base_edge, "Index of the base edge")->required();

  // minimality
  auto* minimality = app.add_subcommand("minimality", "Classify edges as essential or redundant");
  std::string minimality_file;
  minimality->add_option("file", minimality_file)->required();
  minimality->add_option("--method", method, "brute|dfs|auto")
      ->check(CLI::IsMember({"brute", "dfs", "auto"}));
  minimality->add_option("--max-n", max_n, "Largest n enumerated exhaustively");

  // census
  auto* census = app.add_subcommand("census", "Exhaustive search over all k-tournaments on n vertices");
  unsigned census_n = 0;
  unsigned census_k = 0;
  bool symmetry = false;
  bool first_witness = false;
  bool no_early_reject = false;
  double max_bits = CensusOptions{}.max_bits;
  Count progress_interval = 0;
  Count range_begin = 0;
  Count range_end = 0;
  census->add_option("--n", census_n)->required();
  census->add_option("--k", census_k)->required();
  census->add_option("--jobs", jobs, "Worker threads (and partitions)");
  census->add_flag("--symmetry", symmetry, "Visit one tournament per isomorphism class");
  census->add_flag("--first-witness", first_witness, "Stop at the first Property O tournament");
  census->add_flag("--no-early-reject", no_early_reject,
                   "Enumerate even when C(n,k) <= k! rules Property O out");
  census->add_option("--max-bits", max_bits, "Budget on C(n,k)*log2(k!)");
  census->add_option("--range-begin", range_begin, "First counter index to examine");
  census->add_option("--range-end", range_end, "One past the last counter index (0 = end of space)");
  census->add_option("--progress-interval", progress_interval,
                     "Print progress to standard error every N tournaments");

  // sample
  auto* sample = app.add_subcommand("sample", "Monte Carlo Property O rate over random tournaments");
  unsigned sample_n = 0;
  unsigned sample_k = 0;
  Count trials = 0;
  std::uint64_t seed = 0;
  sample->add_option("--n", sample_n)->required();
  sample->add_option("--k", sample_k)->required();
  sample->add_option("--trials", trials)->required();
  sample->add_option("--seed", seed)->required();
  sample->add_option("--jobs", jobs, "Worker threads");

  // stats
  auto* stats = app.add_subcommand("stats", "Edge and vertex counts for uniformity k");
  unsigned stats_k = 0;
  stats->add_option("--k", stats_k)->required()->check(CLI::Range(3u, 20u));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  EnumerationBudget budget;
  budget.max_vertices = max_n;
  VerifyOptions vopts;
  vopts.method = parse_method(method);
  vopts.budget = budget;
  vopts.workers = jobs;

  try {
    if (*construct) {
      const auto h = build_family(family, construct_k);
      const auto text = serialize(h);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      return kOk;
    }

    if (*verify) {
      const auto h = parse_hypergraph(read_file(verify_file));
      const auto cert = check_property_o(h, vopts);
      if (cert.has_property_o()) {
        out << "PROPERTY_O method=" << to_string(cert.method) << " orders=" << cert.orders_examined
            << "\n";
        if (cert.method == Method::kBacktracking) out << "nodes_expanded=" << cert.nodes_expanded << "\n";
        return kOk;
      }
      out << "VIOLATION order=" << cert.violating_order->to_string() << "\n";
      return kNegative;
    }

    if (*histogram) {
      const auto h = parse_hypergraph(read_file(histogram_file));
      const auto hist = coverage_histogram(h, budget);
      for (const auto& [c, m] : hist.counts) out << "count=" << c << " orders=" << m << "\n";
      out << "total_orders=" << hist.total_orders() << " expected=" << hist.expected_total()
          << " holds=" << (hist.total_holds() ? "true" : "false") << "\n";
      out << "weighted_sum=" << hist.weighted_sum() << " expected=" << hist.expected_weighted_sum()
          << " holds=" << (hist.weighted_holds() ? "true" : "false") << "\n";
      out << "property_o=" << (hist.uncovered() == 0 ? "true" : "false") << "\n";
      return kOk;
    }

    if (*audit) {
      const auto h = parse_hypergraph(read_file(audit_file));
      const auto rep = lower_bound_audit(h, base_edge);
      out << "base_edge=" << rep.base_edge << "\n";
      out << "class_sizes=" << join(rep.class_sizes) << "\n";
      out << "intersection_sizes=" << join(rep.intersection_sizes) << "\n";
      out << "total=" << rep.total << "\n";
      out << "residue=" << rep.residue << "\n";
      out << "min_coverage=" << rep.min_coverage << "\n";
      out << "divisibility=" << (rep.divisibility_ok ? "ok" : "violated") << "\n";
      return kOk;
    }

    if (*minimality) {
      const auto h = parse_hypergraph(read_file(minimality_file));
      const auto rep = edge_minimality(h, vopts);
      for (const auto& v : rep.edges) {
        out << "edge=" << v.edge << (v.essential ? " essential" : " redundant");
        if (v.witness) out << " witness=" << v.witness->to_string();
        out << "\n";
      }
      out << "essential_count=" << rep.essential_count() << "\n";
      return kOk;
    }

    if (*census) {
      CensusOptions copts;
      copts.parallel_partitions = std::max(1u, jobs);
      copts.workers = std::max(1u, jobs);
      copts.symmetry_pruning = symmetry;
      copts.stop_at_first_witness = first_witness;
      copts.early_reject = !no_early_reject;
      copts.max_bits = max_bits;
      copts.progress_interval = progress_interval;
      copts.range_begin = range_begin;
      copts.range_end = range_end;
      copts.progress = &err;
      const auto rep = prove_vertex_lower_bound(census_n, census_k, copts);
      out << "n=" << rep.n << "\n";
      out << "k=" << rep.k << "\n";
      out << "total_enumerated=" << rep.total_enumerated << "\n";
      out << "property_o_found=" << rep.property_o_found << "\n";
      out << "first_witness_index="
          << (rep.first_witness_index ? std::to_string(*rep.first_witness_index) : "none") << "\n";
      out << "first_witness=" << (rep.first_witness ? join_edges(*rep.first_witness) : "none") << "\n";
      out << "early_rejected=" << (rep.early_rejected ? "true" : "false") << "\n";
      out << "stopped_early=" << (rep.stopped_early ? "true" : "false") << "\n";
      out << "parallel_partitions=" << copts.parallel_partitions << "\n";
      out << "symmetry_pruning=" << (symmetry ? "true" : "false") << "\n";
      out << "elapsed_seconds=" << rep.elapsed_seconds << "\n";
      return rep.property_o_found == 0 ? kOk : kNegative;
    }

    if (*sample) {
      const auto sum = estimate_property_o_rate(sample_n, sample_k, trials, seed, jobs, budget);
      out << std::setprecision(12);
      out << "n=" << sum.n << "\n";
      out << "k=" << sum.k << "\n";
      out << "trials=" << sum.trials << "\n";
      out << "successes=" << sum.successes << "\n";
      out << "rate=" << sum.rate << "\n";
      out << "standard_error=" << sum.standard_error << "\n";
      out << "seed=" << sum.seed << "\n";
      return kOk;
    }

    if (*stats) {
      const unsigned k = stats_k;
      const double kd = k;
      const double trivial = std::pow(kd / std::numbers::e, 2.0);
      const double random_bound =
          trivial * std::pow(std::numbers::pi * std::exp(std::numbers::e * std::numbers::e / 2.0) *
                                 kd * kd * kd * std::log(kd),
                             1.0 / kd);
      out << "k=" << k << "\n";
      out << "theorem2_edge_count=" << theorem2_edge_count(k) << "\n";
      out << "general_vertex_count=" << GeneralLayout(k).vertex_count() << "\n";
      out << "edge_lower_bound=" << checked_add(factorial(k), 1) << "\n";
      out << std::setprecision(10);
      out << "asymptotic_reference_vertices=" << trivial << " (asymptotic reference, (k/e)^2)\n";
      out << "asymptotic_reference_random_tournament_vertices=" << random_bound
          << " (asymptotic reference)\n";
      return kOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kOverflow;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  err << app.help();
  return kUsage;
}

}  // namespace propo::cli

#endif  // PROPO_TOOLS_CLI_APP_HPP
