#include "phip/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phip/bounds.hpp"
#include "phip/error.hpp"
#include "phip/families.hpp"
#include "phip/io.hpp"
#include "phip/isoperimetry.hpp"

namespace phip {

namespace {

constexpr int kExitBoundFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "' in list '" + s + "'");
    }
    if (used != tok.size()) throw UsageError("bad number '" + tok + "' in list '" + s + "'");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (double x : parse_list(s)) {
    if (!(x >= 1.0) || x != std::floor(x)) throw UsageError("expected positive integers in '" + s + "'");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

ExactOptions exact_options(unsigned threads) {
  ExactOptions o;
  o.threads = threads;
  if (const char* env = std::getenv("ISO_MAX_EXACT_N")) {
    const std::string v(env);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("ISO_MAX_EXACT_N must be a nonnegative integer, got '" + v + "'");
    o.max_n = static_cast<std::size_t>(std::stoull(v));
  }
  return o;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    write_text_file(path, content);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral and isoperimetric analysis of finite Markov chains", "phip"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads for enumeration and scans (0 = all)");

  // analyze
  std::string a_input, a_format = "edge-tsv", a_p = "0.5,1", a_method = "both", a_out,
                       a_report = "json";
  bool a_directed = false;
  auto* analyze = app.add_subcommand("analyze", "Spectral data, cuts and bound checks for one chain");
  analyze->add_option("--input", a_input, "Input file")->required();
  analyze->add_option("--format", a_format, "edge-tsv or dense-matrix")
      ->check(CLI::IsMember({"edge-tsv", "dense-matrix"}));
  analyze->add_option("--p", a_p, "Comma-separated exponents in [0, 1]");
  analyze->add_option("--method", a_method, "exact, sweep or both")
      ->check(CLI::IsMember({"exact", "sweep", "both"}));
  analyze->add_flag("--directed-spectral", a_directed, "Also use the directed Laplacian");
  analyze->add_option("--out", a_out, "Report path (stdout if omitted)");
  analyze->add_option("--report-format", a_report, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  // generate
  std::string g_family, g_out;
  std::size_t g_n = 0;
  double g_density = 0.3;
  std::uint64_t g_seed = 1;
  bool g_directed = false;
  auto* generate = app.add_subcommand("generate", "Write a graph family as edge-tsv");
  generate->add_option("--family", g_family, "cycle, hypercube, dumbbell, ht-counterexample, random")
      ->required()
      ->check(CLI::IsMember({"cycle", "hypercube", "dumbbell", "ht-counterexample", "random"}));
  generate
      ->add_option("--n", g_n,
                   "Size: vertices (cycle, ht-counterexample, random), dimension (hypercube), "
                   "clique size (dumbbell)")
      ->required();
  generate->add_option("--density", g_density, "Edge probability for random graphs");
  generate->add_option("--seed", g_seed, "Seed for random graphs");
  generate->add_flag("--directed", g_directed, "Random directed graph instead of undirected");
  generate->add_option("--out", g_out, "Output path (stdout if omitted)");

  // sweep
  std::string s_input, s_format = "edge-tsv", s_out;
  double s_p = 1.0;
  auto* sweep = app.add_subcommand("sweep", "Sweep cut from the second eigenvector");
  sweep->add_option("--input", s_input, "Input file")->required();
  sweep->add_option("--format", s_format, "edge-tsv or dense-matrix")
      ->check(CLI::IsMember({"edge-tsv", "dense-matrix"}));
  sweep->add_option("--p", s_p, "Exponent in [0, 1]");
  sweep->add_option("--out", s_out, "Output path (stdout if omitted)");

  // verify
  std::string v_input, v_format = "edge-tsv", v_suite = "all";
  auto* verify = app.add_subcommand("verify", "Check every applicable bound; exit 1 on a failure");
  verify->add_option("--input", v_input, "Input file")->required();
  verify->add_option("--format", v_format, "edge-tsv or dense-matrix")
      ->check(CLI::IsMember({"edge-tsv", "dense-matrix"}));
  verify->add_option("--suite", v_suite, "reversible, directed or all")
      ->check(CLI::IsMember({"reversible", "directed", "all"}));

  // scan
  std::string c_family = "ht-counterexample", c_list = "64,128,256,512,1024", c_out;
  auto* scan = app.add_subcommand("scan", "Scaling scan over the counterexample family");
  scan->add_option("--family", c_family, "Only ht-counterexample")
      ->check(CLI::IsMember({"ht-counterexample"}));
  scan->add_option("--n-list", c_list, "Comma-separated sizes, each >= 8");
  scan->add_option("--out", c_out, "CSV path (stdout if omitted)");

  // gadgets
  std::string d_p = "0.51,0.6,0.75,1";
  std::size_t d_trials = 100000;
  std::uint64_t d_seed = 1;
  auto* gadgets = app.add_subcommand("gadgets", "Numerical checks of the two proof inequalities");
  gadgets->add_option("--p", d_p, "Comma-separated exponents in (1/2, 1]");
  gadgets->add_option("--trials", d_trials, "Random sequences per exponent");
  gadgets->add_option("--seed", d_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) {
      AnalyzeOptions opt;
      opt.p_values = parse_list(a_p);
      opt.method = parse_cut_request(a_method);
      opt.directed_spectral = a_directed;
      opt.exact = exact_options(threads);
      const auto chain = parse_graph(a_input, parse_input_format(a_format)).to_chain();
      auto report = analyze_chain(chain, opt);
      report.provenance.input = a_input;
      write_output(a_out, a_report == "json" ? report_to_json(report) : report_to_text(report),
                   out);
      return 0;
    }

    if (*generate) {
      WeightedGraph g;
      if (g_family == "cycle") g = cycle_graph(g_n);
      else if (g_family == "hypercube") g = hypercube_graph(g_n);
      else if (g_family == "dumbbell") g = dumbbell_graph(g_n);
      else if (g_family == "ht-counterexample") g = ht_counterexample_graph(g_n);
      else if (g_directed) g = random_directed_graph(g_n, g_density, g_seed);
      else g = random_reversible_graph(g_n, g_density, g_seed);
      std::ostringstream os;
      write_graph_tsv(g, os);
      write_output(g_out, os.str(), out);
      return 0;
    }

    if (*sweep) {
      const auto chain = parse_graph(s_input, parse_input_format(s_format)).to_chain();
      const bool rev = is_reversible(chain);
      const auto cert = rev ? lambda2_reversible(chain) : lambda2_directed(chain);
      const auto sets = sweep_level_sets(chain, cert);
      const auto cut = sweep_cut(chain, s_p, cert);

      AnalysisReport r;
      r.chain = {chain.n(), std::string(to_string(chain.origin())), rev, is_lazy(chain)};
      r.spectral.push_back({std::string(to_string(cert.kind)), cert.lambda2, cert.residual});
      for (const auto& s : sets) r.cuts.push_back(phi_p_of_set(chain, s, s_p));
      r.cuts.push_back(cut);
      if (s_p > 0.5) {
        auto b = make_bound_report("sweep_guarantee", cut.phi, sweep_guarantee(s_p, cert.lambda2),
                                   1e-8);
        b.cut = cut;
        b.lambda2 = cert.lambda2;
        b.lambda2_kind = cert.kind;
        if (!rev) b.notes.push_back("guarantee proven for reversible chains only");
        r.bounds.push_back(std::move(b));
      }
      r.provenance.input = s_input;
      r.provenance.tool_version = tool_version();
      write_output(s_out, report_to_json(r), out);
      return 0;
    }

    if (*verify) {
      const auto chain = parse_graph(v_input, parse_input_format(v_format)).to_chain();
      BoundOptions bo;
      bo.exact = exact_options(threads);
      std::vector<BoundReport> reports;
      const bool want_rev = v_suite != "directed";
      const bool want_dir = v_suite != "reversible";
      const bool rev = is_reversible(chain);
      if (want_rev && rev) {
        auto [easy, hard] = check_cheeger(chain, bo);
        reports.push_back(easy);
        reports.push_back(hard);
        for (double p : {0.6, 0.75, 0.9, 1.0}) reports.push_back(check_main_theorem(chain, p, false, bo));
        reports.push_back(check_morris_peres(chain, false, bo));
      }
      if (want_dir) {
        auto [lower, upper] = check_chung(chain, bo);
        reports.push_back(lower);
        reports.push_back(upper);
        for (double p : {0.6, 0.75, 0.9, 1.0}) reports.push_back(check_main_theorem(chain, p, true, bo));
      }
      if (reports.empty()) {
        err << "no applicable bounds: chain is not reversible\n";
        return kExitUsage;
      }
      out << bounds_table(reports);
      for (const auto& r : reports)
        if (!r.holds) return kExitBoundFailed;
      return 0;
    }

    if (*scan) {
      const auto rows = scaling_scan(parse_size_list(c_list), threads);
      std::ostringstream os;
      write_scan_csv(rows, os);
      write_output(c_out, os.str(), out);
      return 0;
    }

    if (*gadgets) {
      std::ostringstream os;
      os << "p  bound  estimate  verdict\n";
      for (double p : parse_list(d_p)) {
        const double bound = 1.0 / (2.0 * p - 1.0);
        const double est = gadget_C_supremum(p, d_trials, d_seed);
        os << format_double(p) << "  " << format_double(bound) << "  " << format_double(est) << "  "
           << (est <= bound + 1e-9 ? "holds" : "FAILS") << '\n';
      }
      os << "\nb0  m  chain_sum  limit\n";
      for (double b0 : {0.01, 0.25, 0.9})
        for (std::uint64_t m : {1ull, 10ull, 100ull, 1000ull, 1000000ull})
          os << format_double(b0) << "  " << m << "  " << format_double(gadget_log_chain(b0, m))
             << "  " << format_double(0.5 * std::log(1.0 / b0)) << '\n';
      out << os.str();
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace phip
