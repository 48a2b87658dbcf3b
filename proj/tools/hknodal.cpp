#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hknodal/commands.hpp"

namespace {

using namespace hknodal;

struct ProblemArgs {
  std::string problem_path;
  std::int64_t p = 0;
  std::string h;
  std::string gens;
};

struct EngineArgs {
  unsigned threads = 1;
  std::optional<std::int64_t> dmax;
  std::string engine = "reduced";

  HilbertOptions options() const {
    HilbertOptions o;
    o.threads = threads;
    o.dmax_override = dmax;
    o.engine = engine == "dense" ? RankEngine::dense : RankEngine::reduced;
    return o;
  }
};

void add_engine_options(CLI::App* cmd, EngineArgs& ea) {
  cmd->add_option("--threads", ea.threads, "threads for the per-degree rank computations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dmax-override", ea.dmax, "degree bound for the Hilbert function search");
  cmd->add_option("--engine", ea.engine, "rank engine")->check(CLI::IsMember({"reduced", "dense"}));
}

void add_problem_options(CLI::App* cmd, ProblemArgs& pa, EngineArgs& ea) {
  cmd->add_option("--problem", pa.problem_path, "problem file (key = value text or JSON)");
  cmd->add_option("--p", pa.p, "characteristic");
  cmd->add_option("--h", pa.h, "the cubic h");
  cmd->add_option("--gens", pa.gens, "generators of J, comma separated, or a file listing them");
  add_engine_options(cmd, ea);
}

ProblemFile resolve_problem(const ProblemArgs& pa) {
  ProblemFile pf;
  if (!pa.problem_path.empty()) pf = load_problem(pa.problem_path);
  if (pa.p) pf.p = pa.p;
  if (!pa.h.empty()) pf.h = pa.h;
  if (!pa.gens.empty()) {
    const bool is_file = std::filesystem::is_regular_file(pa.gens);
    pf.generators = split_generators(is_file ? read_file(pa.gens) : pa.gens);
  }
  if (!pf.p || pf.h.empty() || pf.generators.empty())
    throw Error(errc::invalid_argument, "need --problem or all of --p, --h, --gens");
  return pf;
}

/// --n wins over --q; --q must be a power of p.
unsigned resolve_n(std::optional<unsigned> n, std::optional<std::uint64_t> q, std::int64_t p,
                   unsigned fallback) {
  if (n) return *n;
  if (q) return PrimeField(p).log_p(*q);
  return fallback;
}

std::vector<unsigned> parse_n_list(const std::string& s) {
  std::vector<unsigned> out;
  for (const auto& item : split_generators(s)) out.push_back(static_cast<unsigned>(std::stoul(item)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-Kunz functions of nodal plane cubics"};
  // -h would collide with the --h option naming the cubic.
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", hknodal::kToolVersion);
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print the machine-readable report");

  ProblemArgs pa;
  EngineArgs ea;
  std::optional<unsigned> n, classify_n, n_max, n_min;
  std::optional<std::uint64_t> q;
  std::string n_list, data_path, degrees_text, cycle_text;
  std::uint64_t direct_max_q = 64;

  auto* en = app.add_subcommand("en", "e_n = dim A/(J^[q], h) by direct rank computation");
  auto* series = app.add_subcommand("series", "Hilbert function, poin and kernel series at q");
  auto* classify = app.add_subcommand("classify", "kernel series -> classification data -> mu, alpha, R");
  auto* predict = app.add_subcommand("predict", "predict e_n from classification data");
  auto* verify = app.add_subcommand("verify", "compare predicted and direct e_n");
  auto* cycle = app.add_subcommand("cycle", "bloc structure and invariants of a cycle");
  auto* pardue = app.add_subcommand("pardue", "J = (x,y,z): closed form vs pipeline vs engine");

  for (auto* cmd : {en, series, classify, predict, verify}) {
    add_problem_options(cmd, pa, ea);
    cmd->add_flag("--json", as_json, "print the machine-readable report");
  }
  for (auto* cmd : {en, series, classify}) {
    cmd->add_option("--n", n, "exponent n, q = p^n");
    cmd->add_option("--q", q, "q = p^n");
  }
  predict->add_option("--classify-n", classify_n, "classify at q = p^n (default: smallest q >= 7)");
  predict->add_option("--n", n_list, "comma separated list of n to predict")->required();
  predict->add_option("--data", data_path, "classification data JSON instead of a problem");
  predict->add_option("--degrees", degrees_text, "generator degrees, with --data");
  verify->add_option("--classify-n", classify_n, "classify at q = p^n (default: smallest q >= 7)");
  verify->add_option("--n-max", n_max, "largest n checked")->required();
  verify->add_option("--n-min", n_min, "smallest n checked (default 0, or 1 when p = 3)");
  cycle->add_option("cycle", cycle_text, "cycle such as (2,1,-3)")->required();
  cycle->add_flag("--json", as_json, "print the machine-readable report");
  pardue->add_option("--p", pa.p, "characteristic")->required();
  pardue->add_option("--n-max", n_max, "largest n")->required();
  pardue->add_option("--direct-max-q", direct_max_q, "run the direct engine for q up to this");
  add_engine_options(pardue, ea);
  pardue->add_flag("--json", as_json, "print the machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors share the invalid-input code.
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::invalid_input;
  }

  const auto start = std::chrono::steady_clock::now();
  auto default_classify_n = [](std::int64_t p) {
    unsigned k = 1;
    for (std::uint64_t qq = static_cast<std::uint64_t>(p); qq < 7; qq *= static_cast<std::uint64_t>(p)) ++k;
    return k;
  };

  Report report;
  try {
    const auto opts = ea.options();
    if (*en || *series || *classify) {
      const auto pf = resolve_problem(pa);
      const unsigned nn = resolve_n(n, q, pf.p, *classify ? default_classify_n(pf.p) : 0);
      if (*en) report = cmd_en(pf, nn, opts);
      if (*series) report = cmd_series(pf, nn, opts);
      if (*classify) report = cmd_classify(pf, nn, opts);
    } else if (*predict) {
      const auto ns = parse_n_list(n_list);
      if (!data_path.empty()) {
        if (!pa.p) throw Error(errc::invalid_argument, "--data needs --p");
        std::vector<std::int64_t> degrees;
        for (const auto& d : split_generators(degrees_text)) degrees.push_back(std::stoll(d));
        if (degrees.empty()) throw Error(errc::invalid_argument, "--data needs --degrees");
        const auto data = classification_from_json(
            [&] {
              try {
                return json::parse(read_file(data_path));
              } catch (const json::exception& e) {
                throw Error(errc::syntax_error, e.what());
              }
            }());
        report = cmd_predict(data, degrees, pa.p, ns);
      } else {
        const auto pf = resolve_problem(pa);
        report = cmd_predict(pf, classify_n.value_or(default_classify_n(pf.p)), ns, opts);
      }
    } else if (*verify) {
      const auto pf = resolve_problem(pa);
      report = cmd_verify(pf, classify_n.value_or(default_classify_n(pf.p)), *n_max, n_min, opts);
    } else if (*cycle) {
      report = cmd_cycle(cycle_text);
    } else if (*pardue) {
      report = cmd_pardue(pa.p, *n_max, direct_max_q, opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == errc::q_too_small || e.code() == errc::ambiguous_extraction)
      std::cerr << "hint: classify again with a larger n\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::invalid_input;
  }

  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  if (as_json) {
    json out = report.body;
    out["timing"] = {{"elapsed_ms", static_cast<std::int64_t>(elapsed.count())}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& line : report.text) std::cout << line << "\n";
  }
  return report.exit_code;
}
