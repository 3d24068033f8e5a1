#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "homspec/analysis.hpp"
#include "homspec/error.hpp"
#include "homspec/geometry.hpp"
#include "homspec/jacobi.hpp"
#include "homspec/nystrom.hpp"
#include "homspec/report.hpp"
#include "homspec/zonal.hpp"

namespace homspec::cli {

namespace fs = std::filesystem;

namespace {

// Raised for anything wrong with the request itself; maps to exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputFile {
  std::string extension;  // "csv" or "json"
  std::string content;
};

struct JobOutput {
  std::vector<OutputFile> files;
  bool pass = true;
  std::optional<DecayReport> verify;
};

// A validated job; calling it performs the computation.
using Job = std::function<JobOutput()>;

// ---------------------------------------------------------------------------
// Option sets, one per subcommand

struct DimsOptions {
  std::string space;
  int m = 0;
  std::int64_t n_max = 0;
};

struct QuadOptions {
  std::string space;
  int m = 0;
  std::optional<double> alpha;
  std::optional<double> beta;
  int nodes = 0;
};

struct SpectrumOptions {
  std::string space;
  int m = 0;
  std::string family = "algebraic";
  std::optional<double> gamma;
  std::optional<double> param;
  std::size_t count = 100;
  int r = 0;
  std::optional<int> max_degree;
  bool pad_zeros = false;
};

struct NystromOptions {
  std::string family;
  double param = 0.0;
  std::string grid = "24x48";
  std::size_t top_k = 16;
  double tol = 1e-5;
};

struct VerifyOptions {
  std::string theorem;
  std::string space;
  int m = 0;
  int r = 0;
  std::optional<double> p;
  double gamma = 0.0;
  std::size_t count = 10000;
  double tail = kDefaultTailFraction;
};

struct LemmasOptions {
  std::string space;
  int m = 0;
  std::int64_t n_max = 10000;
};

struct WeylOptions {
  std::string kind = "symmetric";
  std::size_t max_order = 50;
  std::size_t matrices = 100;
  std::optional<std::uint64_t> seed;
};

void add_options(CLI::App* s, DimsOptions& o) {
  s->add_option("--space", o.space, "space kind")->required();
  s->add_option("--m", o.m, "real dimension")->required();
  s->add_option("--n-max", o.n_max, "largest degree")->required();
}

void add_options(CLI::App* s, QuadOptions& o) {
  s->add_option("--space", o.space, "space kind (sets alpha, beta)");
  s->add_option("--m", o.m, "real dimension");
  s->add_option("--alpha", o.alpha, "Jacobi alpha");
  s->add_option("--beta", o.beta, "Jacobi beta");
  s->add_option("--nodes", o.nodes, "number of nodes")->required();
}

void add_options(CLI::App* s, SpectrumOptions& o) {
  s->add_option("--space", o.space, "space kind")->required();
  s->add_option("--m", o.m, "real dimension")->required();
  s->add_option("--coeff-family", o.family, "algebraic, geometric or genfun");
  s->add_option("--gamma", o.gamma, "algebraic exponent");
  s->add_option("--param", o.param, "q for geometric, z for genfun");
  s->add_option("--count", o.count, "number of entries");
  s->add_option("--r", o.r, "Laplace-Beltrami power applied to the kernel");
  s->add_option("--max-degree", o.max_degree, "stored degree range");
  s->add_flag("--pad-zeros", o.pad_zeros, "pad a short spectrum with zeros");
}

void add_options(CLI::App* s, NystromOptions& o) {
  s->add_option("--family", o.family, "geometric, genfun or algebraic")->required();
  s->add_option("--param", o.param, "family parameter")->required();
  s->add_option("--grid", o.grid, "polar x azimuthal, e.g. 24x48");
  s->add_option("--top-k", o.top_k, "eigenvalues compared");
  s->add_option("--tol", o.tol, "relative tolerance");
}

void add_options(CLI::App* s, VerifyOptions& o) {
  s->add_option("--theorem", o.theorem, "2.1, 2.2 or 2.3")->required();
  s->add_option("--space", o.space, "space kind")->required();
  s->add_option("--m", o.m, "real dimension")->required();
  s->add_option("--r", o.r, "Sobolev order")->required();
  s->add_option("--p", o.p, "Schatten or derivative exponent");
  s->add_option("--gamma", o.gamma, "algebraic exponent")->required();
  s->add_option("--count", o.count, "spectrum entries");
  s->add_option("--tail", o.tail, "tail fraction of the fit window");
}

void add_options(CLI::App* s, LemmasOptions& o) {
  s->add_option("--space", o.space, "space kind")->required();
  s->add_option("--m", o.m, "real dimension")->required();
  s->add_option("--n-max", o.n_max, "scan limit");
}

void add_options(CLI::App* s, WeylOptions& o) {
  s->add_option("--kind", o.kind, "symmetric, nilpotent or rank-one");
  s->add_option("--max-order", o.max_order, "largest matrix order");
  s->add_option("--matrices", o.matrices, "number of matrices");
  s->add_option("--seed", o.seed, "random seed");
}

// ---------------------------------------------------------------------------
// Validation and job construction

SpaceKind require_space(const std::string& name) {
  if (auto k = parse_space(name)) return *k;
  throw ConfigError("unknown space '" + name +
                    "' (expected sphere, real-projective, complex-projective, quaternion-projective, cayley)");
}

CoefficientFamily require_family(const std::string& name) {
  if (auto f = parse_family(name)) return *f;
  throw ConfigError("unknown coefficient family '" + name + "' (expected algebraic, geometric, genfun)");
}

Job prepare(const DimsOptions& o) {
  const auto params = space_params(require_space(o.space), o.m);
  if (o.n_max < 0) throw ConfigError("--n-max must be nonnegative");
  return [params, n_max = o.n_max] { return JobOutput{{{"csv", report::dims_csv(params, n_max)}}, true, {}}; };
}

Job prepare(const QuadOptions& o) {
  if (o.nodes < 1) throw ConfigError("--nodes must be positive");
  std::optional<JacobiParams> jp;
  if (!o.space.empty()) {
    if (o.alpha || o.beta) throw ConfigError("give either --space/--m or --alpha/--beta, not both");
    jp = JacobiParams::from_geometry(space_params(require_space(o.space), o.m));
  } else {
    if (!o.alpha || !o.beta) throw ConfigError("quad needs --space and --m, or --alpha and --beta");
    jp = JacobiParams(*o.alpha, *o.beta);
  }
  return [p = *jp, n = o.nodes] { return JobOutput{{{"csv", report::quadrature_csv(gauss_jacobi(p, n))}}, true, {}}; };
}

Job prepare(const SpectrumOptions& o) {
  const auto params = space_params(require_space(o.space), o.m);
  const auto family = require_family(o.family);
  if (o.count < 1) throw ConfigError("--count must be positive");
  const SobolevOrder r(o.r);
  double parameter;
  if (family == CoefficientFamily::Algebraic) {
    if (!o.gamma) throw ConfigError("algebraic family needs --gamma");
    if (o.param) throw ConfigError("algebraic family takes --gamma, not --param");
    parameter = *o.gamma;
  } else {
    if (!o.param) throw ConfigError(std::string(family_name(family)) + " family needs --param");
    if (o.gamma) throw ConfigError(std::string(family_name(family)) + " family takes --param, not --gamma");
    parameter = *o.param;
  }
  const int max_degree = o.max_degree ? *o.max_degree : static_cast<int>(degree_to_fill(params, o.count));
  // builds the kernel now so family preconditions fail before any job runs
  auto kernel = apply_lb(make_family_kernel(params, family, parameter, max_degree), r);
  if (!o.pad_zeros && stored_spectrum_size(kernel) < o.count) {
    throw ConfigError("--max-degree " + std::to_string(max_degree) + " stores fewer than --count " +
                      std::to_string(o.count) + " entries; raise it or pass --pad-zeros");
  }
  return [kernel = std::move(kernel), count = o.count, pad = o.pad_zeros] {
    return JobOutput{{{"csv", report::spectrum_csv(zonal_spectrum(kernel, count, pad))}}, true, {}};
  };
}

std::pair<int, int> parse_grid(const std::string& grid) {
  const auto x = grid.find('x');
  if (x == std::string::npos) throw ConfigError("--grid must look like 24x48, got '" + grid + "'");
  try {
    std::size_t used1 = 0, used2 = 0;
    const int np = std::stoi(grid.substr(0, x), &used1);
    const int na = std::stoi(grid.substr(x + 1), &used2);
    if (used1 != x || used2 != grid.size() - x - 1 || np < 1 || na < 1) throw std::invalid_argument(grid);
    return {np, na};
  } catch (const std::logic_error&) {
    throw ConfigError("--grid must look like 24x48, got '" + grid + "'");
  }
}

Job prepare(const NystromOptions& o) {
  const auto family = require_family(o.family);
  const auto [np, na] = parse_grid(o.grid);
  if (o.top_k < 1) throw ConfigError("--top-k must be positive");
  if (o.top_k > static_cast<std::size_t>(np) * na) throw ConfigError("--top-k exceeds the number of grid points");
  if (!(o.tol > 0.0)) throw ConfigError("--tol must be positive");
  sphere_family_profile(family, o.param);  // parameter check
  return [family, o, np, na] {
    const auto cmp = nystrom_check(family, o.param, np, na, o.top_k);
    const report::NystromCheck c{np, na, o.top_k, cmp.max_rel_error, o.tol, cmp.max_rel_error <= o.tol};
    return JobOutput{{{"json", report::nystrom_check_json(c)}}, c.pass, {}};
  };
}

Job prepare(const VerifyOptions& o) {
  const auto theorem = parse_theorem(o.theorem);
  if (!theorem) throw ConfigError("unknown theorem '" + o.theorem + "' (expected 2.1, 2.2, 2.3)");
  const auto params = space_params(require_space(o.space), o.m);
  if (*theorem != DecayTheorem::EigenvaluesSquareIntegrableDerivative && !o.p) {
    throw ConfigError("theorem " + o.theorem + " needs --p");
  }
  const double p = o.p.value_or(2.0);
  if (!(o.tail > 0.0 && o.tail <= 1.0)) throw ConfigError("--tail must lie in (0, 1]");
  check_theorem_hypotheses(*theorem, params, o.r, p, o.gamma);
  return [t = *theorem, params, o, p] {
    const auto rep = verify_theorem(t, params, o.r, p, o.gamma, o.count, o.tail);
    return JobOutput{{{"json", report::verify_json(rep)},
                      {"csv", report::verify_csv_header() + report::verify_csv_row(rep)}},
                     rep.pass,
                     rep};
  };
}

Job prepare(const LemmasOptions& o) {
  const auto params = space_params(require_space(o.space), o.m);
  if (o.n_max < 10) throw ConfigError("--n-max must be at least 10");
  return [params, n_max = o.n_max] {
    const auto lemmas = check_counting_lemmas(params, n_max);
    const bool pass = std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaReport& l) { return l.pass(); });
    return JobOutput{{{"json", report::lemmas_json(params, n_max, lemmas)}}, pass, {}};
  };
}

Job prepare(const WeylOptions& o, std::uint64_t default_seed) {
  const auto kind = parse_weyl_case(o.kind);
  if (!kind) throw ConfigError("unknown matrix kind '" + o.kind + "' (expected symmetric, nilpotent, rank-one)");
  if (o.max_order < 2) throw ConfigError("--max-order must be at least 2");
  if (*kind != WeylCase::Symmetric && o.max_order > kMaxGeneralOrder) {
    throw ConfigError("--max-order for nonsymmetric matrices is at most " + std::to_string(kMaxGeneralOrder));
  }
  if (o.matrices < 1) throw ConfigError("--matrices must be positive");
  return [k = *kind, o, seed = o.seed.value_or(default_seed)] {
    const auto sweep = weyl_sweep(k, o.max_order, o.matrices, seed);
    return JobOutput{{{"json", report::weyl_json(sweep)}}, sweep.pass, {}};
  };
}

// ---------------------------------------------------------------------------
// Subcommand registry

constexpr std::uint64_t kDefaultSeed = 20240101;

// Holds the option storage for one parsed subcommand.
struct Command {
  std::string name;
  std::function<Job(std::uint64_t default_seed)> prepare;
};

template <class Options>
CLI::App* register_command(CLI::App& app, const std::string& name, const std::string& description,
                           std::vector<std::shared_ptr<Command>>& cmds) {
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand(name, description);
  add_options(sub, *opts);
  auto cmd = std::make_shared<Command>();
  cmd->name = name;
  cmd->prepare = [opts](std::uint64_t seed) {
    if constexpr (std::is_same_v<Options, WeylOptions>) {
      return prepare(*opts, seed);
    } else {
      (void)seed;
      return prepare(*opts);
    }
  };
  cmds.push_back(cmd);
  return sub;
}

struct Parser {
  CLI::App app{"Spectra of zonal integral operators on compact two-point homogeneous spaces", "homspec"};
  std::vector<std::shared_ptr<Command>> commands;

  Parser() {
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    register_command<DimsOptions>(app, "dims", "eigenspace and cumulative dimensions", commands);
    register_command<QuadOptions>(app, "quad", "Gauss-Jacobi nodes and weights", commands);
    register_command<SpectrumOptions>(app, "spectrum", "block-ordered zonal spectrum", commands);
    register_command<NystromOptions>(app, "nystrom-check", "Nystrom versus analytic spectrum on S^2", commands);
    register_command<VerifyOptions>(app, "verify", "slope check of a decay theorem", commands);
    register_command<LemmasOptions>(app, "lemmas", "exact counting-lemma scans", commands);
    register_command<WeylOptions>(app, "weyl", "Weyl product inequality on random matrices", commands);
  }

  const Command& selected() const {
    for (const auto& c : commands) {
      if (app.got_subcommand(c->name)) return *c;
    }
    throw ConfigError("no subcommand given");
  }
};

// ---------------------------------------------------------------------------
// Output

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

std::optional<fs::path> env_out_dir() {
  const char* v = std::getenv("HOMSPEC_OUT");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return fs::path(v);
}

void write_outputs(const fs::path& dir, const std::string& stem, const JobOutput& out) {
  fs::create_directories(dir);
  for (const auto& f : out.files) write_atomic(dir / (stem + "." + f.extension), f.content);
}

// ---------------------------------------------------------------------------
// Config files

struct Section {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> entries;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::vector<Section> sections;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
          })) {
        throw ConfigError(where + "section names may use letters, digits, '-', '_' and '.'");
      }
      for (const auto& s : sections) {
        if (s.name == name) throw ConfigError(where + "duplicate section [" + name + "]");
      }
      sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (sections.empty()) throw ConfigError(where + "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    for (const auto& [k, v] : sections.back().entries) {
      if (k == key) throw ConfigError(where + "duplicate key '" + key + "'");
    }
    sections.back().entries.emplace_back(key, value);
  }
  return sections;
}

struct PlannedJob {
  std::string section;
  std::string command;
  Job job;
};

struct Plan {
  std::optional<fs::path> out_dir;
  std::uint64_t seed = kDefaultSeed;
  std::vector<PlannedJob> jobs;
};

std::uint64_t parse_seed(const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value.front() == '-') throw std::invalid_argument(value);
    const auto s = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return s;
  } catch (const std::logic_error&) {
    throw ConfigError("seed must be a nonnegative integer, got '" + value + "'");
  }
}

Plan plan_config(const fs::path& path) {
  Plan plan;
  const auto sections = read_config(path);
  // the [output] section is read first so its seed applies to every job
  for (const auto& s : sections) {
    if (s.name != "output") continue;
    for (const auto& [k, v] : s.entries) {
      if (k == "dir") {
        plan.out_dir = fs::path(v);
      } else if (k == "seed") {
        plan.seed = parse_seed(v);
      } else {
        throw ConfigError("[output]: unknown key '" + k + "' (expected dir, seed)");
      }
    }
  }
  for (const auto& s : sections) {
    if (s.name == "output") continue;
    const std::string where = "[" + s.name + "] (line " + std::to_string(s.line) + "): ";
    std::string command;
    std::vector<std::string> args;
    for (const auto& [k, v] : s.entries) {
      if (k == "command") {
        command = v;
      } else {
        args.push_back("--" + k + "=" + v);
      }
    }
    if (command.empty()) throw ConfigError(where + "missing 'command'");
    if (command == "run") throw ConfigError(where + "config files cannot nest 'run'");
    args.insert(args.begin(), command);
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

    Parser parser;
    try {
      parser.app.parse(args);
    } catch (const CLI::ParseError& e) {
      throw ConfigError(where + e.what());
    }
    try {
      plan.jobs.push_back({s.name, command, parser.selected().prepare(plan.seed)});
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (plan.jobs.empty()) throw ConfigError(path.string() + ": no job sections");
  return plan;
}

std::vector<JobOutput> execute(const std::vector<PlannedJob>& jobs, unsigned n_threads) {
  std::vector<JobOutput> results(jobs.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].job();
    return results;
  }
  // at most n_threads jobs in flight; results keep section order
  for (std::size_t begin = 0; begin < jobs.size(); begin += n_threads) {
    const std::size_t end = std::min(jobs.size(), begin + n_threads);
    std::vector<std::future<JobOutput>> futures;
    for (std::size_t i = begin; i < end; ++i) futures.push_back(std::async(std::launch::async, jobs[i].job));
    for (std::size_t i = begin; i < end; ++i) results[i] = futures[i - begin].get();
  }
  return results;
}

int run_config(const fs::path& config, unsigned n_threads, const std::optional<fs::path>& cli_out,
               std::ostream& out) {
  const Plan plan = plan_config(config);
  fs::path dir = "homspec-out";
  if (plan.out_dir) dir = *plan.out_dir;
  if (cli_out) dir = *cli_out;
  if (auto env = env_out_dir()) dir = *env;

  const auto results = execute(plan.jobs, n_threads);

  bool all_pass = true;
  std::string summary;
  for (std::size_t i = 0; i < results.size(); ++i) {
    write_outputs(dir, plan.jobs[i].section, results[i]);
    all_pass = all_pass && results[i].pass;
    if (results[i].verify) summary += report::verify_csv_row(*results[i].verify);
    out << plan.jobs[i].section << " " << plan.jobs[i].command << " " << (results[i].pass ? "pass" : "fail")
        << "\n";
  }
  if (!summary.empty()) {
    fs::create_directories(dir);
    write_atomic(dir / "verify_summary.csv", report::verify_csv_header() + summary);
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parser parser;
  std::string out_dir;
  std::string config;
  unsigned jobs = 1;
  parser.app.add_option("--out", out_dir, "output directory (HOMSPEC_OUT overrides)");
  auto* run_cmd = parser.app.add_subcommand("run", "execute every job of a config file");
  run_cmd->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--jobs", jobs, "jobs run in parallel")->check(CLI::Range(1u, 256u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    parser.app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << parser.app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    std::optional<fs::path> dir;
    if (!out_dir.empty()) dir = fs::path(out_dir);
    if (parser.app.got_subcommand(run_cmd)) return run_config(config, jobs, dir, out);

    const Command& cmd = parser.selected();
    const Job job = cmd.prepare(kDefaultSeed);
    const JobOutput result = job();
    if (auto env = env_out_dir()) dir = *env;
    if (dir) {
      write_outputs(*dir, cmd.name, result);
    } else {
      out << result.files.front().content;
    }
    return result.pass ? kExitPass : kExitFail;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace homspec::cli
