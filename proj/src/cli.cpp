#include "hilbmod/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hilbmod/experiments.hpp"
#include "hilbmod/polynomial.hpp"
#include "hilbmod/report.hpp"
#include "hilbmod/weights.hpp"

namespace hilbmod {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (cur.empty()) throw InvalidArgument("empty entry in list '" + s + "'");
    out.push_back(cur);
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

double parseDouble(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t == "inf" || t == "infinity") return kInfinity;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0') throw InvalidArgument(what + ": '" + s + "' is not a number");
  return v;
}

int parseInt(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || v < INT32_MIN || v > INT32_MAX)
    throw InvalidArgument(what + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

std::vector<double> parseDoubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : splitList(s)) out.push_back(parseDouble(t, what));
  return out;
}

std::vector<int> parseInts(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const auto& t : splitList(s)) out.push_back(parseInt(t, what));
  return out;
}

Scalar parseComplex(const std::string& text) {
  const std::string s = trim(text);
  const char* p = s.c_str();
  char* end = nullptr;
  const double first = std::strtod(p, &end);
  if (end == p) {
    if (s == "i") return {0.0, 1.0};
    throw InvalidArgument("bad coordinate '" + text + "'");
  }
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i' && end[1] == '\0') return {0.0, first};
  if (*end != '+' && *end != '-') throw InvalidArgument("bad coordinate '" + text + "'");
  const char* rest = end;
  const double second = std::strtod(rest, &end);
  if (end == rest || *end != 'i' || end[1] != '\0') throw InvalidArgument("bad coordinate '" + text + "'");
  return {first, second};
}

std::string formatComplex(Scalar z) {
  if (z.imag() == 0.0) return format_number(z.real());
  std::string im = format_number(z.imag());
  if (im.front() != '-') im = "+" + im;
  return format_number(z.real()) + im + "i";
}

template <class T, class F>
std::string joinWith(const std::vector<T>& v, F&& f, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + f(v[i]);
  return out;
}

std::string configSchema() {
  return "Config file (--config FILE): one 'key = value' per line, '#' starts a comment,\n"
         "lists are comma-separated. Keys are the long option names without '--'\n"
         "(e.g. 'm = 2', 'delta = 0.25,1.0', 'gens = z1^2+z2^2'), plus an optional\n"
         "'experiment = <subcommand>' line. Flags given on the command line override\n"
         "config values; unknown keys are rejected.\n"
         "Reports go to <out>/<experiment>-<tag or timestamp>/ (report.json + one CSV per table);\n"
         "the output root is --out, else $" + std::string(kOutputRootEnv) + ", else ./out.\n";
}

/// Raw option values as typed; converted to a RunConfig after parsing.
struct RawOptions {
  std::map<std::string, std::string> values;
};

void addOption(CLI::App* app, RawOptions& raw, const std::string& key, const std::string& help,
               bool required = false) {
  auto* opt = app->add_option_function<std::string>(
      "--" + key, [&raw, key](const std::string& v) { raw.values[key] = v; }, help);
  opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  if (required) opt->required();
}

void addCommon(CLI::App* app, RawOptions& raw) {
  addOption(app, raw, "seed", "random seed (default 1)");
  addOption(app, raw, "threads", "worker threads (default: machine parallelism)");
  addOption(app, raw, "out", "output root directory");
  addOption(app, raw, "tag", "report directory suffix instead of a timestamp");
  addOption(app, raw, "rel-increment-tol", "CONVERGING: last-quarter relative increments below this (1e-3)");
  addOption(app, raw, "converge-rate", "CONVERGING: increment density decays at least like N^-rate (1.2)");
  addOption(app, raw, "diverge-rate", "DIVERGING: increment density decays no faster than N^-rate (1.05)");
  addOption(app, raw, "diverge-growth", "DIVERGING: required last/first value ratio (2)");
  addOption(app, raw, "fit-begin", "decay fit window start, fraction of positive values (0.05)");
  addOption(app, raw, "fit-end", "decay fit window end, fraction of positive values (0.5)");
}

struct Parsed {
  std::string experiment;
  RawOptions raw;
};

std::vector<std::string> configTokens(const std::string& text, const std::string& experiment) {
  std::vector<std::string> tokens;
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CliExit(2, "config line " + std::to_string(lineNo) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw CliExit(2, "config line " + std::to_string(lineNo) + ": empty key");
    if (key == "experiment") {
      if (!experiment.empty() && value != experiment)
        throw CliExit(2, "config is for experiment '" + value + "' but the subcommand is '" + experiment + "'");
      continue;
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

std::string readFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CliExit(2, "cannot read config file '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

/// Splices --config FILE into key/value tokens placed before the remaining
/// flags, so that explicit flags win.
std::vector<std::string> expandConfig(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::vector<std::string> fromConfig, rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CliExit(2, "--config needs a file name");
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    auto t = configTokens(readFile(file), args[0]);
    fromConfig.insert(fromConfig.end(), t.begin(), t.end());
  }
  std::vector<std::string> out{args[0]};
  out.insert(out.end(), fromConfig.begin(), fromConfig.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

RunConfig toConfig(const Parsed& p) {
  RunConfig c;
  c.experiment = p.experiment;
  const auto& v = p.raw.values;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = v.find(k);
    return it == v.end() ? nullptr : &it->second;
  };
  if (auto s = get("family")) c.family = trim(*s);
  if (auto s = get("m")) c.m = parseInt(*s, "--m");
  if (auto s = get("k")) c.k = parseInt(*s, "--k");
  if (auto s = get("N")) c.N = parseInt(*s, "--N");
  if (auto s = get("blocks")) c.blocks = parseInt(*s, "--blocks");
  if (auto s = get("trials")) c.trials = parseInt(*s, "--trials");
  if (auto s = get("n")) c.nValues = parseInts(*s, "--n");
  if (auto s = get("degrees")) c.degrees = parseInts(*s, "--degrees");
  if (auto s = get("delta")) c.deltas = parseDoubles(*s, "--delta");
  if (auto s = get("p")) c.pValues = parseDoubles(*s, "--p");
  if (auto s = get("gens")) c.generators = splitList(*s);
  if (auto s = get("points")) c.points = parse_points(*s);
  if (auto s = get("zero-dim")) c.zeroSetDimension = parseDouble(*s, "--zero-dim");
  if (auto s = get("seed")) {
    const std::string t = trim(*s);
    char* end = nullptr;
    c.seed = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || t.front() == '-') throw InvalidArgument("--seed: '" + *s + "' is not a seed");
  }
  if (auto s = get("threads")) {
    const int t = parseInt(*s, "--threads");
    if (t < 0) throw InvalidArgument("--threads must be >= 0");
    c.threads = static_cast<unsigned>(t);
  }
  if (auto s = get("out")) c.outputRoot = *s;
  if (auto s = get("tag")) c.tag = *s;
  if (auto s = get("rel-increment-tol")) c.thresholds.relIncrementTol = parseDouble(*s, "--rel-increment-tol");
  if (auto s = get("converge-rate")) c.thresholds.convergeRate = parseDouble(*s, "--converge-rate");
  if (auto s = get("diverge-rate")) c.thresholds.divergeRate = parseDouble(*s, "--diverge-rate");
  if (auto s = get("diverge-growth")) c.thresholds.divergeGrowth = parseDouble(*s, "--diverge-growth");
  if (auto s = get("fit-begin")) c.fitBegin = parseDouble(*s, "--fit-begin");
  if (auto s = get("fit-end")) c.fitEnd = parseDouble(*s, "--fit-end");
  if (c.m && *c.m < 1) throw InvalidArgument("--m must be >= 1");
  if (c.k && *c.k < 1) throw InvalidArgument("--k must be >= 1");
  if (c.m)
    for (const auto& g : c.generators) {
      try {
        parse_polynomial(g, *c.m, c.k.value_or(1));
      } catch (const PolynomialSyntaxError& e) {
        throw InvalidArgument("generator '" + g + "': " + e.what());
      }
    }
  return c;
}

}  // namespace

std::vector<std::vector<Scalar>> parse_points(const std::string& text) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& pt : splitList(text)) {
    std::vector<Scalar> coords;
    for (const auto& c : splitList(pt, ':')) coords.push_back(parseComplex(c));
    if (!out.empty() && coords.size() != out.front().size())
      throw InvalidArgument("points have different numbers of coordinates");
    out.push_back(std::move(coords));
  }
  return out;
}

RunConfig parse_args(const std::vector<std::string>& argsIn) {
  CLI::App app{"Truncated Hilbert-module computations: Schatten norms of commutators of module shifts."};
  app.name("hilbmod");
  app.require_subcommand(1);
  const std::string footer = std::string("\n") + polynomial_grammar_help() + "\n\n" + configSchema();
  app.footer(footer);

  RawOptions raw;
  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->footer(footer);
    subs[name] = s;
    return s;
  };

  auto* e3 = sub("example3", "weighted shifts S_n: ||[S_n*,S_n]||_p and the restriction to V_n");
  addOption(e3, raw, "n", "comma list of n (default 1,5,25,100)");
  addOption(e3, raw, "p", "comma list of p >= 1, 'inf' allowed (default 1,2,3)");
  addOption(e3, raw, "N", "truncation degree, must exceed max(n) + 5 (default max(n) + 6)");
  addCommon(e3, raw);

  auto* ce = sub("counterexample", "partial direct sums of the S_n, full and restricted");
  addOption(ce, raw, "blocks", "number of blocks B >= 8 (default 64)");
  addOption(ce, raw, "p", "comma list of p (default 1.5,2,3)");
  addCommon(ce, raw);

  auto* e5 = sub("example5", "factorial-delta weights: trace norms of [Zi*,Zj], Hilbert-Schmidt norms of Zi");
  addOption(e5, raw, "m", "number of variables (>= 2)", true);
  addOption(e5, raw, "delta", "comma list of delta (default 0.25,0.5,1,1.25)");
  addOption(e5, raw, "degrees", "comma list of truncation degrees (default sweep for m)");
  addCommon(e5, raw);

  auto* ap = sub("arveson-probe", "submodule from homogeneous generators: S_p trends of the restrictions");
  addOption(ap, raw, "family", "weight family (see list-families; default drury-arveson)");
  addOption(ap, raw, "m", "number of variables", true);
  addOption(ap, raw, "k", "multiplicity (default 1)");
  addOption(ap, raw, "delta", "delta for factorial-delta (default 1)");
  addOption(ap, raw, "gens", "comma list of generators (polynomial syntax below)", true);
  addOption(ap, raw, "p", "comma list of p (default 3)");
  addOption(ap, raw, "degrees", "comma list of truncation degrees (default sweep for m)");
  addCommon(ap, raw);

  auto* bs = sub("berger-shaw", "spectral split of restricted self-commutators: 0 <= Tr P <= ||C||_1");
  addOption(bs, raw, "family", "weight family (default bergman-ball)");
  addOption(bs, raw, "m", "number of variables", true);
  addOption(bs, raw, "delta", "delta for factorial-delta (default 1)");
  addOption(bs, raw, "points", "points in the ball: ',' between points, ':' between coordinates");
  addOption(bs, raw, "gens", "comma list of generators of S (alternative to --points)");
  addOption(bs, raw, "degrees", "comma list of truncation degrees (default sweep for m)");
  addCommon(bs, raw);

  auto* qp = sub("quotient-probe", "compressions to the quotient: commutator decay and critical exponent");
  addOption(qp, raw, "family", "weight family (default bergman-ball)");
  addOption(qp, raw, "m", "number of variables (2 or 3)", true);
  addOption(qp, raw, "delta", "delta for factorial-delta (default 1)");
  addOption(qp, raw, "gens", "comma list of generators (any polynomials)", true);
  addOption(qp, raw, "p", "comma list of p (default 1,2)");
  addOption(qp, raw, "degrees", "comma list of truncation degrees (default sweep for m)");
  addOption(qp, raw, "zero-dim", "dimension of the zero set, as supplied by the user (reported only)");
  addCommon(qp, raw);

  auto* l1 = sub("lemma1-check", "random monomial submodules: block identity for restricted self-commutators");
  addOption(l1, raw, "trials", "number of random instances (default 200)");
  addCommon(l1, raw);

  sub("list-families", "print the built-in weight families");

  std::vector<std::string> args;
  try {
    args = expandConfig(argsIn);
  } catch (const CliExit& e) {
    throw CliExit(2, std::string(e.what()) + "\n\n" + app.help());
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (const auto& [name, s] : subs)
      if (s->parsed()) throw CliExit(0, s->help());
    throw CliExit(0, app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw CliExit(0, app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    std::string help = app.help();
    for (const auto& [name, s] : subs)
      if (s->parsed()) help = s->help();
    throw CliExit(2, std::string("error: ") + e.what() + "\n\n" + help);
  }

  Parsed parsed;
  for (const auto& [name, s] : subs)
    if (s->parsed()) parsed.experiment = name;
  parsed.raw = raw;
  try {
    return toConfig(parsed);
  } catch (const InvalidArgument& e) {
    throw CliExit(2, std::string("error: ") + e.what() + "\n\n" + subs[parsed.experiment]->help());
  }
}

std::string config_text(const RunConfig& c) {
  std::ostringstream os;
  auto ints = [](const std::vector<int>& v) { return joinWith(v, [](int x) { return std::to_string(x); }); };
  auto nums = [](const std::vector<double>& v) { return joinWith(v, format_number); };
  os << "experiment = " << c.experiment << '\n';
  if (c.family) os << "family = " << *c.family << '\n';
  if (c.m) os << "m = " << *c.m << '\n';
  if (c.k) os << "k = " << *c.k << '\n';
  if (c.N) os << "N = " << *c.N << '\n';
  if (c.blocks) os << "blocks = " << *c.blocks << '\n';
  if (c.trials) os << "trials = " << *c.trials << '\n';
  if (!c.nValues.empty()) os << "n = " << ints(c.nValues) << '\n';
  if (!c.degrees.empty()) os << "degrees = " << ints(c.degrees) << '\n';
  if (!c.deltas.empty()) os << "delta = " << nums(c.deltas) << '\n';
  if (!c.pValues.empty()) os << "p = " << nums(c.pValues) << '\n';
  if (!c.generators.empty()) os << "gens = " << joinWith(c.generators, [](const std::string& s) { return s; }) << '\n';
  if (!c.points.empty())
    os << "points = "
       << joinWith(c.points, [](const std::vector<Scalar>& p) { return joinWith(p, formatComplex, ":"); }) << '\n';
  if (c.zeroSetDimension) os << "zero-dim = " << format_number(*c.zeroSetDimension) << '\n';
  os << "seed = " << c.seed << '\n';
  os << "threads = " << c.threads << '\n';
  if (c.outputRoot) os << "out = " << *c.outputRoot << '\n';
  if (c.tag) os << "tag = " << *c.tag << '\n';
  os << "rel-increment-tol = " << format_number(c.thresholds.relIncrementTol) << '\n';
  os << "converge-rate = " << format_number(c.thresholds.convergeRate) << '\n';
  os << "diverge-rate = " << format_number(c.thresholds.divergeRate) << '\n';
  os << "diverge-growth = " << format_number(c.thresholds.divergeGrowth) << '\n';
  os << "fit-begin = " << format_number(c.fitBegin) << '\n';
  os << "fit-end = " << format_number(c.fitEnd) << '\n';
  return os.str();
}

RunConfig parse_config_text(const std::string& text) {
  std::string experiment;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq != std::string::npos && trim(line.substr(0, eq)) == "experiment") experiment = trim(line.substr(eq + 1));
  }
  if (experiment.empty()) throw CliExit(2, "config text has no 'experiment = ...' line");
  std::vector<std::string> args{experiment};
  const auto tokens = configTokens(text, experiment);
  args.insert(args.end(), tokens.begin(), tokens.end());
  return parse_args(args);
}

std::string output_directory(const RunConfig& c) {
  std::string root = "out";
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) root = env;
  if (c.outputRoot) root = *c.outputRoot;
  std::string suffix;
  if (c.tag) {
    suffix = *c.tag;
  } else {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y%m%d-%H%M%S");
    suffix = os.str();
  }
  return (std::filesystem::path(root) / (c.experiment + "-" + suffix)).string();
}

namespace {

ExperimentReport runExperiment(const RunConfig& c, const ExperimentOptions& opts) {
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(c.experiment + ": " + msg);
  };
  const double delta = c.deltas.empty() ? 1.0 : c.deltas.front();
  if (c.experiment == "example3") {
    const std::vector<int> ns = c.nValues.empty() ? std::vector<int>{1, 5, 25, 100} : c.nValues;
    const std::vector<double> ps = c.pValues.empty() ? std::vector<double>{1, 2, 3} : c.pValues;
    int maxN = 1;
    for (int n : ns) maxN = std::max(maxN, n);
    return run_example3(ns, ps, c.N.value_or(maxN + 6), opts);
  }
  if (c.experiment == "counterexample")
    return run_counterexample_direct_sum(c.blocks.value_or(64),
                                         c.pValues.empty() ? std::vector<double>{1.5, 2, 3} : c.pValues,
                                         opts);
  if (c.experiment == "example5")
    return run_example5(*c.m, c.deltas.empty() ? std::vector<double>{0.25, 0.5, 1.0, 1.25} : c.deltas, c.degrees, opts);
  if (c.experiment == "arveson-probe") {
    require(c.deltas.size() <= 1, "takes a single delta");
    ProbeSpec s;
    s.family = c.family.value_or("drury-arveson");
    s.m = *c.m;
    s.k = c.k.value_or(1);
    s.delta = delta;
    s.generators = c.generators;
    if (!c.pValues.empty()) s.pValues = c.pValues;
    s.degrees = c.degrees;
    return run_arveson_probe(s, opts);
  }
  if (c.experiment == "berger-shaw") {
    require(c.deltas.size() <= 1, "takes a single delta");
    require(c.points.empty() != c.generators.empty(), "give exactly one of --points and --gens");
    BergerShawSpec s;
    s.family = c.family.value_or("bergman-ball");
    s.m = *c.m;
    s.delta = delta;
    s.points = c.points;
    s.generators = c.generators;
    s.degrees = c.degrees;
    return run_berger_shaw_check(s, opts);
  }
  if (c.experiment == "quotient-probe") {
    require(c.deltas.size() <= 1, "takes a single delta");
    QuotientProbeSpec s;
    s.family = c.family.value_or("bergman-ball");
    s.m = *c.m;
    s.delta = delta;
    s.generators = c.generators;
    if (!c.pValues.empty()) s.pValues = c.pValues;
    s.degrees = c.degrees;
    s.zeroSetDimension = c.zeroSetDimension;
    return run_quotient_smoothness_probe(s, opts);
  }
  if (c.experiment == "lemma1-check") return run_lemma1_check(c.trials.value_or(200), opts);
  throw InvalidArgument("unknown experiment '" + c.experiment + "'");
}

}  // namespace

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.experiment == "list-families") {
    for (const auto& f : weight_families()) {
      out << std::left << std::setw(18) << f.id << f.description;
      if (f.needsDelta) out << " [--delta]";
      out << '\n';
    }
    return 0;
  }
  ExperimentOptions opts;
  opts.threads = c.threads;
  opts.seed = c.seed;
  opts.thresholds = c.thresholds;
  opts.fitWindow = {c.fitBegin, c.fitEnd};
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  try {
    if (!(opts.fitWindow.begin >= 0 && opts.fitWindow.end > opts.fitWindow.begin && opts.fitWindow.end <= 1))
      throw InvalidArgument("fit window must satisfy 0 <= fit-begin < fit-end <= 1");
    rep = runExperiment(c, opts);
  } catch (const InvarianceError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  rep.runtimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string dir = output_directory(c);
  write_report(rep, dir);
  out << summary_text(rep);
  out << "  runtime_seconds  " << std::fixed << std::setprecision(3) << rep.runtimeSeconds << '\n';
  out << "report: " << dir << '\n';
  return rep.theoremViolation ? 1 : 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const CliExit& e) {
    (e.code() == 0 ? out : err) << e.what() << '\n';
    return e.code();
  }
  try {
    return execute(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hilbmod
