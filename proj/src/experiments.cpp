#include "hilbmod/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "hilbmod/submodules.hpp"

namespace hilbmod {

namespace {

unsigned resolveThreads(unsigned threads) {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..count-1) on up to `threads` workers. The first exception (by
/// index) is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(resolveThreads(threads), std::max<std::size_t>(count, 1));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string fmt(double x) { return format_number(x); }
std::string fmtInt(long long x) { return std::to_string(x); }

template <class T, class F>
std::string joinWith(const std::vector<T>& v, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
  return out;
}

std::string joinInts(const std::vector<int>& v) {
  return joinWith(v, [](int x) { return std::to_string(x); });
}
std::string joinPs(const std::vector<double>& v) { return joinWith(v, format_p); }
std::string joinNums(const std::vector<double>& v) { return joinWith(v, fmt); }

std::vector<int> normalizedSweep(std::vector<int> degrees, int m, int minDegree, const char* what) {
  if (degrees.empty()) degrees = default_degree_sweep(m);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  if (degrees.front() < minDegree)
    throw InvalidArgument(std::string(what) + ": degrees must be >= " + std::to_string(minDegree));
  return degrees;
}

void requirePs(const std::vector<double>& ps, const char* what) {
  if (ps.empty()) throw InvalidArgument(std::string(what) + ": no p values");
  for (double p : ps)
    if (!(p >= 1.0)) throw InvalidArgument(std::string(what) + ": p must be >= 1 (got " + fmt(p) + ")");
}

/// CONVERGING only if all are; DIVERGING if any is.
Verdict combine(const std::vector<Verdict>& vs) {
  if (std::any_of(vs.begin(), vs.end(), [](Verdict v) { return v == Verdict::Diverging; })) return Verdict::Diverging;
  if (!vs.empty() && std::all_of(vs.begin(), vs.end(), [](Verdict v) { return v == Verdict::Converging; }))
    return Verdict::Converging;
  return Verdict::Inconclusive;
}

VerdictEntry combinedVerdict(std::string name, const std::vector<Verdict>& vs, const ConvergenceThresholds& th) {
  return VerdictEntry{std::move(name), combine(vs), "all of the listed pairs", std::nullopt, th.describe()};
}

std::vector<PolynomialGenerator> parseGenerators(const std::vector<std::string>& texts, int m, int k) {
  if (texts.empty()) throw InvalidArgument("no generators given");
  std::vector<PolynomialGenerator> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, m, k));
  return out;
}

std::string pairName(int i, int j) { return "[Z" + std::to_string(i + 1) + "*,Z" + std::to_string(j + 1) + "]"; }

std::mt19937_64 trialRng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void recordOptions(ExperimentReport& r, const ExperimentOptions& opts) {
  r.seed = opts.seed;
  r.param("convergence_thresholds", opts.thresholds.describe());
  r.param("fit_window", fmt(opts.fitWindow.begin) + ".." + fmt(opts.fitWindow.end));
}

}  // namespace

std::vector<int> default_degree_sweep(int m) {
  if (m <= 2) return {8, 12, 16, 20, 28, 40};
  return {6, 9, 12, 16, 20};
}

ExperimentReport run_example3(const std::vector<int>& nValues, const std::vector<double>& pValues, int N,
                              const ExperimentOptions& opts) {
  if (nValues.empty()) throw InvalidArgument("example3: no n values");
  requirePs(pValues, "example3");
  for (int n : nValues)
    if (n < 1) throw InvalidArgument("example3: n must be >= 1");
  const int maxN = *std::max_element(nValues.begin(), nValues.end());
  if (N <= maxN + 5)
    throw InvalidArgument("example3: truncation degree N = " + std::to_string(N) + " must exceed max(n) + 5 = " +
                          std::to_string(maxN + 5));

  struct Cell {
    std::vector<double> full, restricted;
  };
  std::vector<Cell> cells(nValues.size());
  parallel_for(nValues.size(), opts.threads, [&](std::size_t c) {
    const int n = nValues[c];
    auto basis = enumerate_basis(1, N);
    WeightSet w = example3_weights(n, basis);
    TruncatedOperator s = coordinate_shift(w, 0);
    cells[c].full = singular_values(self_commutator(s), Window::Interior);
    SubmoduleBasis v = monomial_submodule(w, {{MultiIndex{n - 1}, 0}});
    Restriction r = restrict_to_invariant(s, v.subspace(Side::Submodule));
    cells[c].restricted = singular_values(self_commutator(r.op), Window::Interior);
  });

  ExperimentReport rep;
  rep.name = "example3";
  rep.param("n", joinInts(nValues));
  rep.param("p", joinPs(pValues));
  rep.param("N", fmtInt(N));
  recordOptions(rep, opts);

  Table t("norms", {"n", "p", "N", "computed", "closed_form", "abs_error", "stated_n^(1-p)", "stated_matches",
                    "restricted", "restricted_error"});
  double worst = 0.0, worstRestricted = 0.0;
  bool statedAlwaysMatches = true;
  for (std::size_t c = 0; c < nValues.size(); ++c) {
    const double n = nValues[c];
    for (double p : pValues) {
      const double computed = schatten_norm_of(cells[c].full, p);
      const double closed = std::isinf(p) ? 1.0 / n : std::pow(n, (1.0 - p) / p);
      const double stated = std::isinf(p) ? (n == 1 ? 1.0 : 0.0) : std::pow(n, 1.0 - p);
      const double restricted = schatten_norm_of(cells[c].restricted, p);
      const bool matches = std::abs(computed - stated) <= 1e-10;
      statedAlwaysMatches = statedAlwaysMatches && matches;
      worst = std::max(worst, std::abs(computed - closed));
      worstRestricted = std::max(worstRestricted, std::abs(restricted - 1.0));
      t.addRow({fmtInt(nValues[c]), format_p(p), fmtInt(N), fmt(computed), fmt(closed), fmt(std::abs(computed - closed)),
                fmt(stated), matches ? "yes" : "no", fmt(restricted), fmt(std::abs(restricted - 1.0))});
    }
  }
  rep.tables.push_back(std::move(t));
  rep.result("max_abs_error_vs_n^((1-p)/p)", fmt(worst));
  rep.result("max_abs_error_restricted_vs_1", fmt(worstRestricted));
  rep.result("stated_n^(1-p)_matches_all_rows", statedAlwaysMatches ? "yes" : "no");
  if (!statedAlwaysMatches)
    rep.notes.push_back("the stated value n^(1-p) is not reproduced by the computation for some rows; "
                        "the computed norms follow n^((1-p)/p)");
  return rep;
}

ExperimentReport run_counterexample_direct_sum(int maxBlocks, const std::vector<double>& pValues,
                                               const ExperimentOptions& opts) {
  if (maxBlocks < 8) throw InvalidArgument("counterexample: need at least 8 blocks");
  requirePs(pValues, "counterexample");

  std::vector<std::optional<TruncatedOperator>> full(maxBlocks), restricted(maxBlocks);
  parallel_for(static_cast<std::size_t>(maxBlocks), opts.threads, [&](std::size_t b) {
    const int n = static_cast<int>(b) + 1;
    auto basis = enumerate_basis(1, n + 6);
    WeightSet w = example3_weights(n, basis);
    TruncatedOperator s = coordinate_shift(w, 0);
    full[b] = self_commutator(s);
    SubmoduleBasis v = monomial_submodule(w, {{MultiIndex{n - 1}, 0}});
    restricted[b] = self_commutator(restrict_to_invariant(s, v.subspace(Side::Submodule)).op);
  });

  std::vector<std::vector<double>> sigmaFull(maxBlocks), sigmaRestricted(maxBlocks);
  parallel_for(static_cast<std::size_t>(maxBlocks), opts.threads, [&](std::size_t b) {
    std::vector<TruncatedOperator> f, r;
    for (std::size_t i = 0; i <= b; ++i) {
      f.push_back(*full[i]);
      r.push_back(*restricted[i]);
    }
    sigmaFull[b] = singular_values(direct_sum(f), Window::Interior);
    sigmaRestricted[b] = singular_values(direct_sum(r), Window::Interior);
  });

  ExperimentReport rep;
  rep.name = "counterexample";
  rep.param("blocks", fmtInt(maxBlocks));
  rep.param("p", joinPs(pValues));
  rep.param("block_truncation", "n+6");
  recordOptions(rep, opts);

  Table ft("full_trend", {"B", "p", "norm", "closed_form", "abs_error"});
  Table rt("restricted_trend", {"B", "p", "norm", "closed_form", "abs_error"});
  double worstRestricted = 0.0;
  for (double p : pValues) {
    std::vector<std::pair<int, double>> fv, rv;
    double partial = 0.0;
    for (int b = 1; b <= maxBlocks; ++b) {
      partial += std::isinf(p) ? 0.0 : std::pow(static_cast<double>(b), 1.0 - p);
      const double fClosed = std::isinf(p) ? 1.0 : std::pow(partial, 1.0 / p);
      const double rClosed = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(b), 1.0 / p);
      const double f = schatten_norm_of(sigmaFull[b - 1], p);
      const double r = schatten_norm_of(sigmaRestricted[b - 1], p);
      worstRestricted = std::max(worstRestricted, std::abs(r - rClosed));
      ft.addRow({fmtInt(b), format_p(p), fmt(f), fmt(fClosed), fmt(std::abs(f - fClosed))});
      rt.addRow({fmtInt(b), format_p(p), fmt(r), fmt(rClosed), fmt(std::abs(r - rClosed))});
      fv.emplace_back(b, f);
      rv.emplace_back(b, r);
    }
    const auto fr = convergence_diagnostic(fv, opts.thresholds);
    const auto rr = convergence_diagnostic(rv, opts.thresholds);
    rep.verdicts.push_back(make_verdict("full p=" + format_p(p), fr));
    rep.verdicts.push_back(make_verdict("restricted p=" + format_p(p), rr));
  }
  rep.tables.push_back(std::move(ft));
  rep.tables.push_back(std::move(rt));
  rep.result("max_abs_error_restricted_vs_B^(1/p)", fmt(worstRestricted));
  return rep;
}

ExperimentReport run_example5(int m, const std::vector<double>& deltas, const std::vector<int>& degreesIn,
                              const ExperimentOptions& opts) {
  if (m < 2) throw InvalidArgument("example5: need m >= 2");
  if (deltas.empty()) throw InvalidArgument("example5: no delta values");
  for (double d : deltas)
    if (!(d > 0.0)) throw InvalidArgument("example5: delta must be positive");
  const auto degrees = normalizedSweep(degreesIn, m, 2, "example5");

  struct Cell {
    std::vector<double> trace;  // m*m, row-major (i, j)
    std::vector<double> hs;     // m
  };
  const std::size_t nd = degrees.size();
  std::vector<Cell> cells(deltas.size() * nd);
  parallel_for(cells.size(), opts.threads, [&](std::size_t c) {
    const double delta = deltas[c / nd];
    auto basis = enumerate_basis(m, degrees[c % nd]);
    WeightSet w = factorial_delta_weights(basis, delta);
    std::vector<TruncatedOperator> z;
    for (int i = 0; i < m; ++i) z.push_back(coordinate_shift(w, i));
    for (int i = 0; i < m; ++i) {
      cells[c].hs.push_back(schatten_norm(z[i], 2.0, Window::Interior));
      for (int j = 0; j < m; ++j)
        cells[c].trace.push_back(schatten_norm(commutator(adjoint(z[i]), z[j]), 1.0, Window::Interior));
    }
  });

  ExperimentReport rep;
  rep.name = "example5";
  rep.param("m", fmtInt(m));
  rep.param("delta", joinNums(deltas));
  rep.param("degrees", joinInts(degrees));
  recordOptions(rep, opts);

  Table tt("cross_commutator_trace_norms", {"delta", "N", "i", "j", "trace_norm"});
  Table ht("shift_hs_norms", {"delta", "N", "i", "hs_norm"});
  Table st("summary", {"delta", "trace_threshold", "trace_predicted", "trace_verdict", "hs_threshold",
                       "hs_predicted", "hs_verdict", "agreement"});
  const double traceThreshold = (m - 1) / 2.0, hsThreshold = m / 2.0;
  auto agrees = [](bool predicted, Verdict v) -> std::string {
    if (v == Verdict::Inconclusive) return "undetermined";
    return (predicted == (v == Verdict::Converging)) ? "yes" : "no";
  };
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    const std::string dl = "delta=" + fmt(deltas[d]);
    std::vector<Verdict> traceVs, hsVs;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::vector<std::pair<int, double>> series;
        for (std::size_t n = 0; n < nd; ++n) {
          const double v = cells[d * nd + n].trace[static_cast<std::size_t>(i * m + j)];
          series.emplace_back(degrees[n], v);
          tt.addRow({fmt(deltas[d]), fmtInt(degrees[n]), fmtInt(i + 1), fmtInt(j + 1), fmt(v)});
        }
        auto res = convergence_diagnostic(series, opts.thresholds);
        traceVs.push_back(res.verdict);
        rep.verdicts.push_back(make_verdict(dl + " trace " + pairName(i, j), res));
      }
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, double>> series;
      for (std::size_t n = 0; n < nd; ++n) {
        const double v = cells[d * nd + n].hs[static_cast<std::size_t>(i)];
        series.emplace_back(degrees[n], v);
        ht.addRow({fmt(deltas[d]), fmtInt(degrees[n]), fmtInt(i + 1), fmt(v)});
      }
      auto res = convergence_diagnostic(series, opts.thresholds);
      hsVs.push_back(res.verdict);
      rep.verdicts.push_back(make_verdict(dl + " hs Z" + std::to_string(i + 1), res));
    }
    auto traceAll = combinedVerdict(dl + " trace all", traceVs, opts.thresholds);
    auto hsAll = combinedVerdict(dl + " hs all", hsVs, opts.thresholds);
    const bool tracePred = deltas[d] > traceThreshold, hsPred = deltas[d] > hsThreshold;
    const std::string agreement =
        agrees(tracePred, traceAll.verdict) == "yes" && agrees(hsPred, hsAll.verdict) == "yes" ? "yes"
        : agrees(tracePred, traceAll.verdict) == "no" || agrees(hsPred, hsAll.verdict) == "no" ? "no"
                                                                                               : "undetermined";
    st.addRow({fmt(deltas[d]), fmt(traceThreshold), tracePred ? "converges" : "diverges", to_string(traceAll.verdict),
               fmt(hsThreshold), hsPred ? "converges" : "diverges", to_string(hsAll.verdict), agreement});
    rep.verdicts.push_back(std::move(traceAll));
    rep.verdicts.push_back(std::move(hsAll));
  }
  rep.tables.push_back(std::move(tt));
  rep.tables.push_back(std::move(ht));
  rep.tables.push_back(std::move(st));
  rep.result("trace_threshold_(m-1)/2", fmt(traceThreshold));
  rep.result("hs_threshold_m/2", fmt(hsThreshold));
  return rep;
}

namespace {

struct SideData {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> sigma;  // m*m, (i, j) row-major
};

SideData crossCommutatorSpectra(const std::vector<TruncatedOperator>& ops, std::size_t dim) {
  SideData s;
  s.dimension = dim;
  const std::size_t m = ops.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      s.sigma.push_back(singular_values(commutator(adjoint(ops[i]), ops[j]), Window::Interior));
  return s;
}

/// Adds norm rows, per-pair verdicts, the aggregate verdict per p, and
/// decay fits at the largest degree for one side of a probe.
void reportSide(ExperimentReport& rep, Table& norms, Table& fits, const std::string& side,
                const std::vector<int>& degrees, const std::vector<SideData>& data,
                const std::vector<double>& pValues, int m, const ExperimentOptions& opts,
                std::optional<double>* bestCritical = nullptr) {
  for (double p : pValues) {
    std::vector<Verdict> vs;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::vector<std::pair<int, double>> series;
        for (std::size_t n = 0; n < degrees.size(); ++n) {
          const double v = schatten_norm_of(data[n].sigma[static_cast<std::size_t>(i * m + j)], p);
          series.emplace_back(degrees[n], v);
          norms.addRow({side, fmtInt(i + 1), fmtInt(j + 1), format_p(p), fmtInt(degrees[n]),
                        fmtInt(static_cast<long long>(data[n].dimension)), fmt(v)});
        }
        auto res = convergence_diagnostic(series, opts.thresholds);
        vs.push_back(res.verdict);
        rep.verdicts.push_back(make_verdict(side + " " + pairName(i, j) + " p=" + format_p(p), res));
      }
    rep.verdicts.push_back(combinedVerdict(side + " all p=" + format_p(p), vs, opts.thresholds));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const DecayFit f = decay_exponent_fit(data.back().sigma[static_cast<std::size_t>(i * m + j)], opts.fitWindow);
      const auto crit = f.criticalExponent();
      if (bestCritical && crit && (!*bestCritical || *crit > **bestCritical)) *bestCritical = crit;
      fits.addRow({side, fmtInt(i + 1), fmtInt(j + 1), fmtInt(degrees.back()),
                   f.exponent ? fmt(*f.exponent) : "INCONCLUSIVE", crit ? fmt(*crit) : "INCONCLUSIVE",
                   f.exponent ? fmt(f.residual) : "", fmtInt(static_cast<long long>(f.firstRank)),
                   fmtInt(static_cast<long long>(f.lastRank)), fmtInt(static_cast<long long>(f.positiveCount))});
    }
}

Table normsTable() { return Table("norms", {"side", "i", "j", "p", "N", "dimension", "value"}); }
Table fitsTable() {
  return Table("decay_fits", {"side", "i", "j", "N", "beta", "critical_exponent", "fit_residual", "first_rank",
                              "last_rank", "positive_count"});
}

}  // namespace

ExperimentReport run_arveson_probe(const ProbeSpec& spec, const ExperimentOptions& opts) {
  if (spec.m < 1 || spec.k < 1) throw InvalidArgument("arveson-probe: need m >= 1 and k >= 1");
  requirePs(spec.pValues, "arveson-probe");
  const auto degrees = normalizedSweep(spec.degrees, spec.m, 1, "arveson-probe");
  const auto gens = parseGenerators(spec.generators, spec.m, spec.k);
  for (const auto& g : gens)
    if (!g.homogeneousDegree())
      throw InvalidArgument("arveson-probe: generator '" + g.toString() + "' is not homogeneous");

  struct Cell {
    SideData sub, quo;
    std::size_t ambient = 0;
    double residual = 0.0;
  };
  std::vector<Cell> cells(degrees.size());
  parallel_for(degrees.size(), opts.threads, [&](std::size_t c) {
    auto basis = enumerate_basis(spec.m, degrees[c], spec.k);
    WeightSet w = make_weights(spec.family, basis, spec.delta);
    SubmoduleBasis s = submodule_from_generators(w, gens);
    const Subspace sub = s.subspace(Side::Submodule), comp = s.subspace(Side::Complement);
    std::vector<TruncatedOperator> y, x;
    for (int i = 0; i < spec.m; ++i) {
      TruncatedOperator z = coordinate_shift(w, i);
      Restriction r = restrict_to_invariant(z, sub);
      cells[c].residual = std::max(cells[c].residual, r.invarianceResidual);
      y.push_back(std::move(r.op));
      x.push_back(compress_to(z, comp));
    }
    cells[c].ambient = basis->dimension();
    cells[c].sub = crossCommutatorSpectra(y, sub.rank());
    cells[c].quo = crossCommutatorSpectra(x, comp.rank());
  });

  ExperimentReport rep;
  rep.name = "arveson-probe";
  rep.param("family", spec.family);
  rep.param("m", fmtInt(spec.m));
  rep.param("k", fmtInt(spec.k));
  if (spec.family == "factorial-delta") rep.param("delta", fmt(spec.delta));
  rep.param("generators", joinWith(gens, [](const PolynomialGenerator& g) { return g.toString(); }));
  rep.param("p", joinPs(spec.pValues));
  rep.param("degrees", joinInts(degrees));
  recordOptions(rep, opts);

  Table dims("dimensions", {"N", "ambient", "submodule", "complement", "invariance_residual"});
  std::vector<SideData> sub, quo;
  double worstResidual = 0.0;
  for (std::size_t c = 0; c < degrees.size(); ++c) {
    dims.addRow({fmtInt(degrees[c]), fmtInt(static_cast<long long>(cells[c].ambient)),
                 fmtInt(static_cast<long long>(cells[c].sub.dimension)),
                 fmtInt(static_cast<long long>(cells[c].quo.dimension)), fmt(cells[c].residual)});
    worstResidual = std::max(worstResidual, cells[c].residual);
    sub.push_back(std::move(cells[c].sub));
    quo.push_back(std::move(cells[c].quo));
  }
  Table norms = normsTable(), fits = fitsTable();
  reportSide(rep, norms, fits, "submodule", degrees, sub, spec.pValues, spec.m, opts);
  reportSide(rep, norms, fits, "quotient", degrees, quo, spec.pValues, spec.m, opts);
  rep.tables.push_back(std::move(dims));
  rep.tables.push_back(std::move(norms));
  rep.tables.push_back(std::move(fits));
  rep.result("max_invariance_residual", fmt(worstResidual));
  for (double p : spec.pValues) {
    rep.result("submodule_verdict_p=" + format_p(p), to_string(rep.verdict("submodule all p=" + format_p(p)).verdict));
    rep.result("quotient_verdict_p=" + format_p(p), to_string(rep.verdict("quotient all p=" + format_p(p)).verdict));
  }
  rep.notes.push_back("verdicts are empirical statements about the truncation sweep");
  return rep;
}

namespace {

struct NamedOperator {
  std::string name;
  TruncatedOperator op;
};

std::vector<std::string> adjointShiftNames(int m) {
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) out.push_back("Z" + std::to_string(i + 1) + "*");
  if (m >= 2) {
    out.push_back("Z1*+Z2*");
    out.push_back("Z1*-iZ2*");
  }
  return out;
}

std::vector<NamedOperator> adjointShifts(const WeightSet& w) {
  const int m = w.graded().numVars();
  const auto names = adjointShiftNames(m);
  std::vector<TruncatedOperator> za;
  for (int i = 0; i < m; ++i) za.push_back(adjoint(coordinate_shift(w, i)));
  std::vector<NamedOperator> out;
  for (int i = 0; i < m; ++i) out.push_back({names[i], za[i]});
  if (m >= 2) {
    out.push_back({names[m], add(za[0], za[1])});
    out.push_back({names[m + 1], add(za[0], scale(za[1], Scalar(0.0, -1.0)))});
  }
  return out;
}

}  // namespace

ExperimentReport run_berger_shaw_check(const BergerShawSpec& spec, const ExperimentOptions& opts) {
  if (spec.m < 1) throw InvalidArgument("berger-shaw: need m >= 1");
  const bool pointsMode = !spec.points.empty();
  if (pointsMode == !spec.generators.empty())
    throw InvalidArgument("berger-shaw: give either points or generators");
  const auto degrees = normalizedSweep(spec.degrees, spec.m, 1, "berger-shaw");
  std::vector<PolynomialGenerator> gens;
  if (!pointsMode) gens = parseGenerators(spec.generators, spec.m, 1);
  for (const auto& pt : spec.points)
    if (static_cast<int>(pt.size()) != spec.m)
      throw InvalidArgument("berger-shaw: point has " + std::to_string(pt.size()) + " coordinates, expected " +
                            std::to_string(spec.m));

  struct Row {
    int N, count;
    std::string op;
    std::size_t dim;
    double traceCommutator, traceP, normC, residual;
  };
  std::vector<std::vector<Row>> cells(degrees.size());
  parallel_for(degrees.size(), opts.threads, [&](std::size_t c) {
    const int N = degrees[c];
    auto basis = enumerate_basis(spec.m, N);
    WeightSet w = make_weights(spec.family, basis, spec.delta);
    const auto ops = adjointShifts(w);
    auto evaluate = [&](const Subspace& v, int count) {
      for (const auto& [name, t] : ops) {
        const double residual = invariance_residual(t, v);
        TruncatedOperator restricted = compress_to(t, v);
        TruncatedOperator sc = self_commutator(restricted);
        const ApWitness a = ap_witness(sc, 1.0, Window::Full);
        cells[c].push_back({N, count, name, v.rank(), std::abs(trace(sc, Window::Full)), a.tracePositive,
                            a.pNormOfC, residual});
      }
    };
    if (pointsMode) {
      for (std::size_t n = 1; n <= spec.points.size(); ++n) {
        std::vector<std::vector<Scalar>> first(spec.points.begin(), spec.points.begin() + static_cast<long>(n));
        SubmoduleBasis s = span_of_point_evaluations(w, first);
        evaluate(s.subspace(Side::Complement), static_cast<int>(n));
      }
    } else {
      SubmoduleBasis s = submodule_from_generators(w, gens);
      evaluate(s.subspace(Side::Complement), 0);
    }
  });

  ExperimentReport rep;
  rep.name = "berger-shaw";
  rep.param("family", spec.family);
  rep.param("m", fmtInt(spec.m));
  if (spec.family == "factorial-delta") rep.param("delta", fmt(spec.delta));
  if (pointsMode) {
    rep.param("points", joinWith(spec.points, [](const std::vector<Scalar>& pt) {
                return joinWith(pt, [](Scalar z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; });
              }));
    rep.param("subspace", "span of the first c kernel vectors, compressed");
  } else {
    rep.param("generators", joinWith(gens, [](const PolynomialGenerator& g) { return g.toString(); }));
    rep.param("subspace", "complement of the submodule within degree <= N");
  }
  rep.param("degrees", joinInts(degrees));
  rep.param("tolerance", fmt(kBergerShawTolerance));
  recordOptions(rep, opts);

  Table t("rows", {"N", "count", "operator", "dimension", "abs_trace_commutator", "trace_P", "norm1_C", "margin",
                   "invariance_residual", "holds"});
  std::size_t violations = 0;
  double worstMargin = kInfinity, worstTrace = 0.0;
  std::map<std::string, std::vector<std::pair<int, double>>> trend;
  for (const auto& rows : cells)
    for (const auto& r : rows) {
      const double margin = r.normC + kBergerShawTolerance - r.traceP;
      const bool holds = r.traceP >= 0.0 && margin >= 0.0;
      if (!holds) ++violations;
      worstMargin = std::min(worstMargin, margin);
      worstTrace = std::max(worstTrace, r.traceCommutator);
      t.addRow({fmtInt(r.N), fmtInt(r.count), r.op, fmtInt(static_cast<long long>(r.dim)), fmt(r.traceCommutator),
                fmt(r.traceP), fmt(r.normC), fmt(margin), fmt(r.residual), holds ? "yes" : "no"});
      if (!pointsMode || r.count == static_cast<int>(spec.points.size())) trend[r.op].emplace_back(r.N, r.normC);
    }
  rep.tables.push_back(std::move(t));

  Table tr("norm1_C_trend", {"operator", "N", "norm1_C"});
  for (const auto& name : adjointShiftNames(spec.m)) {
    const auto& series = trend[name];
    for (const auto& [N, v] : series) tr.addRow({name, fmtInt(N), fmt(v)});
    rep.verdicts.push_back(make_verdict("norm1_C " + name, convergence_diagnostic(series, opts.thresholds)));
  }
  rep.tables.push_back(std::move(tr));

  rep.result("rows", fmtInt(static_cast<long long>(rep.tables.front().rows.size())));
  rep.result("violations", fmtInt(static_cast<long long>(violations)));
  rep.result("min_margin", fmt(worstMargin));
  rep.result("max_abs_trace_commutator", fmt(worstTrace));
  if (violations > 0) {
    rep.theoremViolation = true;
    rep.notes.push_back("0 <= Tr P <= ||C||_1 failed on " + std::to_string(violations) + " rows");
  }
  return rep;
}

ExperimentReport run_quotient_smoothness_probe(const QuotientProbeSpec& spec, const ExperimentOptions& opts) {
  if (spec.m != 2 && spec.m != 3) throw InvalidArgument("quotient-probe: m must be 2 or 3");
  requirePs(spec.pValues, "quotient-probe");
  const auto degrees = normalizedSweep(spec.degrees, spec.m, 1, "quotient-probe");
  const auto gens = parseGenerators(spec.generators, spec.m, 1);

  std::vector<SideData> cells(degrees.size());
  std::vector<int> graded(degrees.size());
  parallel_for(degrees.size(), opts.threads, [&](std::size_t c) {
    auto basis = enumerate_basis(spec.m, degrees[c]);
    WeightSet w = make_weights(spec.family, basis, spec.delta);
    SubmoduleBasis s = submodule_from_generators(w, gens);
    const Subspace comp = s.subspace(Side::Complement);
    std::vector<TruncatedOperator> x;
    for (int i = 0; i < spec.m; ++i) x.push_back(compress_to(coordinate_shift(w, i), comp));
    cells[c] = crossCommutatorSpectra(x, comp.rank());
    graded[c] = s.isGraded();
  });

  ExperimentReport rep;
  rep.name = "quotient-probe";
  rep.param("family", spec.family);
  rep.param("m", fmtInt(spec.m));
  if (spec.family == "factorial-delta") rep.param("delta", fmt(spec.delta));
  rep.param("generators", joinWith(gens, [](const PolynomialGenerator& g) { return g.toString(); }));
  rep.param("p", joinPs(spec.pValues));
  rep.param("degrees", joinInts(degrees));
  rep.param("zero_set_dimension (as supplied)", spec.zeroSetDimension ? fmt(*spec.zeroSetDimension) : "");
  recordOptions(rep, opts);

  Table norms = normsTable(), fits = fitsTable();
  std::optional<double> critical;
  reportSide(rep, norms, fits, "quotient", degrees, cells, spec.pValues, spec.m, opts, &critical);
  rep.tables.push_back(std::move(norms));
  rep.tables.push_back(std::move(fits));
  rep.result("quotient_dimension_at_max_degree", fmtInt(static_cast<long long>(cells.back().dimension)));
  rep.result("critical_exponent_estimate", critical ? fmt(*critical) : "INCONCLUSIVE");
  rep.result("zero_set_dimension (as supplied)", spec.zeroSetDimension ? fmt(*spec.zeroSetDimension) : "");
  if (!graded.back())
    rep.notes.push_back("non-homogeneous generators: the submodule is the span of z^q g within the truncation; "
                        "the whole quotient is used as the window");
  rep.notes.push_back("exploratory probe; the estimate is not a proof of membership in any S_p");
  return rep;
}

namespace {

struct Lemma1Trial {
  int m = 1, N = 1, k = 1;
  std::string weights, generators, op, side;
  std::size_t dim = 0;
  double residual = 0.0;
};

WeightSet randomFamily(const BasisPtr& basis, std::mt19937_64& rng, std::string& label) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int c = pick(rng);
  if (c < 5) {
    label = "random";
    return random_weights(basis, rng);
  }
  static const char* families[] = {"drury-arveson", "bergman-ball", "hardy-ball", "factorial-delta", "unit"};
  label = families[c - 5];
  double delta = 1.0;
  if (label == "factorial-delta") {
    delta = std::uniform_real_distribution<double>(0.25, 1.5)(rng);
    label += "(" + fmt(delta) + ")";
    return factorial_delta_weights(basis, delta);
  }
  return make_weights(label, basis);
}

Lemma1Trial lemma1Trial(std::mt19937_64& rng) {
  Lemma1Trial t;
  t.m = std::uniform_int_distribution<int>(1, 3)(rng);
  t.N = std::uniform_int_distribution<int>(1, t.m == 3 ? 12 : 16)(rng);
  t.k = std::uniform_int_distribution<int>(1, 2)(rng);
  auto basis = enumerate_basis(t.m, t.N, t.k);
  WeightSet w = randomFamily(basis, rng, t.weights);

  std::vector<MonomialGenerator> gens;
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  const bool identity = std::uniform_int_distribution<int>(0, 19)(rng) == 0;
  for (int g = 0; g < count; ++g) {
    std::vector<int> e(static_cast<std::size_t>(t.m), 0);
    const int deg = identity ? 0 : std::uniform_int_distribution<int>(0, std::min(t.N, 4))(rng);
    for (int d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, t.m - 1)(rng))];
    gens.push_back({MultiIndex(e), std::uniform_int_distribution<int>(0, t.k - 1)(rng)});
    t.generators += (g ? " " : "") + gens.back().alpha.toString() + "c" + std::to_string(gens.back().component);
  }
  SubmoduleBasis s = monomial_submodule(w, gens);

  const int i = std::uniform_int_distribution<int>(0, t.m - 1)(rng);
  int j = i;
  if (t.m > 1) j = (i + std::uniform_int_distribution<int>(1, t.m - 1)(rng)) % t.m;
  std::normal_distribution<double> gauss;
  TruncatedOperator op = coordinate_shift(w, i);
  t.op = "Z" + std::to_string(i + 1);
  if (std::uniform_int_distribution<int>(0, 1)(rng)) {
    const Scalar a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
    op = add(scale(op, a), scale(coordinate_shift(w, j), b));
    t.op = "a*Z" + std::to_string(i + 1) + "+b*Z" + std::to_string(j + 1);
  }
  Side side = Side::Submodule;
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    op = adjoint(op);
    t.op = "(" + t.op + ")*";
    side = Side::Complement;
  }
  t.side = side == Side::Submodule ? "submodule" : "complement";
  const Subspace v = s.subspace(side);
  t.dim = v.rank();
  const BlockDecomposition d = lemma1_decomposition(op, v);
  t.residual = lemma1_residual(op, v, d);
  return t;
}

}  // namespace

ExperimentReport run_lemma1_check(int trials, const ExperimentOptions& opts) {
  if (trials < 1) throw InvalidArgument("lemma1-check: need at least one trial");
  std::vector<Lemma1Trial> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), opts.threads, [&](std::size_t t) {
    auto rng = trialRng(opts.seed, t);
    results[t] = lemma1Trial(rng);
  });

  ExperimentReport rep;
  rep.name = "lemma1-check";
  rep.param("trials", fmtInt(trials));
  rep.param("tolerance", fmt(kLemma1Tolerance));
  rep.seed = opts.seed;

  Table t("trials", {"trial", "m", "N", "k", "weights", "generators", "operator", "side", "dimension", "residual"});
  double worst = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    worst = std::max(worst, r.residual);
    t.addRow({fmtInt(static_cast<long long>(i)), fmtInt(r.m), fmtInt(r.N), fmtInt(r.k), r.weights, r.generators, r.op,
              r.side, fmtInt(static_cast<long long>(r.dim)), fmt(r.residual)});
  }
  rep.tables.push_back(std::move(t));
  const bool pass = worst < kLemma1Tolerance;
  rep.result("max_residual", fmt(worst));
  rep.result("pass", pass ? "yes" : "no");
  if (!pass) {
    rep.theoremViolation = true;
    rep.notes.push_back("block identity residual " + fmt(worst) + " exceeds " + fmt(kLemma1Tolerance));
  }
  return rep;
}

}  // namespace hilbmod
