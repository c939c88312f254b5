#include "twisted_cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "twisted/independence.hpp"
#include "twisted/parallel.hpp"
#include "twisted/random.hpp"
#include "twisted/targets.hpp"

namespace twisted::cli {

namespace {

using json = nlohmann::json;

// Gamma draws use streams above any alpha-sampling stream.
constexpr std::uint64_t kGammaStreamBase = std::uint64_t{1} << 32;
constexpr std::uint64_t kPairStream = (std::uint64_t{1} << 32) - 1;

class Context {
 public:
  Context(const ExperimentConfig& c, unsigned threads) : c(c), threads(threads) {}

  const ExperimentConfig& c;
  unsigned threads;
  Report report;

  bool has_param(const std::string& key) const { return c.params.contains(key); }
  std::string path(const std::string& key) const { return "$.params." + key; }

  double param_number(const std::string& key, double fallback) const {
    if (!has_param(key)) return fallback;
    const auto& v = c.params.at(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    return v.get<double>();
  }

  std::vector<double> param_numbers(const std::string& key) const {
    const auto& v = c.params.at(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  std::uint64_t param_count(const std::string& key, std::uint64_t fallback) const {
    const double d = param_number(key, static_cast<double>(fallback));
    if (!(d >= 0 && d < 0x1p63 && std::floor(d) == d)) throw ConfigError(path(key), "expected a nonnegative integer");
    return static_cast<std::uint64_t>(d);
  }

  double tolerance(double fallback) const { return c.tolerance.value_or(fallback); }

  TargetFamily family(std::size_t i) const { return {c.alphas[i], *c.sequence, *c.psi}; }

  /// Runs fn(i) for each alpha in parallel and returns results in alpha order.
  template <typename Fn>
  auto per_alpha(Fn&& fn) const {
    std::vector<decltype(fn(std::size_t{0}))> out(c.alphas.size());
    parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = fn(i); });
    return out;
  }

  Table& table(std::string name, std::vector<std::string> columns) {
    report.tables.push_back({std::move(name), std::move(columns), {}});
    return report.tables.back();
  }

  void verdict(std::string name, bool pass, std::string detail) {
    report.verdicts.push_back({std::move(name), pass, std::move(detail)});
  }
};

std::string num(double x) { return json(x).dump(); }

std::vector<std::uint64_t> checkpoints(const Context& ctx, IndexRange range) {
  std::vector<std::uint64_t> out;
  if (ctx.has_param("checkpoints")) {
    for (double d : ctx.param_numbers("checkpoints")) {
      if (!(d >= static_cast<double>(range.first) && d <= static_cast<double>(range.last) && std::floor(d) == d)) {
        throw ConfigError(ctx.path("checkpoints"), "checkpoints must be integers inside $.range");
      }
      out.push_back(static_cast<std::uint64_t>(d));
    }
    return out;
  }
  for (std::uint64_t n = 10; n < range.last; n *= 10) {
    if (n >= range.first) out.push_back(n);
  }
  out.push_back(range.last);
  return out;
}

void run_orbit(Context& ctx) {
  const auto range = *ctx.c.range;
  const auto slices = ctx.per_alpha([&](std::size_t i) { return orbit_points(ctx.c.alphas[i], *ctx.c.sequence, range); });
  auto& t = ctx.table("orbit", {"alpha_index", "n", "a_n", "x_n"});
  json bounds = json::array();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    for (std::size_t k = 0; k < s.points.size(); ++k) t.rows.push_back({i, s.first_index + k, s.a_values[k], s.points[k]});
    bounds.push_back(s.error_bound);
  }
  ctx.report.summary["error_bound"] = bounds;
}

void run_discrepancy(Context& ctx) {
  const auto range = *ctx.c.range;
  const auto marks = checkpoints(ctx, range);
  const auto values = ctx.per_alpha([&](std::size_t i) {
    const auto slice = orbit_points(ctx.c.alphas[i], *ctx.c.sequence, range);
    std::vector<double> d;
    for (auto N : marks) d.push_back(star_discrepancy(std::span(slice.points).first(N - range.first + 1)));
    return d;
  });
  auto& t = ctx.table("discrepancy", {"alpha_index", "N", "star_discrepancy"});
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t k = 0; k < marks.size(); ++k) t.rows.push_back({i, marks[k], values[i][k]});
    worst = std::max(worst, values[i].back());
  }
  ctx.report.summary["max_final_discrepancy"] = worst;
  if (ctx.has_param("max_discrepancy")) {
    const double limit = ctx.param_number("max_discrepancy", 0.0);
    ctx.verdict("discrepancy", worst <= limit, "max D* at N=" + std::to_string(range.last) + " is " + num(worst) + ", limit " + num(limit));
  }
}

void run_independence(Context& ctx) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (ctx.has_param("pairs")) {
    const auto& p = ctx.c.params.at("pairs");
    const std::string where = ctx.path("pairs");
    if (!p.is_array()) throw ConfigError(where, "expected an array of [m, n]");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string ip = where + "[" + std::to_string(i) + "]";
      if (!p[i].is_array() || p[i].size() != 2 || !p[i][0].is_number_integer() || !p[i][1].is_number_integer() ||
          p[i][0].get<std::int64_t>() < 1 || p[i][1].get<std::int64_t>() < 1) {
        throw ConfigError(ip, "expected [m, n] with positive integers");
      }
      pairs.emplace_back(p[i][0].get<std::uint64_t>(), p[i][1].get<std::uint64_t>());
    }
  } else {
    const IndexRange range = ctx.c.range.value_or(IndexRange{1, 10000});
    if (range.first == range.last) throw ConfigError("$.range", "random pairs need at least two indices");
    const auto n = ctx.param_count("count", 100);
    StreamRng rng(ctx.c.seed, kPairStream);
    while (pairs.size() < n) {
      const auto m = rng.uniform_int(range.first, range.last);
      const auto k = rng.uniform_int(range.first, range.last);
      if (m != k) pairs.emplace_back(m, k);
    }
  }
  const auto rep = independence_report(*ctx.c.sequence, *ctx.c.psi, pairs, ctx.threads);
  auto& t = ctx.table("independence", {"m", "n", "computed", "expected", "deviation"});
  for (const auto& r : rep.rows) t.rows.push_back({r.m, r.n, r.computed, r.expected, r.deviation});
  auto& d = ctx.table("degenerate_pairs", {"m", "n"});
  for (const auto& [m, n] : rep.degenerate) d.rows.push_back({m, n});
  ctx.report.summary["max_deviation"] = rep.max_deviation;
  const double tol = ctx.tolerance(1e-10);
  ctx.verdict("independence", rep.max_deviation <= tol,
              "max deviation " + num(rep.max_deviation) + " over " + std::to_string(rep.rows.size()) + " pairs, tolerance " + num(tol));
}

void run_chung_erdos(Context& ctx) {
  const auto& scheme = *ctx.c.blocks;
  std::vector<Window> windows{{"full", ArcSet::full()}};
  for (const auto& w : ctx.c.windows) {
    if (!w.set.is_full()) windows.push_back(w);
  }
  struct Cell {
    std::vector<ChungErdos> ce;  // block-major, window-minor
    std::vector<std::pair<double, double>> sc;
  };
  const auto cells = ctx.per_alpha([&](std::size_t i) {
    Cell cell;
    const auto T = ctx.family(i);
    for (std::size_t j = 0; j < scheme.num_blocks(); ++j) {
      const auto block = scheme.block(j);
      const auto fam = balls(T, block);
      for (const auto& w : windows) cell.ce.push_back(chung_erdos(fam, w.set));
      cell.sc.emplace_back(block_S(T, block), pair_overlap_sum(fam));
    }
    return cell;
  });
  const double tol = ctx.tolerance(1e-12);
  auto& t = ctx.table("chung_erdos", {"alpha_index", "block_begin", "block_end", "window", "bound", "actual"});
  auto& m = ctx.table("second_moment", {"alpha_index", "block_begin", "block_end", "S", "C"});
  std::size_t bound_fail = 0, moment_fail = 0, checks = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < scheme.num_blocks(); ++j) {
      const auto block = scheme.block(j);
      for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& ce = cells[i].ce[j * windows.size() + w];
        t.rows.push_back({i, block.begin, block.end, windows[w].label, ce.bound, ce.actual});
        bound_fail += !(ce.bound <= ce.actual + tol);
        ++checks;
      }
      const auto [S, C] = cells[i].sc[j];
      m.rows.push_back({i, block.begin, block.end, S, C});
      moment_fail += !(C >= S * S - tol * std::max(1.0, S * S));
    }
  }
  ctx.verdict("bound_le_actual", bound_fail == 0,
              std::to_string(checks - bound_fail) + "/" + std::to_string(checks) + " checks within " + num(tol));
  ctx.verdict("second_moment_ge_square", moment_fail == 0,
              std::to_string(moment_fail) + " block(s) with C < S^2");
}

json moment_row(const MomentRow& r) {
  return {r.exponent, r.block.begin, r.block.end, r.S, r.C, r.ratio, r.union_measure, r.bound, r.skipped, r.notice};
}

void run_moments(Context& ctx) {
  const std::vector<std::string> cols{"alpha_index", "exponent", "block_begin", "block_end", "S", "C",
                                      "ratio", "union_measure", "bound", "skipped", "notice"};
  if (ctx.c.alphas.size() == 1) {
    auto& t = ctx.table("moments", cols);
    for (const auto& r : gp_ratio(ctx.family(0), *ctx.c.blocks)) {
      auto row = moment_row(r);
      row.insert(row.begin(), 0);
      t.rows.push_back(row);
    }
    return;
  }
  const auto ens = gp_ensemble(ctx.c.alphas, *ctx.c.sequence, *ctx.c.psi, *ctx.c.blocks, ctx.threads);
  auto& t = ctx.table("moments", cols);
  for (std::size_t i = 0; i < ens.per_sample.size(); ++i) {
    for (const auto& r : ens.per_sample[i]) {
      auto row = moment_row(r);
      row.insert(row.begin(), i);
      t.rows.push_back(row);
    }
  }
  auto& e = ctx.table("ensemble", {"alpha_index", "max_ratio"});
  for (std::size_t i = 0; i < ens.max_ratios.size(); ++i) e.rows.push_back({i, ens.max_ratios[i]});
  auto& mk = ctx.table("markov", {"p", "fraction", "holds"});
  bool all = true;
  for (const auto& m : ens.markov) {
    mk.rows.push_back({m.p, m.fraction, m.holds});
    all = all && m.holds;
  }
  ctx.report.summary["median"] = ens.median;
  ctx.report.summary["p90"] = ens.p90;
  ctx.report.summary["mean"] = ens.mean;
  ctx.verdict("markov", all, "fraction of max ratios <= p * mean is >= 1 - 1/p for every p");
}

void full_measure_verdict(Context& ctx, const std::string& name, const std::vector<double>& measures, double tol) {
  double worst = 1.0;
  for (double m : measures) worst = std::min(worst, m);
  ctx.report.summary["min_measure"] = worst;
  ctx.verdict(name, worst >= 1.0 - tol, "min measure " + num(worst) + ", need >= 1 - " + num(tol));
}

void run_tail_union(Context& ctx) {
  const auto range = *ctx.c.range;
  const DimensionFunction* f = ctx.c.f ? &*ctx.c.f : nullptr;
  const auto measures = ctx.per_alpha([&](std::size_t i) { return tail_union_measure(ctx.family(i), range.first, range.last, f); });
  auto& t = ctx.table("tail_union", {"alpha_index", "N", "M", "measure"});
  for (std::size_t i = 0; i < measures.size(); ++i) t.rows.push_back({i, range.first, range.last, measures[i]});
  const auto& expect = ctx.c.params.contains("expect_full_measure") ? ctx.c.params.at("expect_full_measure") : json(true);
  if (!expect.is_boolean()) throw ConfigError(ctx.path("expect_full_measure"), "expected a boolean");
  if (expect.get<bool>()) full_measure_verdict(ctx, "full_measure", measures, ctx.tolerance(kDefaultFullMeasureTol));
}

void run_limsup_profile(Context& ctx) {
  const double tol = ctx.tolerance(kDefaultFullMeasureTol);
  const DimensionFunction* f = ctx.c.f ? &*ctx.c.f : nullptr;
  const auto profiles = ctx.per_alpha([&](std::size_t i) { return limsup_profile(ctx.family(i), ctx.c.schedule, tol, f); });
  auto& t = ctx.table("limsup_profile", {"alpha_index", "N", "M", "measure"});
  std::size_t consistent = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t k = 0; k < ctx.c.schedule.size(); ++k) {
      t.rows.push_back({i, ctx.c.schedule[k].first, ctx.c.schedule[k].last, profiles[i].measures[k]});
    }
    consistent += profiles[i].full_measure_consistent;
  }
  ctx.verdict("full_measure_consistent", consistent == profiles.size(),
              std::to_string(consistent) + "/" + std::to_string(profiles.size()) + " alphas with every window >= 1 - " + num(tol));
}

void run_hit_count(Context& ctx) {
  const auto range = *ctx.c.range;
  if (range.first != 1) throw ConfigError("$.range", "hit counts start at n = 1");
  std::vector<double> fixed;
  if (ctx.has_param("gammas")) fixed = ctx.param_numbers("gammas");
  const auto per = ctx.param_count("gammas_per_alpha", 1);
  const auto counts = ctx.per_alpha([&](std::size_t i) {
    std::vector<double> gammas = fixed;
    if (gammas.empty()) {
      StreamRng rng(ctx.c.seed, kGammaStreamBase + i);
      for (std::uint64_t k = 0; k < per; ++k) gammas.push_back(rng.uniform());
    }
    const auto slice = orbit_points(ctx.c.alphas[i], *ctx.c.sequence, range);
    std::vector<std::pair<double, HitCount>> out;
    for (double g : gammas) out.emplace_back(g, hit_count(slice, *ctx.c.psi, g));
    return out;
  });
  double lo = 0.5, hi = 2.0;
  if (ctx.has_param("ratio_band")) {
    const auto band = ctx.param_numbers("ratio_band");
    if (band.size() != 2 || !(band[0] <= band[1])) throw ConfigError(ctx.path("ratio_band"), "expected [lo, hi]");
    lo = band[0];
    hi = band[1];
  }
  auto& t = ctx.table("hit_count", {"alpha_index", "gamma", "count", "expected", "ratio"});
  std::size_t inside = 0, total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (const auto& [g, h] : counts[i]) {
      const double ratio = h.expected > 0 ? static_cast<double>(h.count) / h.expected : 0.0;
      t.rows.push_back({i, g, h.count, h.expected, ratio});
      inside += ratio >= lo && ratio <= hi;
      ++total;
    }
  }
  const double need = ctx.param_number("min_fraction", 0.95);
  ctx.verdict("ratio_band", static_cast<double>(inside) >= need * static_cast<double>(total),
              std::to_string(inside) + "/" + std::to_string(total) + " ratios in [" + num(lo) + ", " + num(hi) + "], need fraction " + num(need));
}

void run_local_density(Context& ctx) {
  const auto range = *ctx.c.range;
  std::vector<ArcSet> sets;
  for (const auto& w : ctx.c.windows) sets.push_back(w.set);
  const auto dens = ctx.per_alpha([&](std::size_t i) { return local_density(ctx.family(i), range.first, range.last, sets); });
  auto& t = ctx.table("local_density", {"alpha_index", "N", "M", "window", "density"});
  double worst = 1.0;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    for (std::size_t w = 0; w < sets.size(); ++w) {
      t.rows.push_back({i, range.first, range.last, ctx.c.windows[w].label, dens[i][w]});
      worst = std::min(worst, dens[i][w]);
    }
  }
  ctx.report.summary["min_density"] = worst;
  if (ctx.has_param("min_density")) {
    const double need = ctx.param_number("min_density", 0.0);
    ctx.verdict("min_density", worst >= need, "min local density " + num(worst) + ", need " + num(need));
  }
}

void run_equid_ratio(Context& ctx) {
  const auto& scheme = *ctx.c.blocks;
  const auto ratios = ctx.per_alpha([&](std::size_t i) {
    std::vector<double> out;
    const auto T = ctx.family(i);
    for (std::size_t j = 0; j < scheme.num_blocks(); ++j) {
      for (const auto& w : ctx.c.windows) out.push_back(equid_ratio(T, scheme.block(j), w.set));
    }
    return out;
  });
  auto& t = ctx.table("equid_ratio", {"alpha_index", "block_begin", "block_end", "window", "ratio"});
  double dev = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < scheme.num_blocks(); ++j) {
      const auto block = scheme.block(j);
      for (const auto& w : ctx.c.windows) {
        const double r = ratios[i][k++];
        t.rows.push_back({i, block.begin, block.end, w.label, r});
        dev = std::max(dev, std::fabs(r - 1.0));
      }
    }
  }
  ctx.report.summary["max_abs_deviation"] = dev;
  if (ctx.has_param("max_deviation")) {
    const double limit = ctx.param_number("max_deviation", 0.0);
    ctx.verdict("equidistribution", dev <= limit, "max |ratio - 1| " + num(dev) + ", limit " + num(limit));
  }
}

std::string convergence_name(Convergence c) { return c == Convergence::Converges ? "converges" : "diverges"; }

void run_critical_exponent(Context& ctx) {
  auto& t = ctx.table("critical_exponent", {"psi", "s_star", "at_critical"});
  auto add = [&](const ApproxFunction& psi) {
    const auto ce = critical_exponent(psi);
    t.rows.push_back({psi.describe(), ce.s_star, convergence_name(ce.at_critical)});
  };
  if (ctx.has_param("sigmas")) {
    for (double s : ctx.param_numbers("sigmas")) add(ApproxFunction::power(s));
  } else if (ctx.c.psi) {
    add(*ctx.c.psi);
  } else {
    throw ConfigError("$.params.sigmas", "required when $.psi is absent");
  }
}

void run_separation(Context& ctx) {
  auto& t = ctx.table("separation", {"N", "theta", "c"});
  for (auto N : checkpoints(ctx, *ctx.c.range)) {
    const auto r = separation_exponent(*ctx.c.sequence, N);
    t.rows.push_back({N, r.theta, r.c});
  }
}

void run_fourier_decay(Context& ctx) {
  const auto& mu = *ctx.c.measure;
  const auto xi_max = ctx.param_count("xi_max", 4096);
  if (xi_max < 16) throw ConfigError(ctx.path("xi_max"), "expected xi_max >= 16");
  const auto est = decay_exponent_estimate(mu, xi_max, ctx.threads);
  auto& t = ctx.table("decay", {"window_lo", "window_hi", "max_abs"});
  for (const auto& w : est.windows) t.rows.push_back({w.lo, w.hi, w.max_abs});
  ctx.report.summary["measure"] = mu.describe();
  ctx.report.summary["infinite"] = est.infinite;
  ctx.report.summary["tau"] = est.infinite ? json(nullptr) : json(est.tau);
  ctx.report.summary["slope"] = est.infinite ? json(nullptr) : json(est.slope);
  if (ctx.has_param("xi")) {
    auto& f = ctx.table("transform", {"xi", "re", "im", "abs", "error_bound"});
    for (double xi : ctx.param_numbers("xi")) {
      const auto v = fourier_transform_certified(mu, xi);
      f.rows.push_back({xi, v.value.real(), v.value.imag(), std::abs(v.value), v.error_bound});
    }
  }
  if (ctx.has_param("expected_tau")) {
    const double want = ctx.param_number("expected_tau", 0.0);
    const double tol = ctx.tolerance(0.15);
    const bool pass = want == INFINITY ? est.infinite : (!est.infinite && std::fabs(est.tau - want) <= tol);
    ctx.verdict("decay_exponent", pass, "estimated tau " + (est.infinite ? std::string("infinite") : num(est.tau)) + ", expected " + num(want) + " within " + num(tol));
  }
}

void run_jarnik_table(Context& ctx) {
  if (!ctx.has_param("cases")) throw ConfigError(ctx.path("cases"), "required: list of [sigma, s]");
  const auto& raw = ctx.c.params.at("cases");
  if (!raw.is_array() || raw.empty()) throw ConfigError(ctx.path("cases"), "expected a nonempty list of [sigma, s]");
  std::vector<std::pair<double, double>> cases;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& c = raw[i];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number() || !(c[0].get<double>() > 0) || !(c[1].get<double>() > 0)) {
      throw ConfigError(ctx.path("cases") + "[" + std::to_string(i) + "]", "expected [sigma, s] with positive numbers");
    }
    cases.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  std::vector<double> starts{1e2, 1e3, 1e4, 1e5};
  if (ctx.has_param("tail_starts")) starts = ctx.param_numbers("tail_starts");
  const bool divergence_side = !ctx.c.alphas.empty() && ctx.c.sequence && !ctx.c.schedule.empty();
  const double tol = ctx.tolerance(kDefaultFullMeasureTol);

  auto& verdicts = ctx.table("jarnik", {"sigma", "s", "s_star", "sum_f_psi"});
  auto& tails = ctx.table("tail_sums", {"sigma", "s", "N", "tail_sum"});
  auto& unions = ctx.table("bf_tail_union", {"sigma", "s", "alpha_index", "N", "M", "measure"});
  bool decreasing = true;
  std::size_t divergent_cases = 0, divergent_full = 0;
  for (const auto& [sigma, s] : cases) {
    const auto ce = critical_exponent(ApproxFunction::power(sigma));
    const bool converges = s > ce.s_star || (s == ce.s_star && ce.at_critical == Convergence::Converges);
    verdicts.rows.push_back({sigma, s, ce.s_star, converges ? "converges" : "diverges"});
    if (converges) {
      double prev = INFINITY;
      for (double N : starts) {
        const double tail = power_tail_sum(sigma * s, N);
        tails.rows.push_back({sigma, s, N, tail});
        decreasing = decreasing && tail < prev;
        prev = tail;
      }
    } else if (divergence_side) {
      ++divergent_cases;
      const auto f = DimensionFunction::power(s);
      const auto psi = ApproxFunction::power(sigma);
      const auto profiles = ctx.per_alpha([&](std::size_t i) {
        return limsup_profile(TargetFamily{ctx.c.alphas[i], *ctx.c.sequence, psi}, ctx.c.schedule, tol, &f);
      });
      bool all = true;
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (std::size_t k = 0; k < ctx.c.schedule.size(); ++k) {
          unions.rows.push_back({sigma, s, i, ctx.c.schedule[k].first, ctx.c.schedule[k].last, profiles[i].measures[k]});
        }
        all = all && profiles[i].full_measure_consistent;
      }
      divergent_full += all;
    }
  }
  ctx.verdict("convergent_tails_decrease", decreasing, "tail sums strictly decrease in N for every convergent case");
  if (divergence_side) {
    ctx.verdict("divergent_full_measure", divergent_full == divergent_cases,
                std::to_string(divergent_full) + "/" + std::to_string(divergent_cases) +
                    " divergent cases with every B^f tail union >= 1 - " + num(tol));
  }
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"orbit", run_orbit},
      {"discrepancy", run_discrepancy},
      {"independence", run_independence},
      {"chung-erdos", run_chung_erdos},
      {"moments", run_moments},
      {"tail-union", run_tail_union},
      {"limsup-profile", run_limsup_profile},
      {"hit-count", run_hit_count},
      {"local-density", run_local_density},
      {"equid-ratio", run_equid_ratio},
      {"critical-exponent", run_critical_exponent},
      {"separation", run_separation},
      {"fourier-decay", run_fourier_decay},
      {"jarnik-table", run_jarnik_table},
  };
  return table;
}

}  // namespace

Report run(const ExperimentConfig& config, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx(config, std::max(1u, threads));
  ctx.report.id = config.id;
  ctx.report.kind = config.kind;
  ctx.report.seed = config.seed;
  ctx.report.config = config.echo;
  const auto it = runners().find(config.kind);
  if (it == runners().end()) throw ConfigError("$.kind", "unknown kind '" + config.kind + "'");
  it->second(ctx);
  ctx.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return std::move(ctx.report);
}

}  // namespace twisted::cli
