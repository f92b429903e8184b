#include "rateless/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "rateless/json_io.hpp"

namespace rateless::accept {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr double kZ99 = 2.5758293035489004;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- numerical oracle -------------------------------------------------------

double simpson_sin_cos(double p, double q, int panels) {
  // int_0^{pi/2} 2 sin^{2p-1} cos^{2q-1} dphi  ==  Beta(p, q)
  if (panels % 2 != 0) ++panels;
  constexpr double kHalfPi = 1.5707963267948966192;
  const double h = kHalfPi / panels;
  auto f = [&](double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    return 2.0 * std::pow(s, 2 * p - 1) * std::pow(c, 2 * q - 1);
  };
  double acc = f(0) + f(kHalfPi);
  for (int i = 1; i < panels; ++i) acc += f(h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// int over the simplex of prod theta_i^{a_i - 1}, by stick-breaking into
// one-dimensional integrals evaluated with composite Simpson.
double dirichlet_simplex_integral(const std::vector<double>& a, int panels) {
  double tail = 0;
  for (double v : a) tail += v;
  double value = 1;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    tail -= a[i];
    value *= simpson_sin_cos(a[i], tail, panels);
  }
  return value;
}

// --- shared experiment cache -------------------------------------------------

struct CachedRun {
  ExperimentConfig cfg;
  Report report;
  std::vector<TrialRecord> records;
  double capacity = 0;
  double log2_m = 0;
};

struct RunCache {
  std::map<std::string, CachedRun> entries;

  const CachedRun& get(const std::string& key, const std::function<ExperimentConfig()>& make,
                       bool keep_records = false) {
    auto it = entries.find(key);
    if (it != entries.end()) return it->second;
    CachedRun run;
    run.cfg = make();
    Experiment exp(run.cfg);
    run.capacity = exp.capacity_bits();
    run.log2_m = exp.log2_m();
    run.report = exp.run(keep_records ? &run.records : nullptr);
    return entries.emplace(key, std::move(run)).first->second;
  }
};

double rate_ci_half(const Report& rep, double log2_m) {
  const double half = rep.mean_t_ci.hi - rep.mean_t;
  return log2_m * half / (rep.mean_t * rep.mean_t);
}

struct C2Point {
  double p;
  int k;
  int le;
};

std::vector<C2Point> c2_points(bool quick) {
  if (quick) return {{0.25, 8, 4}};
  std::vector<C2Point> pts;
  for (double p : {0.25, 0.11})
    for (int k : {8, 12})
      for (int le : {4, 8}) pts.push_back({p, k, le});
  return pts;
}

std::string c2_key(const C2Point& pt) {
  return "c2:p=" + fmt(pt.p) + ":k=" + std::to_string(pt.k) + ":le=" + std::to_string(pt.le);
}

const CachedRun& c2_run(RunCache& cache, const Options& opts, const C2Point& pt, int index) {
  return cache.get(c2_key(pt), [&] {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::known;
    cfg.channel = Dmc::bsc(pt.p);
    cfg.source = MessageSource::uniform(std::uint64_t{1} << pt.k);
    cfg.epsilon = std::exp2(-pt.le);
    cfg.trials = opts.quick ? 2000 : 10000;
    cfg.seed = substream(opts.seed, 200 + static_cast<std::uint64_t>(index));
    cfg.workers = opts.workers;
    return cfg;
  });
}

const CachedRun& c6_run(RunCache& cache, const Options& opts) {
  return cache.get("c6", [&] {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::universal;
    cfg.channel = Dmc::bsc(0.25);
    cfg.source = MessageSource::uniform(std::uint64_t{1} << (opts.quick ? 8 : 12));
    cfg.epsilon = std::exp2(-6);
    cfg.trials = opts.quick ? 1500 : 5000;
    cfg.seed = substream(opts.seed, 600);
    cfg.workers = opts.workers;
    return cfg;
  });
}

// --- criteria ----------------------------------------------------------------

CriterionResult c1_bec_repetition(const Options& opts, RunCache&) {
  CriterionResult res{1, "bec repetition baseline"};
  res.pass = true;
  int i = 0;
  for (double delta : {0.25, 0.5, 0.75}) {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::bec_repetition;
    cfg.channel = Dmc::bec(delta);
    cfg.source = MessageSource::uniform(2);
    cfg.trials = opts.quick ? 20000 : 100000;
    cfg.seed = substream(opts.seed, 100 + static_cast<std::uint64_t>(i++));
    cfg.workers = opts.workers;
    const Report rep = Experiment(cfg).run();
    const double target = 1.0 / (1.0 - delta);
    const double rel = std::abs(rep.mean_t - target) / target;
    if (rel > 0.02) res.pass = false;
    res.detail += "delta=" + fmt(delta) + " mean=" + fmt(rep.mean_t) + " target=" + fmt(target) +
                  " rel_err=" + fmt(rel) + "; ";
  }
  return res;
}

CriterionResult c2_known_achievability(const Options& opts, RunCache& cache) {
  CriterionResult res{2, "known-channel achievability"};
  res.pass = true;
  int index = 0;
  for (const auto& pt : c2_points(opts.quick)) {
    const CachedRun& run = c2_run(cache, opts, pt, index++);
    const Report& rep = run.report;
    const double eps = run.cfg.epsilon;
    const double wald = rep.bound_values.at("mean_t_wald");
    const double rate_bound = rep.bound_values.at("rate_known");
    const double ci = rep.mean_t_ci.hi - rep.mean_t;
    const double rci = rate_ci_half(rep, run.log2_m);
    const bool ok_err = rep.error_ci.hi <= eps;
    const bool ok_t = rep.mean_t <= wald + ci;
    const bool ok_rate = rep.empirical_rate >= rate_bound - rci;
    if (!(ok_err && ok_t && ok_rate)) res.pass = false;
    res.detail += "p=" + fmt(pt.p) + ",K=" + std::to_string(pt.k) +
                  ",eps=2^-" + std::to_string(pt.le) + ": PeHi=" + fmt(rep.error_ci.hi) +
                  (ok_err ? "<=" : ">") + fmt(eps) + " T=" + fmt(rep.mean_t) +
                  (ok_t ? "<=" : ">") + fmt(wald + ci) + " R=" + fmt(rep.empirical_rate) +
                  (ok_rate ? ">=" : "<") + fmt(rate_bound - rci) + "; ";
  }
  return res;
}

CriterionResult c3_martingale_audits(const Options& opts, RunCache&) {
  CriterionResult res{3, "martingale audits"};
  const std::uint64_t samples = opts.quick ? 20000 : 100000;
  const MartingaleAudit audit =
      martingale_audit(Dmc::bsc(0.25), InputPrior::uniform(2), 10.0, 200, samples,
                       substream(opts.seed, 300));
  const double p0 = std::exp2(-10.0);
  const double cross_bound =
      p0 + 3.0 * std::sqrt(p0 * (1 - p0) / static_cast<double>(samples));
  const bool ok_known = std::abs(audit.known_mean - 1.0) <= kZ99 * audit.known_sigma_mean;
  const bool ok_unv = std::abs(audit.universal_mean - 1.0) <= kZ99 * audit.universal_sigma_mean;
  const bool ok_ck = audit.known_crossing_fraction <= cross_bound;
  const bool ok_cu = audit.universal_crossing_fraction <= cross_bound;
  res.pass = ok_known && ok_unv && ok_ck && ok_cu;
  res.detail = "U_mean=" + fmt(audit.known_mean) + "+-" + fmt(kZ99 * audit.known_sigma_mean) +
               " Phi_mean=" + fmt(audit.universal_mean) + "+-" +
               fmt(kZ99 * audit.universal_sigma_mean) + " cross=" +
               fmt(audit.known_crossing_fraction) + "/" + fmt(audit.universal_crossing_fraction) +
               " bound=" + fmt(cross_bound);
  return res;
}

CriterionResult c4_mixture_oracle(const Options& opts, RunCache&) {
  CriterionResult res{4, "mixture vs simplex integration"};
  const int max_len = opts.quick ? 6 : 8;
  const double alpha = opts.oracle_kt_alpha;
  std::map<std::pair<int, int>, double> column_log2;  // (n0, n1) -> log2 integral ratio
  auto column_value = [&](int n0, int n1) {
    const auto key = std::make_pair(n0, n1);
    const auto it = column_log2.find(key);
    if (it != column_log2.end()) return it->second;
    const double num = dirichlet_simplex_integral({n0 + alpha, n1 + alpha}, 2048);
    const double den = dirichlet_simplex_integral({alpha, alpha}, 2048);
    const double v = std::log2(num / den);
    column_log2.emplace(key, v);
    return v;
  };

  double max_diff = 0;
  // single output context: all binary x-sequences up to max_len
  for (int t = 1; t <= max_len; ++t) {
    for (std::uint32_t bits = 0; bits < (1u << t); ++bits) {
      const int n1 = __builtin_popcount(bits);
      const int n0 = t - n1;
      CountMatrix cm(2, 1);
      for (int k = 0; k < t; ++k) cm.add((bits >> k) & 1u, 0);
      const double closed = mixture_log_prob(cm);
      const double oracle = column_value(n0, n1);
      max_diff = std::max(max_diff, std::abs(closed - oracle));
    }
  }
  // two output contexts: all (x, y) sequence pairs up to max_len
  for (int t = 1; t <= max_len; ++t) {
    const std::uint32_t mask = (t == 32) ? 0xffffffffu : ((1u << t) - 1);
    for (std::uint32_t xb = 0; xb < (1u << t); ++xb) {
      for (std::uint32_t yb = 0; yb < (1u << t); ++yb) {
        const int n11 = __builtin_popcount(xb & yb);
        const int n10 = __builtin_popcount(xb & ~yb & mask);
        const int n01 = __builtin_popcount(~xb & yb & mask);
        const int n00 = __builtin_popcount(~xb & ~yb & mask);
        CountMatrix cm(2, 2);
        for (int k = 0; k < t; ++k) cm.add((xb >> k) & 1u, (yb >> k) & 1u);
        const double closed = mixture_log_prob(cm);
        const double oracle = column_value(n00, n10) + column_value(n01, n11);
        max_diff = std::max(max_diff, std::abs(closed - oracle));
      }
    }
  }
  res.pass = max_diff <= 1e-6;
  res.detail = "max |closed - quadrature| = " + fmt(max_diff) + " over lengths <= " +
               std::to_string(max_len);
  return res;
}

CriterionResult c5_redundancy_bound(const Options& opts, RunCache&) {
  CriterionResult res{5, "mixture redundancy bound"};
  const int pairs = opts.quick ? 2000 : 10000;
  const int t_max = opts.quick ? 200 : 500;
  Rng rng(substream(opts.seed, 500), 1);
  std::uint64_t violations = 0;
  double worst_slack = 1e300;
  for (int rep = 0; rep < pairs; ++rep) {
    const int nx = (rep % 2 == 0) ? 2 : 3;
    const int ny = 2;
    const auto t = static_cast<int>(rng.next_u64() % t_max) + 1;
    // random output marginal and per-column input conditionals
    std::vector<double> my(ny);
    double sum = 0;
    for (auto& v : my) {
      v = rng.unit() + 1e-3;
      sum += v;
    }
    for (auto& v : my) v /= sum;
    std::vector<std::vector<double>> cond(ny, std::vector<double>(nx));
    for (auto& col : cond) {
      double s = 0;
      for (auto& v : col) {
        v = rng.unit() + 1e-3;
        s += v;
      }
      for (auto& v : col) v /= s;
    }
    CountMatrix cm(nx, ny);
    for (int k = 0; k < t; ++k) {
      const double uy = rng.unit();
      const int y = uy < my[0] ? 0 : 1;
      const double ux = rng.unit();
      int x = 0;
      double acc = 0;
      for (int i = 0; i < nx; ++i) {
        acc += cond[y][i];
        if (ux < acc) {
          x = i;
          break;
        }
        x = i;
      }
      cm.add(x, y);
    }
    const double gap = ml_log_prob(cm) - mixture_log_prob(cm);
    const double bound = redundancy_bound(static_cast<std::uint64_t>(t), nx, ny);
    if (gap > bound + 1e-9 || gap < -1e-9) ++violations;
    worst_slack = std::min(worst_slack, bound - gap);
  }
  res.pass = violations == 0;
  res.detail = std::to_string(pairs) + " pairs, violations=" + std::to_string(violations) +
               ", min bound slack=" + fmt(worst_slack) + " bits";
  return res;
}

CriterionResult c6_universal_achievability(const Options& opts, RunCache& cache) {
  CriterionResult res{6, "universal achievability"};
  const CachedRun& run = c6_run(cache, opts);
  const Report& rep = run.report;
  const double eps = run.cfg.epsilon;
  const double bound = rep.bound_values.at("mean_t_universal");
  const double ci = rep.mean_t_ci.hi - rep.mean_t;
  const bool ok_err = rep.error_ci.hi <= eps;
  const bool ok_t = rep.mean_t <= bound + ci;
  const bool ok_replay = rep.extras.at("replay_violations") == 0;
  const bool ok_dom = rep.extras.at("dominance_violations") == 0;
  res.pass = ok_err && ok_t && ok_replay && ok_dom;
  res.detail = "PeHi=" + fmt(rep.error_ci.hi) + (ok_err ? "<=" : ">") + fmt(eps) +
               " T=" + fmt(rep.mean_t) + (ok_t ? "<=" : ">") + fmt(bound + ci) +
               " replay_viol=" + fmt(rep.extras.at("replay_violations")) +
               " dominance_viol=" + fmt(rep.extras.at("dominance_violations"));
  return res;
}

CriterionResult c7_randomized_wrapper(const Options& opts, RunCache& cache) {
  CriterionResult res{7, "randomized decoder transform"};
  const C2Point pt{0.25, 8, 4};
  const CachedRun& base = c2_run(cache, opts, pt, 0);
  const CachedRun& wrapped = cache.get("c7:alpha=0.3", [&] {
    ExperimentConfig cfg = base.cfg;
    cfg.randomize_alpha = 0.3;
    return cfg;
  });
  const double n = static_cast<double>(wrapped.report.trials);
  const double ratio = wrapped.report.mean_t / base.report.mean_t;
  const bool ok_ratio = std::abs(ratio - 0.7) <= 0.02 * 0.7;
  const double p0 = base.report.error_rate;
  const double pa = wrapped.report.error_rate;
  const double expected = 0.3 + 0.7 * p0;
  const double tol =
      kZ95 * std::sqrt(pa * (1 - pa) / n + 0.49 * p0 * (1 - p0) / n) + 1e-12;
  const bool ok_err = std::abs(pa - expected) <= tol;
  res.pass = ok_ratio && ok_err;
  res.detail = "mean_T ratio=" + fmt(ratio) + " (target 0.7 +-2%), error=" + fmt(pa) +
               " expected=" + fmt(expected) + " tol=" + fmt(tol);
  return res;
}

CriterionResult c8_converse_sanity(const Options& opts, RunCache& cache) {
  CriterionResult res{8, "weak converse sanity"};
  res.pass = true;
  int index = 0;
  for (const auto& pt : c2_points(opts.quick)) {
    const CachedRun& run = c2_run(cache, opts, pt, index++);
    const double conv = bounds::converse_rate(run.capacity, run.log2_m, run.cfg.epsilon);
    if (run.report.empirical_rate > conv + 1e-12) res.pass = false;
    res.detail += "known K=" + std::to_string(pt.k) + " R=" + fmt(run.report.empirical_rate) +
                  "<=" + fmt(conv) + "; ";
  }
  const CachedRun& unv = c6_run(cache, opts);
  const double conv_u = bounds::converse_rate(unv.capacity, unv.log2_m, unv.cfg.epsilon);
  if (unv.report.empirical_rate > conv_u + 1e-12) res.pass = false;
  res.detail += "universal R=" + fmt(unv.report.empirical_rate) + "<=" + fmt(conv_u);
  return res;
}

CriterionResult c9_joint_source_channel(const Options& opts, RunCache&) {
  CriterionResult res{9, "joint source-channel coding"};
  ExperimentConfig cfg;
  cfg.scheme = Scheme::joint_sc;
  cfg.channel = Dmc::noiseless(2);
  cfg.source = MessageSource::zipf(1024, 1.0);
  cfg.epsilon = std::exp2(-6);
  cfg.trials = opts.quick ? 2000 : 10000;
  cfg.seed = substream(opts.seed, 900);
  cfg.workers = opts.workers;
  const Report rep = Experiment(cfg).run();
  const double bound = rep.bound_values.at("mean_t_joint_sc");
  const double ci = rep.mean_t_ci.hi - rep.mean_t;
  const bool ok_err = rep.error_ci.hi <= cfg.epsilon;
  const bool ok_t = rep.mean_t <= bound + ci;
  res.pass = ok_err && ok_t;
  res.detail = "H=" + fmt(rep.bound_values.at("entropy_bits")) + " PeHi=" + fmt(rep.error_ci.hi) +
               (ok_err ? "<=" : ">") + fmt(cfg.epsilon) + " T=" + fmt(rep.mean_t) +
               (ok_t ? "<=" : ">") + fmt(bound + ci);
  return res;
}

CriterionResult c10_slepian_wolf(const Options& opts, RunCache&) {
  CriterionResult res{10, "slepian-wolf two-stage coding"};
  ExperimentConfig cfg;
  cfg.scheme = Scheme::slepian_wolf;
  cfg.channel = Dmc::noiseless(2);
  cfg.source = CorrelatedPairSource({{0.4, 0.1}, {0.1, 0.4}}, 6);
  cfg.epsilon = std::exp2(-4);
  cfg.trials = opts.quick ? 800 : 4000;
  cfg.seed = substream(opts.seed, 1000);
  cfg.workers = opts.workers;
  const Report rep = Experiment(cfg).run();
  const double r1 = rep.extras.at("r1_mean");
  const double r2 = rep.extras.at("r2_mean");
  const bool ok1 = r1 <= rep.bound_values.at("r1_bound") + rep.extras.at("r1_ci_half");
  const bool ok2 = r2 <= rep.bound_values.at("r2_bound") + rep.extras.at("r2_ci_half");
  const bool ok_err = rep.error_ci.hi <= cfg.epsilon;
  res.pass = ok1 && ok2 && ok_err;
  res.detail = "R1=" + fmt(r1) + (ok1 ? "<=" : ">") + fmt(rep.bound_values.at("r1_bound")) +
               " R2=" + fmt(r2) + (ok2 ? "<=" : ">") + fmt(rep.bound_values.at("r2_bound")) +
               " PeHi=" + fmt(rep.error_ci.hi) + (ok_err ? "<=" : ">") + fmt(cfg.epsilon);
  return res;
}

CriterionResult c11_complete_universality(const Options& opts, RunCache&) {
  CriterionResult res{11, "complete universality"};
  ExperimentConfig cfg;
  cfg.scheme = Scheme::complete_universal;
  cfg.channel = Dmc::bsc(0.25);
  cfg.source = IidSymbolSource({0.3, 0.7}, opts.quick ? 8 : 12);
  cfg.epsilon = std::exp2(-4);
  cfg.trials = opts.quick ? 300 : 2000;
  cfg.seed = substream(opts.seed, 1100);
  cfg.workers = opts.workers;
  Experiment exp(cfg);
  const Report rep = exp.run();
  const double rci = rate_ci_half(rep, exp.log2_m());
  const double lo = rep.bound_values.at("rate_band_low");
  const double hi = rep.bound_values.at("rate_band_high");
  const bool ok_err = rep.error_ci.hi <= cfg.epsilon;
  const bool ok_band = rep.empirical_rate >= lo - rci && rep.empirical_rate <= hi + rci;
  const bool ok_replay = rep.extras.at("replay_violations") == 0;
  res.pass = ok_err && ok_band && ok_replay;
  res.detail = "PeHi=" + fmt(rep.error_ci.hi) + (ok_err ? "<=" : ">") + fmt(cfg.epsilon) +
               " R=" + fmt(rep.empirical_rate) + " band=[" + fmt(lo) + "," + fmt(hi) + "]" +
               " replay_viol=" + fmt(rep.extras.at("replay_violations"));
  return res;
}

CriterionResult c12_limited_feedback(const Options& opts, RunCache& cache) {
  CriterionResult res{12, "limited feedback periods"};
  res.pass = true;
  const double eps = std::exp2(-8);
  std::map<int, const CachedRun*> runs;
  for (int s : {1, 2, 8}) {
    runs[s] = &cache.get("c12:s=" + std::to_string(s), [&] {
      ExperimentConfig cfg;
      cfg.scheme = Scheme::known;
      cfg.channel = Dmc::noiseless(2);
      cfg.source = MessageSource::uniform(1024);
      cfg.epsilon = eps;
      cfg.trials = opts.quick ? 500 : 2000;
      cfg.seed = substream(opts.seed, 1200);
      cfg.feedback_period = s;
      cfg.workers = opts.workers;
      return cfg;
    }, /*keep_records=*/true);
  }
  const auto& base = runs.at(1)->records;
  for (int s : {2, 8}) {
    const auto& rec = runs.at(s)->records;
    std::uint64_t violations = 0;
    for (std::size_t i = 0; i < rec.size(); ++i)
      if (rec[i].stopping_time > base[i].stopping_time + static_cast<std::uint64_t>(s) - 1)
        ++violations;
    if (violations != 0) res.pass = false;
    res.detail += "s=" + std::to_string(s) + " excess_violations=" + std::to_string(violations) + "; ";
  }
  for (int s : {1, 2, 8}) {
    const CachedRun& run = *runs.at(s);
    const double bound = bounds::rate_limited_feedback(run.capacity, run.log2_m, eps, s);
    const double rci = rate_ci_half(run.report, run.log2_m);
    const bool ok = run.report.empirical_rate >= bound - rci;
    if (!ok) res.pass = false;
    res.detail += "s=" + std::to_string(s) + " R=" + fmt(run.report.empirical_rate) +
                  (ok ? ">=" : "<") + fmt(bound - rci) + "; ";
  }
  return res;
}

CriterionResult c13_determinism(const Options& opts, RunCache&) {
  CriterionResult res{13, "worker-count determinism"};
  ExperimentConfig cfg;
  cfg.scheme = Scheme::known;
  cfg.channel = Dmc::bsc(0.25);
  cfg.source = MessageSource::uniform(256);
  cfg.epsilon = std::exp2(-4);
  cfg.trials = opts.quick ? 2000 : 10000;
  cfg.seed = substream(opts.seed, 1300);
  cfg.workers = 1;
  const Report rep1 = Experiment(cfg).run();
  const std::string dump1 = report_to_json(rep1, cfg).dump();
  cfg.workers = 4;
  const Report rep4 = Experiment(cfg).run();
  const std::string dump4 = report_to_json(rep4, cfg).dump();
  res.pass = dump1 == dump4;
  res.detail = res.pass ? "reports byte-identical across worker counts"
                        : "reports differ between worker counts 1 and 4";
  return res;
}

}  // namespace

double quadrature_mixture_log_prob(const CountMatrix& cm, double alpha, int panels) {
  double bits = 0;
  for (int y = 0; y < cm.y_size(); ++y) {
    if (cm.column_total(y) == 0) continue;
    std::vector<double> a(static_cast<std::size_t>(cm.x_size()));
    std::vector<double> a0(static_cast<std::size_t>(cm.x_size()), alpha);
    for (int x = 0; x < cm.x_size(); ++x)
      a[static_cast<std::size_t>(x)] = static_cast<double>(cm.count(x, y)) + alpha;
    bits += std::log2(dirichlet_simplex_integral(a, panels) /
                      dirichlet_simplex_integral(a0, panels));
  }
  return bits;
}

std::string format_result_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof(head), "[%s] %02d %-32s (%.1fs) ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return std::string(head) + r.detail;
}

std::vector<CriterionResult> run_acceptance(const Options& opts) {
  using CriterionFn = std::function<CriterionResult(const Options&, RunCache&)>;
  const std::vector<std::pair<int, CriterionFn>> criteria = {
      {1, c1_bec_repetition},        {2, c2_known_achievability},
      {3, c3_martingale_audits},     {4, c4_mixture_oracle},
      {5, c5_redundancy_bound},      {6, c6_universal_achievability},
      {7, c7_randomized_wrapper},    {8, c8_converse_sanity},
      {9, c9_joint_source_channel},  {10, c10_slepian_wolf},
      {11, c11_complete_universality}, {12, c12_limited_feedback},
      {13, c13_determinism},
  };
  std::set<int> wanted(opts.only.begin(), opts.only.end());
  RunCache cache;
  std::vector<CriterionResult> results;
  for (const auto& [id, fn] : criteria) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = fn(opts, cache);
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace rateless::accept
