#include "mqlab/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mqlab/stats.hpp"

namespace mqlab {

TasepConfig::TasepConfig(std::vector<int> sites, int num_classes)
    : sites_(std::move(sites)), num_classes_(num_classes) {
  if (sites_.size() < 2) {
    throw std::invalid_argument("TasepConfig: ring length must be >= 2");
  }
  if (num_classes_ < 1) {
    throw std::invalid_argument("TasepConfig: need >= 1 class");
  }
  for (int v : sites_) {
    if (v < 0 || v > num_classes_) {
      throw std::invalid_argument("TasepConfig: site value outside 0..m");
    }
  }
}

std::vector<std::int64_t> TasepConfig::value_counts() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(num_classes_) + 1,
                                   0);
  for (int v : sites_) ++counts[static_cast<std::size_t>(v)];
  return counts;
}

TasepConfig TasepConfig::project_to_classes(int r) const {
  if (r < 1 || r > num_classes_) {
    throw std::out_of_range("project_to_classes: r out of range");
  }
  std::vector<int> sites = sites_;
  for (int& v : sites) {
    if (v > r) v = kHole;
  }
  return TasepConfig(std::move(sites), r);
}

TasepConfig arrivals_to_config(const MulticlassWorkSequence& arrivals) {
  std::vector<int> sites(arrivals.length(), TasepConfig::kHole);
  for (std::size_t i = 0; i < arrivals.length(); ++i) {
    Work total = 0;
    for (std::size_t c = 1; c <= arrivals.num_classes(); ++c) {
      Work v = arrivals.raw()[c - 1][i];
      total += v;
      if (v > 0) sites[i] = static_cast<int>(c);
    }
    if (total > 1) {
      throw std::invalid_argument(
          "arrivals_to_config: slot holds more than one customer");
    }
  }
  return TasepConfig(std::move(sites),
                     static_cast<int>(arrivals.num_classes()));
}

std::int64_t sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("sample_poisson: mean must be nonnegative");
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = rng.next_unit();
    while (prod > limit) {
      ++k;
      prod *= rng.next_unit();
    }
    return k;
  }
  // Hormann's PTRS transformed rejection
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    double u = rng.next_unit() - 0.5;
    double v = rng.next_unit();
    double us = 0.5 - std::abs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * std::log(mean) - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

TasepConfig tasep_apply_attempts(const TasepConfig& config,
                                 const std::vector<std::uint32_t>& attempts) {
  std::vector<int> sites = config.sites();
  const std::size_t L = sites.size();
  for (std::uint32_t s : attempts) {
    const std::size_t i = s;
    const int v = sites[i];
    if (v == TasepConfig::kHole) continue;
    const std::size_t left = (i + L - 1) % L;
    const int w = sites[left];
    if (w == TasepConfig::kHole || w > v) {
      sites[left] = v;
      sites[i] = w;
    }
  }
  return TasepConfig(std::move(sites), config.num_classes());
}

TasepConfig tasep_step_continuous(const TasepConfig& config, double duration,
                                  RngStream& rng) {
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("tasep_step_continuous: bad duration");
  }
  // one rate-1 clock per site; the attempt order within the window is
  // exchangeable, so Poisson count + uniform sites is the exact law
  const double total_rate =
      static_cast<double>(config.ring_length()) * duration;
  const std::int64_t n = sample_poisson(total_rate, rng);
  std::vector<std::uint32_t> attempts(static_cast<std::size_t>(n));
  for (auto& s : attempts) {
    s = static_cast<std::uint32_t>(rng.next_below(config.ring_length()));
  }
  return tasep_apply_attempts(config, attempts);
}

namespace {

struct RingStats {
  std::vector<double> densities;  // per class 1..m
  std::vector<double> pairs;      // (m+1)^2 ordered adjacent pairs
  std::vector<double> triples;    // (m+1)^3 ordered adjacent triples
};

RingStats ring_stats(const TasepConfig& config) {
  const int k = config.num_classes() + 1;
  const std::size_t L = config.ring_length();
  RingStats st;
  st.densities.assign(static_cast<std::size_t>(config.num_classes()), 0.0);
  st.pairs.assign(static_cast<std::size_t>(k) * k, 0.0);
  st.triples.assign(static_cast<std::size_t>(k) * k * k, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    int a = config.site(i);
    int b = config.site((i + 1) % L);
    int c = config.site((i + 2) % L);
    if (a > 0) st.densities[static_cast<std::size_t>(a - 1)] += 1.0;
    st.pairs[static_cast<std::size_t>(a) * k + b] += 1.0;
    st.triples[(static_cast<std::size_t>(a) * k + b) * k + c] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(L);
  for (auto& v : st.densities) v *= inv;
  for (auto& v : st.pairs) v *= inv;
  for (auto& v : st.triples) v *= inv;
  return st;
}

std::vector<double> concat_diff(const RingStats& a, const RingStats& b,
                                std::size_t* n_density, std::size_t* n_pair) {
  std::vector<double> diff;
  *n_density = a.densities.size();
  *n_pair = a.pairs.size();
  diff.reserve(a.densities.size() + a.pairs.size() + a.triples.size());
  for (std::size_t i = 0; i < a.densities.size(); ++i) {
    diff.push_back(b.densities[i] - a.densities[i]);
  }
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    diff.push_back(b.pairs[i] - a.pairs[i]);
  }
  for (std::size_t i = 0; i < a.triples.size(); ++i) {
    diff.push_back(b.triples[i] - a.triples[i]);
  }
  return diff;
}

}  // namespace

TestReport stationarity_check(const FixedPointSpec& spec,
                              std::size_t ring_length, double run_time,
                              RngStream& rng,
                              const StationarityOptions& opts) {
  spec.validate();
  if (spec.family != FamilySpec::bernoulli()) {
    throw std::invalid_argument(
        "stationarity_check: bernoulli family required");
  }
  if (!(spec.total_intensity() < 1.0)) {
    throw std::invalid_argument(
        "stationarity_check: total intensity must be < 1");
  }
  const int m = static_cast<int>(spec.num_classes());

  TestReport report("tasep_stationarity", opts.alpha);
  report.set_metadata("seed", rng.seed());
  report.set_metadata("ring_length", ring_length);
  report.set_metadata("run_time", run_time);
  report.set_metadata("replications", opts.replications);
  report.set_metadata("negative_control", opts.negative_control);

  const int reps = opts.replications;
  std::vector<std::vector<double>> diffs(static_cast<std::size_t>(reps));
  std::vector<std::int64_t> conserved(static_cast<std::size_t>(reps), 0);
  std::size_t n_density = 0, n_pair = 0;

  auto run_rep = [&](int rep) {
    RngStream rep_rng = rng.substream(1000 + static_cast<std::uint64_t>(rep));
    TasepConfig config = [&]() -> TasepConfig {
      if (opts.negative_control) {
        RngStream init_rng = rep_rng.substream(1);
        std::vector<int> sites(ring_length, TasepConfig::kHole);
        for (auto& s : sites) {
          double u = init_rng.next_unit();
          double acc = 0.0;
          for (int c = 1; c <= m; ++c) {
            acc += spec.lambdas[static_cast<std::size_t>(c - 1)];
            if (u < acc) {
              s = c;
              break;
            }
          }
        }
        return TasepConfig(std::move(sites), m);
      }
      RngStream init_rng = rep_rng.substream(1);
      FixedPointSample sample =
          construct_fixed_point(spec, 0, ring_length, init_rng);
      return arrivals_to_config(sample.arrivals);
    }();

    RingStats before = ring_stats(config);
    RngStream evolve_rng = rep_rng.substream(2);
    TasepConfig after = tasep_step_continuous(config, run_time, evolve_rng);
    RingStats after_st = ring_stats(after);
    std::size_t nd, np;
    diffs[static_cast<std::size_t>(rep)] =
        concat_diff(before, after_st, &nd, &np);
    n_density = nd;
    n_pair = np;
    conserved[static_cast<std::size_t>(rep)] =
        (config.value_counts() == after.value_counts()) ? 1 : 0;
  };

  if (opts.threads > 1) {
    std::vector<std::thread> pool;
    const int nthreads = opts.threads;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        for (int rep = t; rep < reps; rep += nthreads) run_rep(rep);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (int rep = 0; rep < reps; ++rep) run_rep(rep);
  }

  bool all_conserved = true;
  for (std::int64_t c : conserved) all_conserved &= (c == 1);
  report.add_exact("per_class_counts_conserved", all_conserved, 0.0, reps);

  // z-score of the mean drift per statistic
  const std::size_t n_stats = diffs.front().size();
  std::vector<double> zscores(n_stats, 0.0);
  for (std::size_t j = 0; j < n_stats; ++j) {
    double mean = 0.0;
    for (const auto& d : diffs) mean += d[j];
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (const auto& d : diffs) {
      var += (d[j] - mean) * (d[j] - mean);
    }
    var /= static_cast<double>(reps - 1);
    double se = std::sqrt(var / static_cast<double>(reps));
    if (se == 0.0) {
      zscores[j] = mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      zscores[j] = std::abs(mean) / se;
    }
  }

  auto max_in = [&](std::size_t from, std::size_t to) {
    double mx = 0.0;
    for (std::size_t j = from; j < to; ++j) mx = std::max(mx, zscores[j]);
    return mx;
  };
  const double z_density = max_in(0, n_density);
  const double z_pair = max_in(n_density, n_density + n_pair);
  const double z_triple = max_in(n_density + n_pair, n_stats);
  report.set_metadata("max_z_density", z_density);
  report.set_metadata("max_z_pair", z_pair);
  report.set_metadata("max_z_triple", z_triple);

  if (opts.negative_control) {
    report.add_exact("pair_drift_exceeds_threshold", z_pair > opts.z_drift,
                     z_pair, reps);
  } else {
    report.add_exact("density_drift_within_tolerance",
                     z_density <= opts.z_pass, z_density, reps);
    report.add_exact("pair_drift_within_tolerance", z_pair <= opts.z_pass,
                     z_pair, reps);
    // wider band: many cells, so a 3-sigma excursion somewhere is expected
    report.add_exact("triple_drift_within_tolerance", z_triple <= opts.z_pass + 1.0,
                     z_triple, reps);
  }
  return report;
}

LabelSequence finite_label_process(int num_classes, std::size_t slots,
                                   RngStream& rng) {
  if (num_classes < 2) {
    throw std::invalid_argument("finite_label_process: need m >= 2");
  }
  FixedPointSpec spec{FamilySpec::bernoulli(),
                      std::vector<double>(static_cast<std::size_t>(num_classes),
                                          1.0 / num_classes)};
  FixedPointSample sample = construct_fixed_point(spec, 0, slots, rng);

  LabelSequence out;
  out.num_classes = num_classes;
  out.labels.resize(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    int cls = 0;
    for (int c = 1; c <= num_classes; ++c) {
      if (sample.arrivals.raw()[static_cast<std::size_t>(c - 1)][i] > 0) {
        cls = c;
        break;
      }
    }
    if (cls == 0) {
      throw std::logic_error(
          "finite_label_process: saturated construction left an empty slot");
    }
    out.labels[i] =
        (static_cast<double>(cls) - 0.5) / static_cast<double>(num_classes);
  }
  return out;
}

std::vector<LagMatch> repeat_statistics(const LabelSequence& labels,
                                        int max_lag) {
  const auto& l = labels.labels;
  std::vector<LagMatch> out;
  for (int lag = 0; lag <= max_lag; ++lag) {
    LagMatch lm;
    lm.lag = lag;
    const std::size_t n = l.size();
    if (static_cast<std::size_t>(lag) >= n) break;
    lm.pairs = static_cast<std::int64_t>(n - static_cast<std::size_t>(lag));
    for (std::size_t i = 0; i + static_cast<std::size_t>(lag) < n; ++i) {
      lm.matches += (l[i] == l[i + static_cast<std::size_t>(lag)]);
    }
    lm.frequency =
        static_cast<double>(lm.matches) / static_cast<double>(lm.pairs);
    double se = std::sqrt(lm.frequency * (1.0 - lm.frequency) /
                          static_cast<double>(lm.pairs));
    lm.ci_halfwidth = 2.576 * se;
    out.push_back(lm);
  }
  return out;
}

double label_match_probability_exact(int num_classes) {
  if (num_classes < 1) {
    throw std::invalid_argument("label_match_probability_exact: bad m");
  }
  const int m = num_classes;
  double total = 0.0;
  // class r of the equal-intensity construction is the unused-service
  // process of a queue with Bernoulli((r-1)/m) arrivals and
  // Bernoulli(r/m) services; enumerate its stationary chain over two
  // slots, truncating the geometric content distribution
  constexpr int kTrunc = 512;
  for (int r = 1; r <= m; ++r) {
    const double a = static_cast<double>(r - 1) / m;
    const double b = static_cast<double>(r) / m;
    const double rho = a * (1.0 - b) / ((1.0 - a) * b);
    double p_match = 0.0;
    double pi = 1.0 - rho;  // pi_0
    for (int x = 0; x <= kTrunc; ++x) {
      for (int a0 = 0; a0 <= 1; ++a0) {
        for (int s0 = 0; s0 <= 1; ++s0) {
          for (int a1 = 0; a1 <= 1; ++a1) {
            for (int s1 = 0; s1 <= 1; ++s1) {
              double p = pi * (a0 ? a : 1.0 - a) * (s0 ? b : 1.0 - b) *
                         (a1 ? a : 1.0 - a) * (s1 ? b : 1.0 - b);
              if (p == 0.0) continue;
              int held0 = x + a0;
              int d0 = std::min(held0, s0);
              int u0 = s0 - d0;
              int x1 = held0 - d0;
              int held1 = x1 + a1;
              int d1 = std::min(held1, s1);
              int u1 = s1 - d1;
              if (u0 == 1 && u1 == 1) p_match += p;
            }
          }
        }
      }
      pi *= rho;
      if (pi == 0.0) break;
    }
    total += p_match;
  }
  return total;
}

}  // namespace mqlab
