#include "mqlab/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mqlab/stats.hpp"

namespace mqlab {

MarkedPointProcess::MarkedPointProcess(double t_min, double t_max,
                                       std::vector<MarkedPoint> events)
    : t_min_(t_min), t_max_(t_max), events_(std::move(events)) {
  if (!(t_min_ <= t_max_)) {
    throw std::invalid_argument("MarkedPointProcess: empty horizon");
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& e : events_) {
    if (e.time < t_min_ || e.time > t_max_) {
      throw std::invalid_argument("MarkedPointProcess: event outside horizon");
    }
    if (!(e.time > prev)) {
      throw std::invalid_argument("MarkedPointProcess: time collision");
    }
    prev = e.time;
  }
}

MarkedPointProcess MarkedPointProcess::poisson(double rate, double t_min,
                                               double t_max, RngStream& rng,
                                               int cls) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument("poisson: rate must be nonnegative");
  }
  std::vector<MarkedPoint> events;
  if (rate > 0.0) {
    double t = t_min;
    while (true) {
      t += rng.next_exp(rate);
      if (t > t_max) break;
      events.push_back({t, cls});
    }
  }
  return MarkedPointProcess(t_min, t_max, std::move(events));
}

MarkedPointProcess MarkedPointProcess::restrict_to_classes(int r) const {
  std::vector<MarkedPoint> kept;
  for (const auto& e : events_) {
    if (e.cls <= r) kept.push_back(e);
  }
  return MarkedPointProcess(t_min_, t_max_, std::move(kept));
}

MarkedPointProcess MarkedPointProcess::slice_time(double a, double b) const {
  if (a < t_min_ || b > t_max_ || a > b) {
    throw std::invalid_argument("slice_time: bad range");
  }
  std::vector<MarkedPoint> kept;
  for (const auto& e : events_) {
    if (e.time >= a && e.time <= b) kept.push_back(e);
  }
  return MarkedPointProcess(a, b, std::move(kept));
}

std::vector<double> MarkedPointProcess::interevent_times() const {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < events_.size(); ++i) {
    gaps.push_back(events_[i].time - events_[i - 1].time);
  }
  return gaps;
}

std::vector<double> MarkedPointProcess::interevent_times(int cls) const {
  std::vector<double> gaps;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : events_) {
    if (e.cls != cls) continue;
    if (!std::isnan(prev)) gaps.push_back(e.time - prev);
    prev = e.time;
  }
  return gaps;
}

std::vector<int> MarkedPointProcess::class_labels() const {
  std::vector<int> labels;
  labels.reserve(events_.size());
  for (const auto& e : events_) labels.push_back(e.cls);
  return labels;
}

std::int64_t MarkedPointProcess::count_class(int cls) const {
  std::int64_t n = 0;
  for (const auto& e : events_) n += (e.cls == cls);
  return n;
}

Mm1Output mm1_run(const MarkedPointProcess& arrivals,
                  const MarkedPointProcess& services,
                  const ContinuousInit& init) {
  if (arrivals.t_min() != services.t_min() ||
      arrivals.t_max() != services.t_max()) {
    throw std::invalid_argument("mm1_run: horizons must match");
  }
  int m = 0;
  for (const auto& e : arrivals.events()) m = std::max(m, e.cls);
  if (init.kind == ContinuousInit::Kind::finite) {
    m = std::max(m, static_cast<int>(init.initial_counts.size()));
  }
  const int reservoir_class =
      init.kind == ContinuousInit::Kind::saturated_bottom ? m + 1 : 0;

  std::vector<std::int64_t> waiting(static_cast<std::size_t>(m) + 2, 0);
  if (init.kind == ContinuousInit::Kind::finite) {
    for (std::size_t c = 0; c < init.initial_counts.size(); ++c) {
      waiting[c + 1] = init.initial_counts[c];
    }
  }

  std::vector<MarkedPoint> departures;
  std::vector<MarkedPoint> unused;
  std::size_t ia = 0, is = 0;
  const auto& ae = arrivals.events();
  const auto& se = services.events();
  while (ia < ae.size() || is < se.size()) {
    bool take_arrival;
    if (ia == ae.size()) {
      take_arrival = false;
    } else if (is == se.size()) {
      take_arrival = true;
    } else if (ae[ia].time == se[is].time) {
      throw std::invalid_argument("mm1_run: arrival/service time collision");
    } else {
      take_arrival = ae[ia].time < se[is].time;
    }
    if (take_arrival) {
      ++waiting[static_cast<std::size_t>(ae[ia].cls)];
      ++ia;
    } else {
      int served = 0;
      for (int c = 1; c <= m; ++c) {
        if (waiting[static_cast<std::size_t>(c)] > 0) {
          served = c;
          break;
        }
      }
      if (served > 0) {
        --waiting[static_cast<std::size_t>(served)];
        departures.push_back({se[is].time, served});
      } else if (reservoir_class > 0) {
        departures.push_back({se[is].time, reservoir_class});
      } else {
        unused.push_back({se[is].time, 0});
      }
      ++is;
    }
  }
  return {MarkedPointProcess(arrivals.t_min(), arrivals.t_max(),
                             std::move(departures)),
          MarkedPointProcess(arrivals.t_min(), arrivals.t_max(),
                             std::move(unused))};
}

MarkedPointProcess mm1_fixed_point(const std::vector<double>& lambdas,
                                   double t_min, double t_max, RngStream& rng,
                                   double burn_in) {
  if (lambdas.empty()) {
    throw std::invalid_argument("mm1_fixed_point: need >= 1 class");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) {
      throw std::invalid_argument("mm1_fixed_point: rates must be positive");
    }
  }
  if (burn_in < 0.0) {
    double b = 0.0;
    for (double l : lambdas) b += 10.0 / l;
    burn_in = std::max(100.0, b);
  }
  const double w0 = t_min - burn_in;

  RngStream stage1 = rng.substream(1);
  MarkedPointProcess current =
      MarkedPointProcess::poisson(lambdas[0], w0, t_max, stage1, 1);
  double sum = lambdas[0];
  for (std::size_t k = 2; k <= lambdas.size(); ++k) {
    sum += lambdas[k - 1];
    RngStream service_rng = rng.substream(k);
    MarkedPointProcess services =
        MarkedPointProcess::poisson(sum, w0, t_max, service_rng, 1);
    current = mm1_run(current, services,
                      ContinuousInit::saturated_bottom()).departures;
  }
  return current.slice_time(t_min, t_max);
}

TestReport mm1_verify(const std::vector<double>& lambdas, double mu,
                      double horizon, RngStream& rng,
                      const Mm1VerifyOptions& opts) {
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  if (!(mu > total)) {
    throw std::invalid_argument("mm1_verify: need mu > sum of lambdas");
  }
  TestReport report("mm1_fixed_point", opts.alpha);
  report.set_metadata("seed", rng.seed());
  report.set_metadata("lambdas", lambdas);
  report.set_metadata("mu", mu);
  report.set_metadata("horizon", horizon);

  const double burn = std::max(100.0, 10.0 / (mu - total));
  RngStream rng_in = rng.substream(1);
  RngStream rng_srv = rng.substream(2);
  RngStream rng_ref = rng.substream(3);

  MarkedPointProcess input =
      mm1_fixed_point(lambdas, -burn, horizon, rng_in);
  MarkedPointProcess services =
      MarkedPointProcess::poisson(mu, -burn, horizon, rng_srv);
  MarkedPointProcess departures =
      mm1_run(input, services, ContinuousInit::empty())
          .departures.slice_time(0.0, horizon);
  MarkedPointProcess reference =
      mm1_fixed_point(lambdas, 0.0, horizon, rng_ref);

  const int m = static_cast<int>(lambdas.size());
  for (int c = 1; c <= m; ++c) {
    auto res = ks_test_two_sample(departures.interevent_times(c),
                                  reference.interevent_times(c));
    report.add_pvalue("class" + std::to_string(c) + "_interevent_ks",
                      res.statistic, static_cast<double>(res.sample_size),
                      res.p_value, res.sample_size);
  }
  {
    auto gaps = departures.interevent_times();
    auto res = ks_test(gaps, [total](double x) {
      return 1.0 - std::exp(-total * x);
    });
    report.add_pvalue("combined_interarrival_exp_ks", res.statistic,
                      static_cast<double>(res.sample_size), res.p_value,
                      res.sample_size);
  }
  if (m >= 2) {
    auto res = block_law_compare(departures.class_labels(),
                                 reference.class_labels(), m + 1,
                                 opts.block_len);
    report.add_pvalue("class_label_block_law", res.statistic, res.dof,
                      res.p_value, res.sample_size);
  }
  return report;
}

ClusteringEstimate conditional_intensity_after(const MarkedPointProcess& mpp,
                                               int cls, double eps) {
  ClusteringEstimate est;
  est.eps = eps;
  const auto& ev = mpp.events();
  std::vector<double> times;
  for (const auto& e : ev) {
    if (e.cls == cls) times.push_back(e.time);
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] + eps > mpp.t_max()) break;
    ++est.triggers;
    if (i + 1 < times.size() && times[i + 1] - times[i] <= eps) ++est.hits;
  }
  if (est.triggers > 0) {
    est.conditional_rate =
        static_cast<double>(est.hits) /
        (static_cast<double>(est.triggers) * eps);
  }
  return est;
}

BrownianGridPath BrownianGridPath::sample(double drift, double variance,
                                          double dt, std::size_t steps,
                                          RngStream& rng) {
  if (!(dt > 0.0) || !(variance >= 0.0)) {
    throw std::invalid_argument("BrownianGridPath: bad dt or variance");
  }
  BrownianGridPath path;
  path.dt = dt;
  path.drift = drift;
  path.variance = variance;
  path.values.resize(steps + 1);
  path.values[0] = 0.0;
  const double sd = std::sqrt(variance * dt);
  for (std::size_t k = 0; k < steps; ++k) {
    path.values[k + 1] = path.values[k] + drift * dt + sd * rng.next_normal();
  }
  return path;
}

BrownianQueueOutput brownian_queue(const BrownianGridPath& arrivals,
                                   const BrownianGridPath& services,
                                   RngStream& rng, BrownianStart start) {
  if (arrivals.dt != services.dt ||
      arrivals.values.size() != services.values.size()) {
    throw std::invalid_argument("brownian_queue: grid mismatch");
  }
  const double gap = services.drift - arrivals.drift;
  if (!(gap > 0.0)) {
    throw std::invalid_argument("brownian_queue: need mu > lambda");
  }
  const std::size_t steps = arrivals.steps();

  double q0;
  switch (start) {
    case BrownianStart::stationary_draw:
      q0 = rng.next_exp(gap);
      break;
    case BrownianStart::zero:
      q0 = 0.0;
      break;
    default:
      throw std::logic_error("brownian_queue: bad start");
  }

  BrownianQueueOutput out;
  out.queue.resize(steps + 1);
  out.queue[0] = q0;
  for (std::size_t k = 0; k < steps; ++k) {
    double da = arrivals.values[k + 1] - arrivals.values[k];
    double ds = services.values[k + 1] - services.values[k];
    out.queue[k + 1] = std::max(out.queue[k] + da - ds, 0.0);
  }

  out.departures.dt = arrivals.dt;
  out.departures.drift = arrivals.drift;
  out.departures.variance = arrivals.variance;
  out.departures.values.resize(steps + 1);
  out.unused.dt = arrivals.dt;
  out.unused.drift = gap;
  out.unused.variance = 0.0;
  out.unused.values.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    out.departures.values[k] = arrivals.values[k] + q0 - out.queue[k];
    out.unused.values[k] = services.values[k] - out.departures.values[k];
  }
  return out;
}

namespace {

std::vector<double> block_increments(const std::vector<double>& path,
                                     std::size_t k, std::size_t from) {
  std::vector<double> incs;
  for (std::size_t i = from; i + k < path.size(); i += k) {
    incs.push_back(path[i + k] - path[i]);
  }
  return incs;
}

}  // namespace

TestReport brownian_two_type(double lambda1, double lambda2, double mu,
                             double dt, std::size_t steps, RngStream& rng,
                             const BrownianTwoTypeOptions& opts) {
  if (!(lambda1 < lambda1 + lambda2 && lambda1 + lambda2 < mu)) {
    throw std::invalid_argument(
        "brownian_two_type: need lambda1 < lambda1+lambda2 < mu");
  }
  TestReport report("brownian_two_type", opts.alpha);
  report.set_metadata("seed", rng.seed());
  report.set_metadata("lambda1", lambda1);
  report.set_metadata("lambda2", lambda2);
  report.set_metadata("mu", mu);
  report.set_metadata(
      "service_drift_mode",
      opts.service_drift == TwoTypeServiceDrift::construction
          ? "construction (lambda1+lambda2)"
          : "paper_text (lambda2)");

  const double stage1_drift =
      opts.service_drift == TwoTypeServiceDrift::construction
          ? lambda1 + lambda2
          : lambda2;

  auto build_two_type = [&](RngStream& r) {
    RngStream ra = r.substream(1);
    RngStream rs = r.substream(2);
    BrownianGridPath a = BrownianGridPath::sample(lambda1, 1.0, dt, steps, ra);
    BrownianGridPath s =
        BrownianGridPath::sample(stage1_drift, 1.0, dt, steps, rs);
    RngStream rq = r.substream(3);
    return brownian_queue(a, s, rq, BrownianStart::stationary_draw);
  };

  RngStream rng_main = rng.substream(10);
  RngStream rng_ref = rng.substream(11);
  auto two_type = build_two_type(rng_main);
  auto reference = build_two_type(rng_ref);

  // second stage: drift-mu server fed the two-type arrival (D, U)
  RngStream rng_srv = rng.substream(12);
  BrownianGridPath smu = BrownianGridPath::sample(mu, 1.0, dt, steps, rng_srv);
  BrownianGridPath combined;
  combined.dt = dt;
  combined.drift = lambda1 + lambda2;
  combined.variance = 1.0;
  combined.values.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    combined.values[i] = two_type.departures.values[i] +
                         two_type.unused.values[i];
  }
  RngStream rq1 = rng.substream(13);
  RngStream rq2 = rng.substream(14);
  auto out1 = brownian_queue(two_type.departures, smu, rq1,
                             BrownianStart::zero);
  auto out12 = brownian_queue(combined, smu, rq2, BrownianStart::zero);

  const std::size_t kblk =
      std::max<std::size_t>(1, static_cast<std::size_t>(opts.k_block_time / dt));
  const std::size_t skip =
      std::min(steps, static_cast<std::size_t>(opts.burn_in_time / dt));

  // type-1 departures: Brownian Burke, increments ~ N(lambda1 k dt, k dt)
  {
    auto incs = block_increments(out1.departures.values, kblk, skip);
    const double mean = lambda1 * static_cast<double>(kblk) * dt;
    const double sd = std::sqrt(static_cast<double>(kblk) * dt);
    auto res = ks_test(incs, [mean, sd](double x) {
      return 1.0 - normal_sf((x - mean) / sd);
    });
    report.add_pvalue("type1_departure_increments_normal_ks", res.statistic,
                      static_cast<double>(res.sample_size), res.p_value,
                      res.sample_size);
  }
  // type-2 departures vs the arrival-side local-time increments of an
  // independent construction
  {
    std::vector<double> d2(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
      d2[i] = out12.departures.values[i] - out1.departures.values[i];
    }
    auto lhs = block_increments(d2, kblk, skip);
    auto rhs = block_increments(reference.unused.values, kblk, skip);
    auto res = ks_test_two_sample(lhs, rhs);
    report.add_pvalue("type2_departure_vs_local_time_ks", res.statistic,
                      static_cast<double>(res.sample_size), res.p_value,
                      res.sample_size);
  }
  // structure: the type-2 stream is nondecreasing, type-1 is not monotone
  {
    bool nondecreasing = true;
    for (std::size_t i = 0; i < steps; ++i) {
      if (two_type.unused.values[i + 1] < two_type.unused.values[i] - 1e-12) {
        nondecreasing = false;
        break;
      }
    }
    report.add_exact("type2_stream_nondecreasing", nondecreasing);
    std::int64_t sign_changes = 0;
    for (std::size_t i = 1; i < steps; ++i) {
      double a = two_type.departures.values[i] -
                 two_type.departures.values[i - 1];
      double b = two_type.departures.values[i + 1] -
                 two_type.departures.values[i];
      if (a * b < 0.0) ++sign_changes;
    }
    report.add_exact("type1_stream_sign_changes_present", sign_changes > 0,
                     static_cast<double>(sign_changes));
  }
  return report;
}

}  // namespace mqlab
