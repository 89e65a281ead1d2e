#include "mqlab/queue_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mqlab {

QueuePath run_queue(const WorkSequence& arrivals, const WorkSequence& services,
                    const InitialCondition& init) {
  if (!arrivals.same_window(services)) {
    throw std::invalid_argument("run_queue: A and S must share a window");
  }
  const std::size_t w = arrivals.size();
  QueuePath path;
  path.contents.reserve(w + 1);
  std::vector<Work> dep(w), unu(w);

  ExtWork x = init.initial_content();
  path.contents.push_back(x);
  for (std::size_t i = 0; i < w; ++i) {
    const Work a = arrivals.values()[i];
    const Work s = services.values()[i];
    Work d;
    if (x.is_infinite()) {
      d = s;  // Lemma-1 regime: every service used, queue stays infinite
    } else {
      const Work held = x.value() + a;
      d = std::min(held, s);
      x = ExtWork(held - d);
    }
    dep[i] = d;
    unu[i] = s - d;
    path.contents.push_back(x);
  }
  path.departures = WorkSequence(arrivals.start(), std::move(dep));
  path.unused = WorkSequence(arrivals.start(), std::move(unu));
  return path;
}

Work queue_length_sup(const WorkSequence& arrivals,
                      const WorkSequence& services, std::int64_t n) {
  if (!arrivals.same_window(services)) {
    throw std::invalid_argument("queue_length_sup: window mismatch");
  }
  if (n < arrivals.start() || n > arrivals.end()) {
    throw std::out_of_range("queue_length_sup: n outside window");
  }
  // X(n) = P(n) - min_{m <= n} P(m) with P the prefix sum of A - S.
  WideSum prefix = 0;
  WideSum min_prefix = 0;
  for (std::int64_t r = arrivals.start(); r < n; ++r) {
    prefix += static_cast<WideSum>(arrivals.at(r)) -
              static_cast<WideSum>(services.at(r));
    min_prefix = std::min(min_prefix, prefix);
  }
  return static_cast<Work>(prefix - min_prefix);
}

std::vector<QueuePath> tandem(const WorkSequence& arrivals,
                              const std::vector<WorkSequence>& services,
                              const std::vector<InitialCondition>& inits) {
  if (services.empty()) {
    throw std::invalid_argument("tandem: no service stages");
  }
  if (inits.size() != services.size()) {
    throw std::invalid_argument("tandem: one init per stage required");
  }
  std::vector<QueuePath> stages;
  stages.reserve(services.size());
  const WorkSequence* in = &arrivals;
  for (std::size_t k = 0; k < services.size(); ++k) {
    stages.push_back(run_queue(*in, services[k], inits[k]));
    in = &stages.back().departures;
  }
  return stages;
}

Work variational_departures(const WorkSequence& arrivals,
                            const WorkSequence& s1, const WorkSequence& s2,
                            std::int64_t t) {
  if (!arrivals.same_window(s1) || !arrivals.same_window(s2)) {
    throw std::invalid_argument("variational_departures: window mismatch");
  }
  if (t < 1 || t > arrivals.end()) {
    throw std::invalid_argument("variational_departures: t outside window");
  }
  if (arrivals.start() > 0) {
    throw std::invalid_argument("variational_departures: window must cover 0");
  }
  for (std::int64_t n = arrivals.start(); n < 0; ++n) {
    if (arrivals.at(n) != 0) {
      throw std::invalid_argument(
          "variational_departures: requires A(n) = 0 for n < 0");
    }
  }

  // prefix sums over [0, k)
  const std::size_t tt = static_cast<std::size_t>(t);
  std::vector<WideSum> pa(tt + 1, 0), p1(tt + 1, 0), p2(tt + 1, 0);
  for (std::size_t k = 0; k < tt; ++k) {
    const std::int64_t slot = static_cast<std::int64_t>(k);
    pa[k + 1] = pa[k] + static_cast<WideSum>(arrivals.at(slot));
    p1[k + 1] = p1[k] + static_cast<WideSum>(s1.at(slot));
    p2[k + 1] = p2[k] + static_cast<WideSum>(s2.at(slot));
  }
  WideSum best = pa[tt];  // u1 = u2 = t
  for (std::size_t u1 = 0; u1 <= tt; ++u1) {
    for (std::size_t u2 = u1; u2 <= tt; ++u2) {
      WideSum v = pa[u1] + (p1[u2] - p1[u1]) + (p2[tt] - p2[u2]);
      best = std::min(best, v);
    }
  }
  return static_cast<Work>(best);
}

WorkSequence truncate_before(const WorkSequence& arrivals, std::int64_t s) {
  WorkSequence out = arrivals;
  for (std::int64_t n = out.start(); n < out.end() && n < -s; ++n) {
    out.at(n) = 0;
  }
  return out;
}

QueuePath saturated_path(const WorkSequence& services) {
  QueuePath path;
  path.contents.assign(services.size() + 1, ExtWork::infinity());
  path.departures = services;
  path.unused = WorkSequence::zeros(services.start(), services.size());
  return path;
}

std::int64_t burn_in_slots(double lambda, double mu) {
  std::int64_t heuristic = 0;
  if (mu > lambda) {
    heuristic = static_cast<std::int64_t>(std::ceil(10.0 / (mu - lambda)));
  }
  return std::max<std::int64_t>(1000, heuristic);
}

}  // namespace mqlab
