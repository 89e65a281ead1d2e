#include "mqlab/interchange.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mqlab/stats.hpp"

namespace mqlab {

Work minplus_pair(const WorkSequence& s1, const WorkSequence& s2,
                  std::int64_t s, std::int64_t t) {
  if (!s1.same_window(s2)) {
    throw std::invalid_argument("minplus_pair: window mismatch");
  }
  if (s > t || s < s1.start() || t > s1.end()) {
    throw std::invalid_argument("minplus_pair: bad range");
  }
  WideSum best = std::numeric_limits<std::int64_t>::max();
  WideSum sum1 = 0;  // sum of S1 over [s, u)
  WideSum sum2 = s2.sum(s, t);
  for (std::int64_t u = s; u <= t; ++u) {
    best = std::min(best, sum1 + sum2);
    if (u < t) {
      sum1 += static_cast<WideSum>(s1.at(u));
      sum2 -= static_cast<WideSum>(s2.at(u));
    }
  }
  return static_cast<Work>(best);
}

nlohmann::ordered_json ReplacementWitness::to_json() const {
  nlohmann::ordered_json j;
  j["holds"] = holds;
  if (!holds) {
    j["s"] = s;
    j["t"] = t;
    j["lhs"] = static_cast<std::uint64_t>(lhs);
    j["rhs"] = static_cast<std::uint64_t>(rhs);
  }
  auto seq = [](const WorkSequence& w) {
    nlohmann::ordered_json o;
    o["start"] = w.start();
    o["values"] = std::vector<std::uint64_t>(w.values().begin(),
                                             w.values().end());
    return o;
  };
  j["s1"] = seq(s1);
  j["s2"] = seq(s2);
  j["s2_tilde"] = seq(s2_tilde);
  return j;
}

ReplacementWitness replacement_invariance_check(const WorkSequence& s1,
                                                const WorkSequence& s2) {
  if (!s1.same_window(s2)) {
    throw std::invalid_argument("replacement_invariance_check: window mismatch");
  }
  ReplacementWitness w;
  w.s1 = s1;
  w.s2 = s2;
  w.s2_tilde = run_queue(s1, s2, InitialCondition::empty()).departures;

  for (std::int64_t s = s1.start(); s <= s1.end(); ++s) {
    // minplus(S1, X, s, t) = C_X(t) + min_{u in [s,t]} (C_S1(u) - C_X(u));
    // running minima over u keep the (s, t) scan quadratic overall
    WideSum run1 = 0;    // C_S1(u) relative to s
    WideSum pre2 = 0;    // C_S2(t) relative to s
    WideSum pre2t = 0;   // C_S2~(t) relative to s
    WideSum min_lhs = 0;
    WideSum min_rhs = 0;
    for (std::int64_t t = s; t <= s1.end(); ++t) {
      const Work lhs = static_cast<Work>(pre2 + min_lhs);
      const Work rhs = static_cast<Work>(pre2t + min_rhs);
      if (lhs != rhs) {
        w.holds = false;
        w.s = s;
        w.t = t;
        w.lhs = lhs;
        w.rhs = rhs;
        return w;
      }
      if (t < s1.end()) {
        run1 += static_cast<WideSum>(s1.at(t));
        pre2 += static_cast<WideSum>(s2.at(t));
        pre2t += static_cast<WideSum>(w.s2_tilde.at(t));
        min_lhs = std::min(min_lhs, run1 - pre2);
        min_rhs = std::min(min_rhs, run1 - pre2t);
      }
    }
  }
  return w;
}

CoupledServicePair make_coupled_pair_bernoulli(const WorkSequence& s1,
                                               const WorkSequence& s2) {
  if (!s1.same_window(s2)) {
    throw std::invalid_argument("make_coupled_pair_bernoulli: window mismatch");
  }
  auto binary = [](const WorkSequence& w) {
    for (Work v : w.values()) {
      if (v > 1) return false;
    }
    return true;
  };
  if (!binary(s1) || !binary(s2)) {
    throw std::invalid_argument(
        "make_coupled_pair_bernoulli: values must be binary");
  }

  CoupledServicePair pair;
  pair.s1 = s1;
  pair.s2 = s2;
  QueuePath q = run_queue(s1, s2, InitialCondition::empty());
  pair.s2_tilde = q.departures;
  std::vector<Work> s1t(s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    s1t[i] = s1.values()[i] + q.unused.values()[i];
  }
  pair.s1_tilde = WorkSequence(s1.start(), std::move(s1t));
  return pair;
}

namespace {

MulticlassWorkSequence as_multiclass(const WorkSequence& w) {
  std::vector<std::vector<Work>> rows;
  rows.emplace_back(w.values().begin(), w.values().end());
  return MulticlassWorkSequence(w.start(), std::move(rows));
}

}  // namespace

TestReport verify_interchangeability(const BerGeomParams& dist1,
                                     const BerGeomParams& dist2,
                                     const ArrivalSource& arrivals,
                                     RngStream& rng,
                                     const InterchangeOptions& opts) {
  if (dist1.family() != dist2.family()) {
    throw std::invalid_argument(
        "verify_interchangeability: service laws must share a family");
  }
  TestReport report("interchangeability", opts.alpha);
  report.set_metadata("dist1", {{"p", dist1.p()}, {"alpha", dist1.alpha()}});
  report.set_metadata("dist2", {{"p", dist2.p()}, {"alpha", dist2.alpha()}});
  report.set_metadata("seed", rng.seed());
  report.set_metadata("replications", opts.replications);

  RngStream rng_a = rng.substream(1);
  RngStream rng_b = rng.substream(2);

  auto window_of = [&](const ArrivalSource& src) -> std::int64_t {
    if (std::holds_alternative<WorkSequence>(src)) {
      return static_cast<std::int64_t>(std::get<WorkSequence>(src).size());
    }
    if (std::holds_alternative<MulticlassWorkSequence>(src)) {
      return static_cast<std::int64_t>(
          std::get<MulticlassWorkSequence>(src).length());
    }
    return opts.window;
  };
  const std::int64_t w = window_of(arrivals);

  auto sample_arrivals = [&](RngStream& r) -> MulticlassWorkSequence {
    if (std::holds_alternative<WorkSequence>(arrivals)) {
      return as_multiclass(std::get<WorkSequence>(arrivals));
    }
    if (std::holds_alternative<MulticlassWorkSequence>(arrivals)) {
      return std::get<MulticlassWorkSequence>(arrivals);
    }
    return as_multiclass(
        sample_bergeom_process(std::get<BerGeomParams>(arrivals), 0,
                               static_cast<std::size_t>(w), r));
  };

  // ordering 1 uses rng_a, ordering 2 an independent stream, so the block
  // comparison sees two independent samples
  auto run_ordering = [&](RngStream& r, bool swapped,
                          std::size_t* num_classes) -> std::vector<int> {
    std::vector<int> labels;
    for (std::int64_t rep = 0; rep < opts.replications; ++rep) {
      MulticlassWorkSequence a = sample_arrivals(r);
      const BerGeomParams& first = swapped ? dist2 : dist1;
      const BerGeomParams& second = swapped ? dist1 : dist2;
      WorkSequence sv1 = sample_bergeom_process(
          first, a.start(), a.length(), r);
      WorkSequence sv2 = sample_bergeom_process(
          second, a.start(), a.length(), r);
      auto stage1 = run_multiclass(
          a, sv1, MulticlassInitialCondition::empty(a.num_classes()));
      auto stage2 = run_multiclass(
          stage1.departures, sv2,
          MulticlassInitialCondition::empty(a.num_classes()));
      auto l = multiclass_slot_labels(stage2.departures, opts.label_cap);
      labels.insert(labels.end(), l.begin(), l.end());
      *num_classes = a.num_classes();
    }
    return labels;
  };

  std::size_t m = 1;
  std::vector<int> out1 = run_ordering(rng_a, false, &m);
  std::vector<int> out2 = run_ordering(rng_b, true, &m);

  auto res = block_law_compare(out1, out2,
                               multiclass_label_alphabet(m, opts.label_cap),
                               opts.block_len);
  report.add_pvalue("tandem_order_block_law", res.statistic, res.dof,
                    res.p_value, res.sample_size);
  return report;
}

double interchange_enumeration_gap(double q1, double q2,
                                   const WorkSequence& arrivals) {
  const std::size_t w = arrivals.size();
  if (w > 16) {
    throw std::invalid_argument("interchange_enumeration_gap: window too long");
  }
  const std::size_t n_outcomes = std::size_t{1} << w;

  auto output_law = [&](double qa, double qb) {
    std::map<std::vector<Work>, double> law;
    for (std::size_t m1 = 0; m1 < n_outcomes; ++m1) {
      double p1 = 1.0;
      std::vector<Work> s1(w);
      for (std::size_t i = 0; i < w; ++i) {
        s1[i] = (m1 >> i) & 1u;
        p1 *= s1[i] ? qa : (1.0 - qa);
      }
      WorkSequence sv1(arrivals.start(), s1);
      for (std::size_t m2 = 0; m2 < n_outcomes; ++m2) {
        double p2 = 1.0;
        std::vector<Work> s2(w);
        for (std::size_t i = 0; i < w; ++i) {
          s2[i] = (m2 >> i) & 1u;
          p2 *= s2[i] ? qb : (1.0 - qb);
        }
        WorkSequence sv2(arrivals.start(), s2);
        auto d1 = run_queue(arrivals, sv1, InitialCondition::empty());
        auto d2 = run_queue(d1.departures, sv2, InitialCondition::empty());
        std::vector<Work> key(d2.departures.values().begin(),
                              d2.departures.values().end());
        law[key] += p1 * p2;
      }
    }
    return law;
  };

  auto law12 = output_law(q1, q2);
  auto law21 = output_law(q2, q1);
  double gap = 0.0;
  for (const auto& [key, p] : law12) {
    auto it = law21.find(key);
    double q = it == law21.end() ? 0.0 : it->second;
    gap = std::max(gap, std::abs(p - q));
  }
  for (const auto& [key, p] : law21) {
    if (law12.find(key) == law12.end()) gap = std::max(gap, p);
  }
  return gap;
}

}  // namespace mqlab
