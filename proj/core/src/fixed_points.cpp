#include "mqlab/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mqlab/queue_kernel.hpp"
#include "mqlab/stats.hpp"

namespace mqlab {

namespace {

constexpr double kIntensityEqTol = 1e-9;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kIntensityEqTol * std::max(std::abs(a), std::abs(b));
}

std::vector<double> capped_pmf(const BerGeomParams& params, Work cap) {
  std::vector<double> probs(static_cast<std::size_t>(cap) + 1);
  double tail = 1.0;
  for (Work k = 0; k < cap; ++k) {
    probs[k] = params.pmf(k);
    tail -= probs[k];
  }
  probs[cap] = std::max(tail, 0.0);
  return probs;
}

}  // namespace

double FixedPointSpec::total_intensity() const {
  return std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
}

void FixedPointSpec::validate() const {
  if (lambdas.empty()) {
    throw std::invalid_argument("FixedPointSpec: need >= 1 class");
  }
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("FixedPointSpec: intensities must be positive");
    }
  }
}

FixedPointSample construct_fixed_point(const FixedPointSpec& spec,
                                       std::int64_t start, std::size_t length,
                                       RngStream& rng, std::int64_t burn_in) {
  spec.validate();
  if (burn_in < 0) {
    double min_gap = *std::min_element(spec.lambdas.begin(), spec.lambdas.end());
    burn_in = burn_in_slots(0.0, min_gap);
  }
  if (length == 0) {
    throw std::invalid_argument("construct_fixed_point: empty window");
  }

  const std::int64_t w0 = start - burn_in;
  const std::size_t full = length + static_cast<std::size_t>(burn_in);

  double sum = spec.lambdas[0];
  RngStream stage_rng = rng.substream(1);
  MulticlassWorkSequence current = [&] {
    WorkSequence f1 = sample_bergeom_process(
        solve_params(sum, spec.family), w0, full, stage_rng);
    std::vector<std::vector<Work>> rows;
    rows.emplace_back(f1.values().begin(), f1.values().end());
    return MulticlassWorkSequence(w0, std::move(rows));
  }();

  for (std::size_t k = 2; k <= spec.num_classes(); ++k) {
    sum += spec.lambdas[k - 1];
    RngStream service_rng = rng.substream(k);
    WorkSequence service = sample_bergeom_process(
        solve_params(sum, spec.family), w0, full, service_rng);
    auto path = run_multiclass(
        current, service, MulticlassInitialCondition::empty(k - 1));
    current = relabel_unused_as_class(path);
  }

  FixedPointSample sample;
  sample.arrivals = current.slice(start, start + static_cast<std::int64_t>(length));
  sample.spec = spec;
  sample.seed = rng.seed();
  sample.stream_id = rng.stream_id();
  sample.burn_in = burn_in;
  return sample;
}

TestReport verify_fixed_point(const FixedPointSpec& spec,
                              const BerGeomParams& server, std::size_t slots,
                              RngStream& rng,
                              const FixedPointVerifyOptions& opts) {
  spec.validate();
  const double total = spec.total_intensity();
  if (server.family() != spec.family) {
    throw std::invalid_argument(
        "verify_fixed_point: server outside the fixed point's family");
  }
  if (server.intensity() < total * (1.0 - kIntensityEqTol)) {
    throw std::invalid_argument(
        "verify_fixed_point: server intensity below total arrival intensity");
  }
  const std::size_t m = spec.num_classes();
  const bool saturated = nearly_equal(server.intensity(), total);

  TestReport report("fixed_point", opts.alpha);
  report.set_metadata("seed", rng.seed());
  report.set_metadata("slots", slots);
  report.set_metadata("lambdas", spec.lambdas);
  report.set_metadata("server", {{"p", server.p()}, {"alpha", server.alpha()}});

  RngStream rng_ref = rng.substream(10);
  RngStream rng_run = rng.substream(11);
  RngStream rng_srv = rng.substream(12);

  const std::int64_t burn =
      saturated ? 0 : burn_in_slots(total, server.intensity());
  FixedPointSample ref = construct_fixed_point(spec, 0, slots, rng_ref);
  FixedPointSample input = construct_fixed_point(
      spec, -burn, slots + static_cast<std::size_t>(burn), rng_run);
  WorkSequence service = sample_bergeom_process(
      server, -burn, slots + static_cast<std::size_t>(burn), rng_srv);

  MulticlassInitialCondition init =
      saturated ? MulticlassInitialCondition::saturated(m)
                : MulticlassInitialCondition::empty(m);
  auto path = run_multiclass(input.arrivals, service, init);
  MulticlassWorkSequence departures =
      path.departures.slice(0, static_cast<std::int64_t>(slots));

  if (saturated) {
    // Claim-2 regime: every service used, combined departures reproduce
    // the service process slot for slot
    bool no_unused = true;
    for (Work u : path.unused.values()) no_unused &= (u == 0);
    report.add_exact("saturated_unused_service_zero", no_unused, 0.0,
                     static_cast<std::int64_t>(slots));
    report.add_exact("saturated_combined_equals_service",
                     departures.combined() ==
                         service.slice(0, static_cast<std::int64_t>(slots)),
                     0.0, static_cast<std::int64_t>(slots));
  }

  // m-type block law: departures against an independent construction
  auto ref_labels = multiclass_slot_labels(ref.arrivals, opts.label_cap);
  auto dep_labels = multiclass_slot_labels(departures, opts.label_cap);
  auto block = block_law_compare(
      ref_labels, dep_labels, multiclass_label_alphabet(m, opts.label_cap),
      opts.block_len);
  report.add_pvalue("arrival_vs_departure_block_law", block.statistic,
                    block.dof, block.p_value, block.sample_size);

  // class-1 marginal of the departures is the family law at lambda_1
  {
    BerGeomParams class1 = solve_params(spec.lambdas[0], spec.family);
    auto labels = capped_labels(departures.class_sequence(1), opts.label_cap);
    std::vector<std::int64_t> counts(
        static_cast<std::size_t>(opts.label_cap) + 1, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    auto gof = chi_square_gof(counts, capped_pmf(class1, opts.label_cap));
    report.add_pvalue("class1_marginal_gof", gof.statistic, gof.dof,
                      gof.p_value, gof.sample_size);
  }

  // combined departures: i.i.d. family law at the total intensity,
  // including lag structure through length-2 blocks
  {
    BerGeomParams combined_law = solve_params(total, spec.family);
    auto labels = capped_labels(departures.combined(), opts.label_cap);
    auto gof = block_iid_gof(labels, capped_pmf(combined_law, opts.label_cap), 2);
    report.add_pvalue("combined_departures_iid_gof", gof.statistic, gof.dof,
                      gof.p_value, gof.sample_size);
  }

  // per-class intensity estimates (reported, not tested)
  nlohmann::ordered_json intensities = nlohmann::ordered_json::array();
  for (std::size_t r = 1; r <= m; ++r) {
    intensities.push_back(
        {{"class", r},
         {"target", spec.lambdas[r - 1]},
         {"departure_estimate",
          empirical_intensity(departures.class_sequence(r))}});
  }
  report.set_metadata("per_class_intensity", intensities);
  return report;
}

TestReport claims_experiment(const FixedPointSpec& spec,
                             const BerGeomParams& mu_server,
                             const BerGeomParams& saturated_server,
                             std::size_t slots, RngStream& rng,
                             const FixedPointVerifyOptions& opts) {
  spec.validate();
  const double total = spec.total_intensity();
  if (mu_server.family() != spec.family ||
      saturated_server.family() != spec.family) {
    throw std::invalid_argument("claims_experiment: family mismatch");
  }
  if (!(mu_server.intensity() > total)) {
    throw std::invalid_argument("claims_experiment: need mu > total intensity");
  }
  if (!nearly_equal(saturated_server.intensity(), total)) {
    throw std::invalid_argument(
        "claims_experiment: saturated server must match total intensity");
  }
  const std::size_t m = spec.num_classes();

  TestReport report("claims", opts.alpha);
  report.set_metadata("seed", rng.seed());
  report.set_metadata("slots", slots);
  report.set_metadata("lambdas", spec.lambdas);

  const std::int64_t burn = burn_in_slots(total, mu_server.intensity());
  const std::size_t ext = slots + static_cast<std::size_t>(burn);
  const std::int64_t t0 = 0;
  const std::int64_t t1 = static_cast<std::int64_t>(slots);

  // ordering 1: F_m -> S_mu -> G -> S_sum -> H
  RngStream rng_a1 = rng.substream(20);
  RngStream rng_s1 = rng.substream(21);
  RngStream rng_s2 = rng.substream(22);
  FixedPointSample a1 = construct_fixed_point(spec, -burn, ext, rng_a1);
  WorkSequence smu = sample_bergeom_process(mu_server, -burn, ext, rng_s1);
  WorkSequence ssum = sample_bergeom_process(saturated_server, -burn, ext,
                                             rng_s2);
  auto g_path = run_multiclass(a1.arrivals, smu,
                               MulticlassInitialCondition::empty(m));
  auto h_path = run_multiclass(g_path.departures, ssum,
                               MulticlassInitialCondition::saturated(m));
  MulticlassWorkSequence g = g_path.departures.slice(t0, t1);
  MulticlassWorkSequence h = h_path.departures.slice(t0, t1);

  // ordering 2: F_m -> S_sum -> J -> S_mu -> K
  RngStream rng_a2 = rng.substream(30);
  RngStream rng_s3 = rng.substream(31);
  RngStream rng_s4 = rng.substream(32);
  FixedPointSample a2 = construct_fixed_point(spec, -burn, ext, rng_a2);
  WorkSequence ssum2 = sample_bergeom_process(saturated_server, -burn, ext,
                                              rng_s3);
  WorkSequence smu2 = sample_bergeom_process(mu_server, -burn, ext, rng_s4);
  auto j_path = run_multiclass(a2.arrivals, ssum2,
                               MulticlassInitialCondition::saturated(m));
  auto k_path = run_multiclass(j_path.departures, smu2,
                               MulticlassInitialCondition::empty(m));
  MulticlassWorkSequence k = k_path.departures.slice(t0, t1);

  // exact saturation structure of the S_sum stages
  {
    bool h_no_unused = true;
    for (Work u : h_path.unused.values()) h_no_unused &= (u == 0);
    bool j_no_unused = true;
    for (Work u : j_path.unused.values()) j_no_unused &= (u == 0);
    report.add_exact("claim2_h_stage_no_unused_service", h_no_unused);
    report.add_exact("claim2_j_stage_no_unused_service", j_no_unused);
    report.add_exact("claim2_h_combined_equals_service",
                     h.combined() == ssum.slice(t0, t1));
    report.add_exact("claim2_j_combined_equals_service",
                     j_path.departures.slice(t0, t1).combined() ==
                         ssum2.slice(t0, t1));
  }

  // Claim 1a: first m-1 classes of G match F_{m-1}
  if (m >= 2) {
    FixedPointSpec sub{spec.family,
                       {spec.lambdas.begin(), spec.lambdas.end() - 1}};
    RngStream rng_sub = rng.substream(40);
    FixedPointSample fsub = construct_fixed_point(sub, 0, slots, rng_sub);
    auto lhs = multiclass_slot_labels(restrict_classes(g, m - 1),
                                      opts.label_cap);
    auto rhs = multiclass_slot_labels(fsub.arrivals, opts.label_cap);
    auto res = block_law_compare(
        lhs, rhs, multiclass_label_alphabet(m - 1, opts.label_cap),
        opts.block_len);
    report.add_pvalue("claim1_g_restriction_matches_lower_fixed_point",
                      res.statistic, res.dof, res.p_value, res.sample_size);
  }

  // Claim 1b: combined process of G is the saturated server's law, i.i.d.
  {
    auto labels = capped_labels(g.combined(), opts.label_cap);
    auto gof = block_iid_gof(labels, capped_pmf(saturated_server, opts.label_cap),
                             2);
    report.add_pvalue("claim1_g_combined_iid_gof", gof.statistic, gof.dof,
                      gof.p_value, gof.sample_size);
  }

  // H, K and a fresh F_m sample share one block law
  {
    RngStream rng_ref = rng.substream(50);
    FixedPointSample ref = construct_fixed_point(spec, 0, slots, rng_ref);
    auto hl = multiclass_slot_labels(h, opts.label_cap);
    auto kl = multiclass_slot_labels(k, opts.label_cap);
    auto rl = multiclass_slot_labels(ref.arrivals, opts.label_cap);
    const int alphabet = multiclass_label_alphabet(m, opts.label_cap);
    auto hk = block_law_compare(hl, kl, alphabet, opts.block_len);
    report.add_pvalue("orderings_h_vs_k_block_law", hk.statistic, hk.dof,
                      hk.p_value, hk.sample_size);
    auto hf = block_law_compare(hl, rl, alphabet, opts.block_len);
    report.add_pvalue("h_vs_fixed_point_block_law", hf.statistic, hf.dof,
                      hf.p_value, hf.sample_size);
    auto kf = block_law_compare(kl, rl, alphabet, opts.block_len);
    report.add_pvalue("k_vs_fixed_point_block_law", kf.statistic, kf.dof,
                      kf.p_value, kf.sample_size);
  }
  return report;
}

}  // namespace mqlab
