// Batch experiment runner: every verification experiment behind one
// binary, with reproducible seeds and machine-readable reports under
// out/<experiment>/<seed>/report.json.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mqlab/bergeom.hpp"
#include "mqlab/continuum.hpp"
#include "mqlab/fixed_points.hpp"
#include "mqlab/interchange.hpp"
#include "mqlab/multiclass.hpp"
#include "mqlab/queue_kernel.hpp"
#include "mqlab/serialize.hpp"
#include "mqlab/stats.hpp"
#include "mqlab/tasep.hpp"

using namespace mqlab;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string out = "out";
  std::uint64_t seed = 12345;
  int threads = 1;
  bool trace = false;
};

fs::path report_dir(const CommonOpts& common, const std::string& experiment) {
  fs::path dir = fs::path(common.out) / experiment /
                 std::to_string(common.seed);
  fs::create_directories(dir);
  return dir;
}

int finish(const CommonOpts& common, const std::string& experiment,
           TestReport& report, const nlohmann::ordered_json& config) {
  report.set_metadata("config", config);
  report.set_metadata("generator", RngStream::generator_name());
  report.set_metadata(
      "timestamp",
      static_cast<std::int64_t>(
          std::chrono::duration_cast<std::chrono::seconds>(
              std::chrono::system_clock::now().time_since_epoch())
              .count()));
  fs::path dir = report_dir(common, experiment);
  report.write_json_file((dir / "report.json").string());
  std::cout << report.summary_lines();
  std::cout << (report.overall_pass() ? "OVERALL PASS" : "OVERALL FAIL")
            << "  (" << (dir / "report.json").string() << ")\n";
  return report.overall_pass() ? 0 : 1;
}

FamilySpec family_from_flags(const std::string& family_name, double c) {
  if (family_name == "bernoulli") return FamilySpec::bernoulli();
  if (family_name == "geometric") return FamilySpec::geometric();
  if (family_name == "interior") return FamilySpec::interior(c);
  throw CLI::ValidationError("--family must be bernoulli|geometric|interior");
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CommonOpts& common, double arrival_p,
                 double arrival_alpha, double service_p, double service_alpha,
                 std::int64_t slots, const std::string& init_kind, Work x0,
                 const std::string& arrivals_csv,
                 const std::string& services_csv) {
  RngStream rng(common.seed, 0);
  RngStream ra = rng.substream(1);
  RngStream rs = rng.substream(2);

  WorkSequence arrivals =
      arrivals_csv.empty()
          ? sample_bergeom_process(BerGeomParams(arrival_p, arrival_alpha), 0,
                                   static_cast<std::size_t>(slots), ra)
          : [&] {
              std::ifstream in(arrivals_csv);
              if (!in) throw std::runtime_error("cannot open " + arrivals_csv);
              return read_work_sequence_csv(in);
            }();
  WorkSequence services =
      services_csv.empty()
          ? sample_bergeom_process(BerGeomParams(service_p, service_alpha),
                                   arrivals.start(), arrivals.size(), rs)
          : [&] {
              std::ifstream in(services_csv);
              if (!in) throw std::runtime_error("cannot open " + services_csv);
              return read_work_sequence_csv(in);
            }();

  InitialCondition init = InitialCondition::empty();
  if (init_kind == "saturated") init = InitialCondition::saturated();
  if (init_kind == "finite") init = InitialCondition::finite(x0);

  QueuePath path = run_queue(arrivals, services, init);

  fs::path dir = report_dir(common, "simulate");
  {
    std::ofstream out(dir / "trace.csv");
    write_trace_csv(out, arrivals, services, path);
  }
  TestReport report("simulate", 1e-3);
  report.add_exact("ran", true, 0.0,
                   static_cast<std::int64_t>(arrivals.size()));
  report.set_metadata("arrival_intensity", empirical_intensity(arrivals));
  report.set_metadata("departure_intensity",
                      empirical_intensity(path.departures));
  report.set_metadata("unused_intensity", empirical_intensity(path.unused));
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"slots", slots},
                                {"init", init_kind},
                                {"arrival_p", arrival_p},
                                {"arrival_alpha", arrival_alpha},
                                {"service_p", service_p},
                                {"service_alpha", service_alpha}};
  return finish(common, "simulate", report, config);
}

// ------------------------------------------------------------ verify-burke

int cmd_verify_burke(const CommonOpts& common, const std::string& family_name,
                     double c, double lambda, double mu, std::int64_t slots,
                     int block_len, Work cap) {
  FamilySpec family = family_from_flags(family_name, c);
  BerGeomParams arrival = solve_params(lambda, family);
  BerGeomParams server = solve_params(mu, family);

  RngStream rng(common.seed, 0);
  const std::int64_t burn = burn_in_slots(lambda, mu);
  RngStream ra = rng.substream(1);
  RngStream rs = rng.substream(2);
  WorkSequence a = sample_bergeom_process(
      arrival, -burn, static_cast<std::size_t>(slots + burn), ra);
  WorkSequence s = sample_bergeom_process(
      server, -burn, static_cast<std::size_t>(slots + burn), rs);
  auto path = run_queue(a, s, InitialCondition::empty());
  WorkSequence aw = a.slice(0, slots);
  WorkSequence dw = path.departures.slice(0, slots);

  TestReport report("verify-burke", 1e-3);
  auto block = block_law_compare(capped_labels(aw, cap),
                                 capped_labels(dw, cap),
                                 static_cast<int>(cap) + 1, block_len);
  report.add_pvalue("arrival_vs_departure_block_law", block.statistic,
                    block.dof, block.p_value, block.sample_size);
  report.merge(reversibility_test(aw, dw, cap, 2, 1e-3));
  report.set_metadata("seed", common.seed);
  report.set_metadata("arrival", {{"p", arrival.p()}, {"alpha", arrival.alpha()}});
  report.set_metadata("server", {{"p", server.p()}, {"alpha", server.alpha()}});
  report.set_metadata("departure_intensity", empirical_intensity(dw));

  nlohmann::ordered_json config{{"seed", common.seed},  {"family", family_name},
                                {"c", c},               {"lambda", lambda},
                                {"mu", mu},             {"slots", slots},
                                {"block_len", block_len}, {"cap", cap}};
  return finish(common, "verify-burke", report, config);
}

// ------------------------------------------------------ verify-fixed-point

int cmd_verify_fixed_point(const CommonOpts& common,
                           const std::string& family_name, double c,
                           const std::vector<double>& lambdas, double mu,
                           std::int64_t slots, int block_len, Work cap,
                           bool skip_claims) {
  FamilySpec family = family_from_flags(family_name, c);
  FixedPointSpec spec{family, lambdas};
  BerGeomParams server = solve_params(mu, family);

  FixedPointVerifyOptions opts;
  opts.block_len = block_len;
  opts.label_cap = cap;

  RngStream rng(common.seed, 0);
  auto report = verify_fixed_point(spec, server,
                                   static_cast<std::size_t>(slots), rng, opts);
  if (!skip_claims && mu > spec.total_intensity()) {
    BerGeomParams saturated = solve_params(spec.total_intensity(), family);
    RngStream rng2(common.seed, 1);
    report.merge(claims_experiment(spec, server, saturated,
                                   static_cast<std::size_t>(slots), rng2,
                                   opts));
  }
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"family", family_name},
                                {"c", c},
                                {"lambdas", lambdas},
                                {"mu", mu},
                                {"slots", slots},
                                {"block_len", block_len},
                                {"cap", cap},
                                {"skip_claims", skip_claims}};
  return finish(common, "verify-fixed-point", report, config);
}

// ------------------------------------------------------- verify-interchange

int cmd_verify_interchange(const CommonOpts& common,
                           const std::string& family_name, double c,
                           double intensity1, double intensity2,
                           std::int64_t replications, std::int64_t window,
                           const std::string& arrivals_csv, double arrival_p,
                           double arrival_alpha, int block_len, Work cap) {
  FamilySpec family = family_from_flags(family_name, c);
  BerGeomParams d1 = solve_params(intensity1, family);
  BerGeomParams d2 = solve_params(intensity2, family);

  ArrivalSource source = BerGeomParams(arrival_p, arrival_alpha);
  if (!arrivals_csv.empty()) {
    std::ifstream in(arrivals_csv);
    if (!in) throw std::runtime_error("cannot open " + arrivals_csv);
    source = read_work_sequence_csv(in);
  }

  InterchangeOptions opts;
  opts.replications = replications;
  opts.window = window;
  opts.block_len = block_len;
  opts.label_cap = cap;

  RngStream rng(common.seed, 0);
  auto report = verify_interchangeability(d1, d2, source, rng, opts);
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"family", family_name},
                                {"c", c},
                                {"intensity1", intensity1},
                                {"intensity2", intensity2},
                                {"replications", replications},
                                {"window", window},
                                {"arrivals_csv", arrivals_csv},
                                {"arrival_p", arrival_p},
                                {"arrival_alpha", arrival_alpha}};
  return finish(common, "verify-interchange", report, config);
}

// ------------------------------------------------------------- oracle-suite

int cmd_oracle_suite(const CommonOpts& common, std::int64_t instances) {
  RngStream rng(common.seed, 0);
  TestReport report("oracle-suite", 1e-3);

  auto random_seq = [](RngStream& r, std::size_t len, Work vmax) {
    std::vector<Work> v(len);
    for (auto& x : v) x = r.next_below(vmax + 1);
    return WorkSequence(0, std::move(v));
  };

  // lemma 3
  {
    RngStream r = rng.substream(1);
    bool ok = true;
    for (std::int64_t i = 0; ok && i < instances; ++i) {
      std::size_t len = 1 + r.next_below(50);
      WorkSequence a = random_seq(r, len, 6);
      WorkSequence s1 = random_seq(r, len, 6);
      WorkSequence s2 = random_seq(r, len, 6);
      std::int64_t t = 1 + static_cast<std::int64_t>(r.next_below(len));
      auto st = tandem(a, {s1, s2}, {InitialCondition::empty(),
                                     InitialCondition::empty()});
      ok = variational_departures(a, s1, s2, t) ==
           static_cast<Work>(st[1].departures.sum(0, t));
    }
    report.add_exact("lemma3_variational_equals_tandem", ok, 0.0, instances);
  }
  // eq-compare, both sides
  {
    RngStream r = rng.substream(2);
    bool ok = true;
    for (std::int64_t i = 0; ok && i < instances; ++i) {
      std::size_t len = 1 + r.next_below(48);
      WorkSequence s1 = random_seq(r, len, 6);
      WorkSequence s2 = random_seq(r, len, 6);
      ok = replacement_invariance_check(s1, s2).holds;
      if (ok) {
        auto q = run_queue(s1, s2, InitialCondition::empty());
        std::vector<Work> s1t(len);
        for (std::size_t j = 0; j < len; ++j) {
          s1t[j] = s1.values()[j] + q.unused.values()[j];
        }
        std::vector<Work> rd(q.departures.values().rbegin(),
                             q.departures.values().rend());
        std::vector<Work> r1(s1t.rbegin(), s1t.rend());
        ok = replacement_invariance_check(WorkSequence(0, std::move(rd)),
                                          WorkSequence(0, std::move(r1)))
                 .holds;
      }
    }
    report.add_exact("eq_compare_replacement_invariance", ok, 0.0, instances);
  }
  // lemma 2
  {
    RngStream r = rng.substream(3);
    bool ok = true;
    const std::int64_t n_tr = std::max<std::int64_t>(1, instances / 10);
    for (std::int64_t i = 0; ok && i < n_tr; ++i) {
      std::size_t len = 24 + r.next_below(26);
      std::int64_t start = -static_cast<std::int64_t>(len / 2);
      WorkSequence a(start, std::vector<Work>(len));
      for (std::int64_t n = a.start(); n < a.end(); ++n) {
        a.at(n) = r.next_below(6);
      }
      WorkSequence s1(start, std::vector<Work>(len));
      WorkSequence s2(start, std::vector<Work>(len));
      for (std::int64_t n = start; n < a.end(); ++n) {
        s1.at(n) = r.next_below(6);
        s2.at(n) = r.next_below(6);
      }
      auto d2_at = [&](const WorkSequence& arr, std::int64_t n) {
        auto st = tandem(arr, {s1, s2}, {InitialCondition::empty(),
                                         InitialCondition::empty()});
        return st[1].departures.at(n);
      };
      std::int64_t probe = a.end() - 1;
      Work full = d2_at(a, probe);
      Work prev = d2_at(truncate_before(a, 0), probe);
      std::int64_t sc = 1;
      while (true) {
        Work cur = d2_at(truncate_before(a, sc), probe);
        if (cur == prev) break;
        prev = cur;
        ++sc;
      }
      ok = d2_at(truncate_before(a, 2 * sc), probe) == prev &&
           d2_at(truncate_before(a, 4 * sc), probe) == prev && prev == full;
    }
    report.add_exact("lemma2_truncation_stabilizes", ok, 0.0, n_tr);
  }
  // bernoulli coupling
  {
    RngStream r = rng.substream(4);
    bool ok = true;
    const std::int64_t pairs = std::max<std::int64_t>(1, instances / 10);
    for (std::int64_t i = 0; ok && i < pairs; ++i) {
      std::size_t len = 8 + r.next_below(57);
      std::vector<Work> v1(len), v2(len);
      for (auto& x : v1) x = r.next_bernoulli(0.4) ? 1 : 0;
      for (auto& x : v2) x = r.next_bernoulli(0.7) ? 1 : 0;
      auto pair = make_coupled_pair_bernoulli(WorkSequence(0, v1),
                                              WorkSequence(0, v2));
      for (int rep = 0; ok && rep < 10; ++rep) {
        WorkSequence a = random_seq(r, len, 3);
        auto d1 = run_queue(a, pair.s1, InitialCondition::empty());
        auto d2 = run_queue(d1.departures, pair.s2, InitialCondition::empty());
        auto e1 = run_queue(a, pair.s1_tilde, InitialCondition::empty());
        auto e2 = run_queue(e1.departures, pair.s2_tilde,
                            InitialCondition::empty());
        ok = d2.departures == e2.departures;
      }
    }
    report.add_exact("bernoulli_coupling_pathwise", ok, 0.0, pairs);
  }
  // multiclass coupling
  {
    RngStream r = rng.substream(5);
    bool ok = true;
    for (std::int64_t i = 0; ok && i < instances; ++i) {
      std::size_t m = 1 + r.next_below(4);
      std::size_t len = 1 + r.next_below(64);
      std::vector<std::vector<Work>> rows(m, std::vector<Work>(len));
      for (auto& row : rows) {
        for (auto& v : row) v = r.next_below(4);
      }
      MulticlassWorkSequence arrivals(0, std::move(rows));
      WorkSequence service = random_seq(r, len, 5);
      auto path = run_multiclass(arrivals, service,
                                 MulticlassInitialCondition::empty(m));
      for (std::size_t rr = 1; ok && rr <= m; ++rr) {
        auto lone = run_queue(arrivals.cumulative(rr), service,
                              InitialCondition::empty());
        ok = path.cumulative_departures(rr) == lone.departures;
      }
    }
    report.add_exact("multiclass_coupling_identity", ok, 0.0, instances);
  }
  // tiny exhaustive interchange
  {
    WorkSequence a(0, {2, 0, 1, 0});
    double gap = interchange_enumeration_gap(0.4, 0.7, a);
    report.add_exact("interchange_enumeration_gap_below_1e-12", gap < 1e-12,
                     gap, 256);
  }

  nlohmann::ordered_json config{{"seed", common.seed},
                                {"instances", instances}};
  return finish(common, "oracle-suite", report, config);
}

// ---------------------------------------------------------------------- mm1

int cmd_mm1(const CommonOpts& common, const std::vector<double>& lambdas,
            double mu, double horizon, double clustering_eps) {
  RngStream rng(common.seed, 0);
  auto report = mm1_verify(lambdas, mu, horizon, rng);

  if (lambdas.size() >= 2 && clustering_eps > 0.0) {
    RngStream rng2(common.seed, 1);
    auto fp = mm1_fixed_point(lambdas, 0.0, horizon, rng2);
    auto est = conditional_intensity_after(
        fp, static_cast<int>(lambdas.size()), clustering_eps);
    double total = 0.0;
    for (double l : lambdas) total += l;
    report.set_metadata("clustering",
                        {{"eps", clustering_eps},
                         {"conditional_rate", est.conditional_rate},
                         {"short_range_target", total},
                         {"marginal_rate", lambdas.back()},
                         {"triggers", est.triggers}});
  }
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"lambdas", lambdas},
                                {"mu", mu},
                                {"horizon", horizon},
                                {"clustering_eps", clustering_eps}};
  return finish(common, "mm1", report, config);
}

// ----------------------------------------------------------------- brownian

int cmd_brownian(const CommonOpts& common, double lambda, double mu, double dt,
                 double horizon, bool two_type, double lambda2,
                 const std::string& service_drift) {
  RngStream rng(common.seed, 0);
  TestReport report("brownian", 1e-3);
  const std::size_t steps = static_cast<std::size_t>(horizon / dt);

  if (two_type) {
    BrownianTwoTypeOptions opts;
    opts.service_drift = service_drift == "paper-text"
                             ? TwoTypeServiceDrift::paper_text
                             : TwoTypeServiceDrift::construction;
    report = brownian_two_type(lambda, lambda2, mu, dt, steps, rng, opts);
  } else {
    RngStream ra = rng.substream(1);
    RngStream rs = rng.substream(2);
    auto a = BrownianGridPath::sample(lambda, 1.0, dt, steps, ra);
    auto s = BrownianGridPath::sample(mu, 1.0, dt, steps, rs);
    RngStream rq = rng.substream(3);
    auto out = brownian_queue(a, s, rq);

    const double gap = mu - lambda;
    std::vector<double> samples;
    const std::size_t spacing =
        std::max<std::size_t>(1, static_cast<std::size_t>(10.0 / gap / dt));
    for (std::size_t k = spacing; k <= steps; k += spacing) {
      samples.push_back(out.queue[k]);
    }
    auto ks = ks_test(samples, [gap](double x) {
      return 1.0 - std::exp(-gap * x);
    });
    report.add_pvalue("queue_marginal_exponential_ks", ks.statistic,
                      static_cast<double>(ks.sample_size), ks.p_value,
                      ks.sample_size);
    double slope = out.unused.values.back() / horizon;
    report.add_exact("unused_slope_within_2pct",
                     std::abs(slope - gap) <= 0.02 * gap, slope);
    if (common.trace) {
      fs::path dir = report_dir(common, "brownian");
      std::ofstream tr(dir / "grid.csv");
      write_brownian_csv(tr, a, s, out);
    }
  }
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"lambda", lambda},
                                {"mu", mu},
                                {"dt", dt},
                                {"horizon", horizon},
                                {"two_type", two_type},
                                {"lambda2", lambda2},
                                {"service_drift", service_drift}};
  return finish(common, "brownian", report, config);
}

// ------------------------------------------------------- tasep-stationarity

int cmd_tasep(const CommonOpts& common, const std::vector<double>& lambdas,
              std::int64_t ring, double run_time, int replications,
              bool negative_control) {
  FixedPointSpec spec{FamilySpec::bernoulli(), lambdas};
  StationarityOptions opts;
  opts.replications = replications;
  opts.negative_control = negative_control;
  opts.threads = common.threads;
  RngStream rng(common.seed, 0);
  auto report = stationarity_check(spec, static_cast<std::size_t>(ring),
                                   run_time, rng, opts);
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"lambdas", lambdas},
                                {"ring", ring},
                                {"time", run_time},
                                {"replications", replications},
                                {"negative_control", negative_control},
                                {"threads", common.threads}};
  return finish(common, "tasep-stationarity", report, config);
}

// ------------------------------------------------------------------- labels

int cmd_labels(const CommonOpts& common, int num_classes, std::int64_t slots,
               int max_lag) {
  RngStream rng(common.seed, 0);
  auto labels = finite_label_process(num_classes,
                                     static_cast<std::size_t>(slots), rng);
  auto stats = repeat_statistics(labels, max_lag);

  TestReport report("labels", 1e-3);
  double exact1 = label_match_probability_exact(num_classes);
  report.add_exact("lag0_matches_everywhere",
                   stats[0].frequency == 1.0, stats[0].frequency);
  if (stats.size() > 1) {
    double se = std::sqrt(exact1 * (1.0 - exact1) /
                          static_cast<double>(stats[1].pairs));
    report.add_exact("lag1_matches_exact_enumeration",
                     std::abs(stats[1].frequency - exact1) < 5.0 * se,
                     stats[1].frequency);
  }
  bool all_positive = true;
  nlohmann::ordered_json lag_json = nlohmann::ordered_json::array();
  for (const auto& lm : stats) {
    all_positive &= (lm.frequency - lm.ci_halfwidth > 0.0);
    lag_json.push_back({{"lag", lm.lag},
                        {"frequency", lm.frequency},
                        {"ci_halfwidth", lm.ci_halfwidth}});
  }
  report.add_exact("all_lags_have_positive_match_frequency", all_positive);
  report.set_metadata("lag_statistics", lag_json);
  report.set_metadata("exact_lag1_value", exact1);

  if (common.trace) {
    fs::path dir = report_dir(common, "labels");
    std::ofstream out(dir / "labels.csv");
    write_csv(out, labels);
  }
  nlohmann::ordered_json config{{"seed", common.seed},
                                {"m", num_classes},
                                {"slots", slots},
                                {"max_lag", max_lag}};
  return finish(common, "labels", report, config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-class batch queue laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "", "declarative experiment config (INI)");

  CommonOpts common;
  app.add_option("--out", common.out, "output directory root")
      ->capture_default_str();
  app.add_option("--seed", common.seed, "base RNG seed")
      ->envname("MQLAB_SEED")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads")
      ->capture_default_str();
  app.add_flag("--trace", common.trace, "write trace CSVs");

  // simulate
  double sim_ap = 0.2, sim_aa = 0.4, sim_sp = 0.5, sim_sa = 0.5;
  std::int64_t sim_slots = 10000;
  std::string sim_init = "empty";
  Work sim_x0 = 0;
  std::string sim_arr_csv, sim_svc_csv;
  auto* simulate = app.add_subcommand("simulate", "run one batch queue");
  simulate->add_option("--arrival-p", sim_ap);
  simulate->add_option("--arrival-alpha", sim_aa);
  simulate->add_option("--service-p", sim_sp);
  simulate->add_option("--service-alpha", sim_sa);
  simulate->add_option("--slots", sim_slots);
  simulate->add_option("--init", sim_init)
      ->check(CLI::IsMember({"empty", "finite", "saturated"}));
  simulate->add_option("--x0", sim_x0);
  simulate->add_option("--arrivals-csv", sim_arr_csv);
  simulate->add_option("--services-csv", sim_svc_csv);

  // verify-burke
  std::string bk_family = "interior";
  double bk_c = 1.0 / 6.0, bk_lambda = 0.5, bk_mu = 0.8;
  std::int64_t bk_slots = 1000000;
  int bk_block = 3;
  Work bk_cap = 3;
  auto* burke = app.add_subcommand(
      "verify-burke", "one-type fixed point and reversibility");
  burke->add_option("--family", bk_family);
  burke->add_option("--c", bk_c);
  burke->add_option("--lambda", bk_lambda)->required();
  burke->add_option("--mu", bk_mu)->required();
  burke->add_option("--slots", bk_slots);
  burke->add_option("--block-len", bk_block);
  burke->add_option("--cap", bk_cap);

  // verify-fixed-point
  std::string fp_family = "bernoulli";
  double fp_c = 1.0;
  std::vector<double> fp_lambdas;
  double fp_mu = 0.6;
  std::int64_t fp_slots = 1000000;
  int fp_block = 3;
  Work fp_cap = 3;
  bool fp_skip_claims = false;
  auto* fixed = app.add_subcommand("verify-fixed-point",
                                   "multi-type fixed point with claims");
  fixed->add_option("--family", fp_family);
  fixed->add_option("--c", fp_c);
  fixed->add_option("--lambdas", fp_lambdas)->required()->delimiter(',');
  fixed->add_option("--mu", fp_mu)->required();
  fixed->add_option("--slots", fp_slots);
  fixed->add_option("--block-len", fp_block);
  fixed->add_option("--cap", fp_cap);
  fixed->add_flag("--skip-claims", fp_skip_claims);

  // verify-interchange
  std::string ic_family = "bernoulli";
  double ic_c = 1.0, ic_i1 = 0.4, ic_i2 = 0.7;
  std::int64_t ic_reps = 1000, ic_window = 64;
  std::string ic_arr_csv;
  double ic_ap = 0.2, ic_aa = 0.5;
  int ic_block = 3;
  Work ic_cap = 3;
  auto* inter = app.add_subcommand("verify-interchange",
                                   "tandem order invariance");
  inter->add_option("--family", ic_family);
  inter->add_option("--c", ic_c);
  inter->add_option("--intensity1", ic_i1)->required();
  inter->add_option("--intensity2", ic_i2)->required();
  inter->add_option("--replications", ic_reps);
  inter->add_option("--window", ic_window);
  inter->add_option("--arrivals-csv", ic_arr_csv);
  inter->add_option("--arrival-p", ic_ap);
  inter->add_option("--arrival-alpha", ic_aa);
  inter->add_option("--block-len", ic_block);
  inter->add_option("--cap", ic_cap);

  // oracle-suite
  std::int64_t or_instances = 10000;
  auto* oracle = app.add_subcommand("oracle-suite",
                                    "exact lemma batteries");
  oracle->add_option("--instances", or_instances);

  // mm1
  std::vector<double> mm_lambdas;
  double mm_mu = 1.0, mm_horizon = 100000.0, mm_eps = 0.01;
  auto* mm1 = app.add_subcommand("mm1", "continuous-time fixed point");
  mm1->add_option("--lambdas", mm_lambdas)->required()->delimiter(',');
  mm1->add_option("--mu", mm_mu)->required();
  mm1->add_option("--horizon", mm_horizon);
  mm1->add_option("--clustering-eps", mm_eps);

  // brownian
  double br_lambda = 0.0, br_mu = 1.0, br_dt = 1e-3, br_horizon = 10000.0;
  bool br_two_type = false;
  double br_lambda2 = 0.3;
  std::string br_drift = "construction";
  auto* brownian = app.add_subcommand("brownian", "grid Brownian queue");
  brownian->add_option("--lambda", br_lambda);
  brownian->add_option("--mu", br_mu);
  brownian->add_option("--dt", br_dt);
  brownian->add_option("--horizon", br_horizon);
  brownian->add_flag("--two-type", br_two_type);
  brownian->add_option("--lambda2", br_lambda2);
  brownian->add_option("--service-drift", br_drift)
      ->check(CLI::IsMember({"construction", "paper-text"}));

  // tasep-stationarity
  std::vector<double> ts_lambdas;
  std::int64_t ts_ring = 1000;
  double ts_time = 1000.0;
  int ts_reps = 50;
  bool ts_negative = false;
  auto* tasep = app.add_subcommand("tasep-stationarity",
                                   "ring exclusion process drift check");
  tasep->add_option("--lambdas", ts_lambdas)->required()->delimiter(',');
  tasep->add_option("--ring", ts_ring);
  tasep->add_option("--time", ts_time);
  tasep->add_option("--replications", ts_reps);
  tasep->add_flag("--negative-control", ts_negative);

  // labels
  int lb_m = 12;
  std::int64_t lb_slots = 1000000;
  int lb_max_lag = 8;
  auto* labels = app.add_subcommand("labels",
                                    "continuous-label clustering statistics");
  labels->add_option("--m", lb_m);
  labels->add_option("--slots", lb_slots);
  labels->add_option("--max-lag", lb_max_lag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*simulate) {
      return cmd_simulate(common, sim_ap, sim_aa, sim_sp, sim_sa, sim_slots,
                          sim_init, sim_x0, sim_arr_csv, sim_svc_csv);
    }
    if (*burke) {
      return cmd_verify_burke(common, bk_family, bk_c, bk_lambda, bk_mu,
                              bk_slots, bk_block, bk_cap);
    }
    if (*fixed) {
      return cmd_verify_fixed_point(common, fp_family, fp_c, fp_lambdas,
                                    fp_mu, fp_slots, fp_block, fp_cap,
                                    fp_skip_claims);
    }
    if (*inter) {
      return cmd_verify_interchange(common, ic_family, ic_c, ic_i1, ic_i2,
                                    ic_reps, ic_window, ic_arr_csv, ic_ap,
                                    ic_aa, ic_block, ic_cap);
    }
    if (*oracle) return cmd_oracle_suite(common, or_instances);
    if (*mm1) return cmd_mm1(common, mm_lambdas, mm_mu, mm_horizon, mm_eps);
    if (*brownian) {
      return cmd_brownian(common, br_lambda, br_mu, br_dt, br_horizon,
                          br_two_type, br_lambda2, br_drift);
    }
    if (*tasep) {
      return cmd_tasep(common, ts_lambdas, ts_ring, ts_time, ts_reps,
                       ts_negative);
    }
    if (*labels) return cmd_labels(common, lb_m, lb_slots, lb_max_lag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
