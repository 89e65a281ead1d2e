#include "mqlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mqlab {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 800;

double gamma_p_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_contfrac(double s, double x) {
  // modified Lentz
  double b = x + 1.0 - s;
  double c = 1.0 / 1e-300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double regularized_gamma_q(double s, double x) {
  if (!(s > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need s > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
  return gamma_q_contfrac(s, x);
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.3) {
    // complement of the theta-function expansion, accurate at small lambda
    const double pi = 3.14159265358979323846;
    double sum = 0.0;
    for (int j = 1; j <= 20; ++j) {
      double e = (2.0 * j - 1.0) * (2.0 * j - 1.0) * pi * pi /
                 (8.0 * lambda * lambda);
      sum += std::exp(-e);
    }
    double cdf = std::sqrt(2.0 * pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  double q = 2.0 * sum;
  return std::clamp(q, 0.0, 1.0);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

GofResult chi_square_gof(std::span<const std::int64_t> counts,
                         std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  const double n = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
  if (n <= 0) throw std::invalid_argument("chi_square_gof: empty sample");
  double psum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(psum > 0.0)) {
    throw std::invalid_argument("chi_square_gof: probabilities sum to zero");
  }

  // merge tail cells until the tail expected count reaches 5, then fold
  // any remaining small cell into the tail as well
  std::vector<double> expected;
  std::vector<double> observed;
  double tail_exp = 0.0;
  double tail_obs = 0.0;
  std::size_t cut = counts.size();
  while (cut > 0) {
    double e = n * probs[cut - 1] / psum;
    if (tail_exp + e >= 5.0 && tail_exp > 0.0) break;
    if (e >= 5.0 && tail_exp == 0.0) break;
    tail_exp += e;
    tail_obs += static_cast<double>(counts[cut - 1]);
    --cut;
  }
  for (std::size_t i = 0; i < cut; ++i) {
    double e = n * probs[i] / psum;
    double o = static_cast<double>(counts[i]);
    if (e < 5.0) {
      tail_exp += e;
      tail_obs += o;
    } else {
      expected.push_back(e);
      observed.push_back(o);
    }
  }
  if (tail_exp > 0.0) {
    expected.push_back(tail_exp);
    observed.push_back(tail_obs);
  }
  if (expected.size() < 2) {
    throw std::invalid_argument("chi_square_gof: degenerate single-cell input");
  }

  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  double dof = static_cast<double>(expected.size() - 1);
  return {stat, dof, chi_square_sf(stat, dof),
          static_cast<std::int64_t>(n)};
}

namespace {

std::map<std::uint64_t, std::int64_t> block_counts(std::span<const int> xs,
                                                   int alphabet,
                                                   int block_len) {
  std::map<std::uint64_t, std::int64_t> counts;
  const std::size_t nblocks = xs.size() / static_cast<std::size_t>(block_len);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::uint64_t code = 0;
    for (int k = 0; k < block_len; ++k) {
      int label = xs[b * block_len + k];
      if (label < 0 || label >= alphabet) {
        throw std::invalid_argument("block_counts: label outside alphabet");
      }
      code = code * static_cast<std::uint64_t>(alphabet) +
             static_cast<std::uint64_t>(label);
    }
    ++counts[code];
  }
  return counts;
}

}  // namespace

GofResult block_law_compare(std::span<const int> xs, std::span<const int> ys,
                            int alphabet, int block_len) {
  if (alphabet < 2 || block_len < 1) {
    throw std::invalid_argument("block_law_compare: bad alphabet/block");
  }
  auto cx = block_counts(xs, alphabet, block_len);
  auto cy = block_counts(ys, alphabet, block_len);
  const double n1 = static_cast<double>(xs.size() / block_len);
  const double n2 = static_cast<double>(ys.size() / block_len);
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("block_law_compare: sequences shorter than a block");
  }

  struct Cell {
    std::uint64_t code;
    double o1, o2;
  };
  std::vector<Cell> cells;
  for (const auto& [code, c] : cx) {
    auto it = cy.find(code);
    cells.push_back({code, static_cast<double>(c),
                     it == cy.end() ? 0.0 : static_cast<double>(it->second)});
  }
  for (const auto& [code, c] : cy) {
    if (cx.find(code) == cx.end()) {
      cells.push_back({code, 0.0, static_cast<double>(c)});
    }
  }
  // deterministic order: combined count descending, code ascending
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    double ta = a.o1 + a.o2, tb = b.o1 + b.o2;
    if (ta != tb) return ta > tb;
    return a.code < b.code;
  });

  // pool the tail so both sides keep expected >= 5 in every cell
  const double total = n1 + n2;
  const double need = 5.0 * total / std::min(n1, n2);
  std::vector<std::pair<double, double>> kept;
  double pool1 = 0.0, pool2 = 0.0, poolc = 0.0;
  for (const auto& cell : cells) {
    double c = cell.o1 + cell.o2;
    if (c >= need) {
      kept.emplace_back(cell.o1, cell.o2);
    } else {
      pool1 += cell.o1;
      pool2 += cell.o2;
      poolc += c;
    }
  }
  if (poolc > 0.0) {
    if (poolc >= need) {
      kept.emplace_back(pool1, pool2);
    } else if (!kept.empty()) {
      kept.back().first += pool1;
      kept.back().second += pool2;
    }
  }
  if (kept.size() < 2) {
    // both laws concentrated on one block: identical by construction
    return {0.0, 0.0, 1.0, static_cast<std::int64_t>(n1 + n2)};
  }

  double stat = 0.0;
  for (const auto& [o1, o2] : kept) {
    double c = o1 + o2;
    double e1 = n1 * c / total;
    double e2 = n2 * c / total;
    stat += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
  }
  double dof = static_cast<double>(kept.size() - 1);
  return {stat, dof, chi_square_sf(stat, dof),
          static_cast<std::int64_t>(n1 + n2)};
}

GofResult block_iid_gof(std::span<const int> xs,
                        std::span<const double> slot_probs, int block_len) {
  const int alphabet = static_cast<int>(slot_probs.size());
  auto cx = block_counts(xs, alphabet, block_len);
  const double n = static_cast<double>(xs.size() / block_len);

  // enumerate all blocks of the product law
  std::uint64_t ncells = 1;
  for (int k = 0; k < block_len; ++k) {
    ncells *= static_cast<std::uint64_t>(alphabet);
  }
  if (ncells > (1u << 22)) {
    throw std::invalid_argument("block_iid_gof: alphabet^block too large");
  }
  std::vector<std::int64_t> counts(ncells, 0);
  std::vector<double> probs(ncells, 0.0);
  for (std::uint64_t code = 0; code < ncells; ++code) {
    double p = 1.0;
    std::uint64_t c = code;
    for (int k = 0; k < block_len; ++k) {
      p *= slot_probs[c % alphabet];
      c /= alphabet;
    }
    probs[code] = p;
    auto it = cx.find(code);
    counts[code] = it == cx.end() ? 0 : it->second;
  }
  // order cells by probability descending so tail pooling is meaningful
  std::vector<std::size_t> order(ncells);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  std::vector<std::int64_t> oc(ncells);
  std::vector<double> op(ncells);
  for (std::size_t i = 0; i < ncells; ++i) {
    oc[i] = counts[order[i]];
    op[i] = probs[order[i]];
  }
  (void)n;
  return chi_square_gof(oc, op);
}

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf) {
  if (samples.size() < 10) {
    throw std::invalid_argument("ks_test: need n >= 10");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  double sq = std::sqrt(n);
  double lambda = (sq + 0.12 + 0.11 / sq) * d;
  return {d, kolmogorov_sf(lambda),
          static_cast<std::int64_t>(samples.size())};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_test_two_sample: empty input");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  double lambda = (ne + 0.12 + 0.11 / ne) * d;
  return {d, kolmogorov_sf(lambda),
          static_cast<std::int64_t>(a.size() + b.size())};
}

std::vector<int> capped_labels(const WorkSequence& seq, Work cap) {
  std::vector<int> out;
  out.reserve(seq.size());
  for (Work v : seq.values()) {
    out.push_back(static_cast<int>(std::min(v, cap)));
  }
  return out;
}

double empirical_intensity(const WorkSequence& seq) {
  if (seq.empty()) return 0.0;
  return static_cast<double>(seq.total()) / static_cast<double>(seq.size());
}

TestReport reversibility_test(const WorkSequence& arrivals,
                              const WorkSequence& departures, Work cap,
                              int block_len, double alpha) {
  if (!arrivals.same_window(departures)) {
    throw std::invalid_argument("reversibility_test: window mismatch");
  }
  TestReport report("reversibility", alpha);
  const int k = static_cast<int>(cap) + 1;
  const std::size_t w = arrivals.size();
  const std::size_t half = w / 2;

  // forward pairs (A(n), D(n)) from the first half, reversed swapped
  // pairs (D(-n), A(-n)) from the second half; disjoint data keeps the
  // two-sample chi-square honest
  std::vector<int> fwd, rev;
  fwd.reserve(half);
  rev.reserve(w - half);
  auto av = arrivals.values();
  auto dv = departures.values();
  for (std::size_t i = 0; i < half; ++i) {
    int a = static_cast<int>(std::min<Work>(av[i], cap));
    int d = static_cast<int>(std::min<Work>(dv[i], cap));
    fwd.push_back(a * k + d);
  }
  for (std::size_t i = w; i > half; --i) {
    int a = static_cast<int>(std::min<Work>(av[i - 1], cap));
    int d = static_cast<int>(std::min<Work>(dv[i - 1], cap));
    rev.push_back(d * k + a);
  }
  auto res = block_law_compare(fwd, rev, k * k, block_len);
  report.add_pvalue("reversed_swapped_pair_block_law", res.statistic, res.dof,
                    res.p_value, res.sample_size);
  return report;
}

}  // namespace mqlab
