#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace mqlab {

/// One entry of a verification report. Statistical tests carry a p-value
/// and are judged against the Bonferroni-corrected threshold; exact
/// checks carry pass/fail directly (p_value is NaN).
struct TestResult {
  std::string name;
  double statistic = 0.0;
  double dof_or_n = 0.0;
  double p_value = 0.0;
  bool is_exact = false;
  bool pass = false;
  std::int64_t sample_size = 0;
  double threshold = 0.0;  // per-test alpha after correction; 0 for exact
};

/// Battery of named checks with shared significance level. Overall pass
/// requires every sub-test to pass after Bonferroni correction across
/// the report's p-value tests.
class TestReport {
 public:
  TestReport() = default;
  explicit TestReport(std::string title, double alpha = 1e-3)
      : title_(std::move(title)), alpha_(alpha) {}

  const std::string& title() const { return title_; }
  double alpha() const { return alpha_; }

  void add_exact(const std::string& name, bool pass, double statistic = 0.0,
                 std::int64_t sample_size = 0);
  void add_pvalue(const std::string& name, double statistic, double dof_or_n,
                  double p_value, std::int64_t sample_size);
  /// A check that must reject its (false) null: passes when p < threshold.
  void add_negative_control(const std::string& name, double statistic,
                            double dof_or_n, double p_value,
                            std::int64_t sample_size);

  void set_metadata(const std::string& key, nlohmann::ordered_json value) {
    metadata_[key] = std::move(value);
  }

  /// Tests with thresholds and pass flags resolved.
  std::vector<TestResult> resolved() const;

  bool overall_pass() const;
  std::size_t size() const { return entries_.size(); }

  void merge(const TestReport& other);

  nlohmann::ordered_json to_json() const;
  std::string summary_lines() const;
  void write_json_file(const std::string& path) const;

 private:
  enum class Kind { exact, pvalue, negative_control };
  struct Entry {
    Kind kind;
    TestResult base;
  };

  std::string title_;
  double alpha_ = 1e-3;
  std::vector<Entry> entries_;
  nlohmann::ordered_json metadata_ = nlohmann::ordered_json::object();
};

}  // namespace mqlab
