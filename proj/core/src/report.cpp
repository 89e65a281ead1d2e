#include "mqlab/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mqlab {

void TestReport::add_exact(const std::string& name, bool pass,
                           double statistic, std::int64_t sample_size) {
  Entry e;
  e.kind = Kind::exact;
  e.base.name = name;
  e.base.statistic = statistic;
  e.base.p_value = std::numeric_limits<double>::quiet_NaN();
  e.base.is_exact = true;
  e.base.pass = pass;
  e.base.sample_size = sample_size;
  entries_.push_back(std::move(e));
}

void TestReport::add_pvalue(const std::string& name, double statistic,
                            double dof_or_n, double p_value,
                            std::int64_t sample_size) {
  Entry e;
  e.kind = Kind::pvalue;
  e.base.name = name;
  e.base.statistic = statistic;
  e.base.dof_or_n = dof_or_n;
  e.base.p_value = p_value;
  e.base.sample_size = sample_size;
  entries_.push_back(std::move(e));
}

void TestReport::add_negative_control(const std::string& name,
                                      double statistic, double dof_or_n,
                                      double p_value,
                                      std::int64_t sample_size) {
  Entry e;
  e.kind = Kind::negative_control;
  e.base.name = name;
  e.base.statistic = statistic;
  e.base.dof_or_n = dof_or_n;
  e.base.p_value = p_value;
  e.base.sample_size = sample_size;
  entries_.push_back(std::move(e));
}

std::vector<TestResult> TestReport::resolved() const {
  std::size_t n_stat = 0;
  for (const auto& e : entries_) {
    if (e.kind != Kind::exact) ++n_stat;
  }
  const double threshold =
      n_stat > 0 ? alpha_ / static_cast<double>(n_stat) : alpha_;

  std::vector<TestResult> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    TestResult r = e.base;
    switch (e.kind) {
      case Kind::exact:
        r.threshold = 0.0;
        break;
      case Kind::pvalue:
        r.threshold = threshold;
        r.pass = !(r.p_value < threshold);
        break;
      case Kind::negative_control:
        r.threshold = threshold;
        r.pass = r.p_value < threshold;
        break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool TestReport::overall_pass() const {
  for (const auto& r : resolved()) {
    if (!r.pass) return false;
  }
  return true;
}

void TestReport::merge(const TestReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(),
                  other.entries_.end());
  for (auto it = other.metadata_.begin(); it != other.metadata_.end(); ++it) {
    metadata_[it.key()] = it.value();
  }
}

nlohmann::ordered_json TestReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["title"] = title_;
  j["alpha"] = alpha_;
  j["overall_pass"] = overall_pass();
  auto tests = nlohmann::ordered_json::array();
  for (const auto& r : resolved()) {
    nlohmann::ordered_json t;
    t["name"] = r.name;
    t["statistic"] = r.statistic;
    t["dof_or_n"] = r.dof_or_n;
    if (std::isnan(r.p_value)) {
      t["p_value"] = nullptr;
    } else {
      t["p_value"] = r.p_value;
    }
    t["pass"] = r.pass;
    t["sample_size"] = r.sample_size;
    t["threshold"] = r.threshold;
    tests.push_back(std::move(t));
  }
  j["tests"] = std::move(tests);
  j["metadata"] = metadata_;
  return j;
}

std::string TestReport::summary_lines() const {
  std::ostringstream os;
  for (const auto& r : resolved()) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!std::isnan(r.p_value)) {
      os << "  (stat=" << r.statistic << ", p=" << r.p_value << ")";
    }
    os << "\n";
  }
  return os.str();
}

void TestReport::write_json_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("TestReport: cannot write " + path);
  }
  out << to_json().dump(2) << "\n";
}

}  // namespace mqlab
