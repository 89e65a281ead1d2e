#include "mqlab/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mqlab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

}  // namespace

void write_csv(std::ostream& out, const WorkSequence& seq) {
  out << "slot,value\n";
  for (std::int64_t n = seq.start(); n < seq.end(); ++n) {
    out << n << "," << seq.at(n) << "\n";
  }
}

WorkSequence read_work_sequence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("read_work_sequence_csv: empty input");
  }
  bool have_start = false;
  std::int64_t start = 0;
  std::int64_t expected = 0;
  std::vector<Work> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto parts = split_csv_line(line);
    if (parts.size() != 2) {
      throw std::invalid_argument("read_work_sequence_csv: bad row: " + line);
    }
    std::int64_t slot = std::stoll(parts[0]);
    if (!have_start) {
      start = slot;
      expected = slot;
      have_start = true;
    }
    if (slot != expected) {
      throw std::invalid_argument("read_work_sequence_csv: slots must be "
                                  "consecutive");
    }
    ++expected;
    values.push_back(static_cast<Work>(std::stoull(parts[1])));
  }
  return WorkSequence(start, std::move(values));
}

nlohmann::ordered_json to_json(const WorkSequence& seq) {
  nlohmann::ordered_json j;
  j["start"] = seq.start();
  j["values"] = std::vector<std::uint64_t>(seq.values().begin(),
                                           seq.values().end());
  return j;
}

WorkSequence work_sequence_from_json(const nlohmann::json& j) {
  std::int64_t start = j.at("start").get<std::int64_t>();
  std::vector<Work> values = j.at("values").get<std::vector<Work>>();
  return WorkSequence(start, std::move(values));
}

void write_csv(std::ostream& out, const MulticlassWorkSequence& seq) {
  write_csv(out, seq, WorkSequence::zeros(seq.start(), seq.length()));
}

void write_csv(std::ostream& out, const MulticlassWorkSequence& departures,
               const WorkSequence& unused) {
  out << "slot";
  for (std::size_t c = 1; c <= departures.num_classes(); ++c) {
    out << ",class_" << c;
  }
  out << ",unused\n";
  for (std::int64_t n = departures.start(); n < departures.end(); ++n) {
    out << n;
    for (std::size_t c = 1; c <= departures.num_classes(); ++c) {
      out << "," << departures.at(c, n);
    }
    out << "," << unused.at(n) << "\n";
  }
}

MulticlassWorkSequence read_multiclass_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("read_multiclass_csv: empty input");
  }
  auto header = split_csv_line(line);
  if (header.size() < 3 || header.back() != "unused") {
    throw std::invalid_argument("read_multiclass_csv: bad header");
  }
  const std::size_t m = header.size() - 2;
  bool have_start = false;
  std::int64_t start = 0;
  std::vector<std::vector<Work>> rows(m);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto parts = split_csv_line(line);
    if (parts.size() != header.size()) {
      throw std::invalid_argument("read_multiclass_csv: bad row: " + line);
    }
    if (!have_start) {
      start = std::stoll(parts[0]);
      have_start = true;
    }
    for (std::size_t c = 0; c < m; ++c) {
      rows[c].push_back(static_cast<Work>(std::stoull(parts[c + 1])));
    }
  }
  return MulticlassWorkSequence(start, std::move(rows));
}

void write_trace_csv(std::ostream& out, const WorkSequence& arrivals,
                     const WorkSequence& services, const QueuePath& path) {
  out << "slot,arrival,service,content,departure,unused\n";
  for (std::int64_t n = arrivals.start(); n < arrivals.end(); ++n) {
    out << n << "," << arrivals.at(n) << "," << services.at(n) << ",";
    ExtWork x = path.content_at(n);
    if (x.is_infinite()) {
      out << "inf";
    } else {
      out << x.value();
    }
    out << "," << path.departures.at(n) << "," << path.unused.at(n) << "\n";
  }
}

void write_csv(std::ostream& out, const MarkedPointProcess& mpp) {
  out << "time,class\n";
  out << std::setprecision(17);
  for (const auto& e : mpp.events()) {
    out << e.time << "," << e.cls << "\n";
  }
}

void write_brownian_csv(std::ostream& out, const BrownianGridPath& arrivals,
                        const BrownianGridPath& services,
                        const BrownianQueueOutput& queue_out) {
  out << "step,A,S,Q,D,U\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < arrivals.values.size(); ++k) {
    out << k << "," << arrivals.values[k] << "," << services.values[k] << ","
        << queue_out.queue[k] << "," << queue_out.departures.values[k] << ","
        << queue_out.unused.values[k] << "\n";
  }
}

void write_csv(std::ostream& out, const TasepConfig& config) {
  for (std::size_t i = 0; i < config.ring_length(); ++i) {
    if (i) out << ",";
    out << config.site(i);
  }
  out << "\n";
}

void write_csv(std::ostream& out, const LabelSequence& labels) {
  out << "slot,label\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    out << i << "," << labels.labels[i] << "\n";
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_file: cannot open " + path);
  }
  out << contents;
}

}  // namespace mqlab
