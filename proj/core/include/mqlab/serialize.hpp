#pragma once

#include <iosfwd>
#include <string>

#include "mqlab/continuum.hpp"
#include "mqlab/multiclass.hpp"
#include "mqlab/queue_kernel.hpp"
#include "mqlab/tasep.hpp"
#include "mqlab/work_sequence.hpp"

namespace mqlab {

// CSV with header "slot,value"
void write_csv(std::ostream& out, const WorkSequence& seq);
WorkSequence read_work_sequence_csv(std::istream& in);

// {"start": n, "values": [...]}
nlohmann::ordered_json to_json(const WorkSequence& seq);
WorkSequence work_sequence_from_json(const nlohmann::json& j);

// CSV with header "slot,class_1,...,class_m,unused"; the unused column
// is zero unless a path's unused sequence is supplied
void write_csv(std::ostream& out, const MulticlassWorkSequence& seq);
void write_csv(std::ostream& out, const MulticlassWorkSequence& departures,
               const WorkSequence& unused);
MulticlassWorkSequence read_multiclass_csv(std::istream& in);

// full single-class trajectory: "slot,arrival,service,content,departure,unused"
void write_trace_csv(std::ostream& out, const WorkSequence& arrivals,
                     const WorkSequence& services, const QueuePath& path);

// events as "time,class"
void write_csv(std::ostream& out, const MarkedPointProcess& mpp);

// grids as "step,A,S,Q,D,U"
void write_brownian_csv(std::ostream& out, const BrownianGridPath& arrivals,
                        const BrownianGridPath& services,
                        const BrownianQueueOutput& queue_out);

// one row of site values
void write_csv(std::ostream& out, const TasepConfig& config);

// "slot,label"
void write_csv(std::ostream& out, const LabelSequence& labels);

void write_file(const std::string& path, const std::string& contents);

}  // namespace mqlab
