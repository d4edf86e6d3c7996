#pragma once

#include <iosfwd>
#include <string>

#include "ptree/backbone.hpp"
#include "ptree/coalescent.hpp"
#include "ptree/degree_sequence.hpp"
#include "ptree/limits.hpp"
#include "ptree/plane_tree.hpp"
#include "ptree/sampler.hpp"

namespace ptree {

// Degree sequence: {"counts":[3,1,2]}
std::string degseq_to_json(const DegreeSequence& s);
DegreeSequence degseq_from_json(const std::string& text);

// Also accepts the inline spelling "3,1,2".
DegreeSequence degseq_from_inline(const std::string& text);

// Tree: {"child_counts":[1,5,0,0,1,0,0,2,0,0]}
std::string tree_to_json(const PlaneTree& t);
PlaneTree tree_from_json(const std::string& text);

// Labelled tree: {"parents":[0,1,1],"root":1} (parent 0 marks the root)
std::string labelled_tree_to_json(const LabelledTree& t);

// Offspring distribution: {"probabilities":[0.5,0,0.5]} or {"family":"geometric"}
OffspringDistribution offspring_from_json(const std::string& text);

// Path CSV: header "time,value", one row per integral time.
void write_path_csv(std::ostream& out, const LatticePath& path);

std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const std::string& text);

ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_report_to_json(const ExperimentReport& report);

// Reads a whole file; validation_error when missing/unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ptree
