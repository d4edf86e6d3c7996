#include "ptree/json_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ptree/errors.hpp"

namespace ptree {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<i64> int_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw validation_error(std::string("expected an integer array under \"") + key + "\"");
  }
  std::vector<i64> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) {
      throw validation_error(std::string("non-integer entry under \"") + key + "\"");
    }
    out.push_back(v.get<i64>());
  }
  return out;
}

}  // namespace

std::string degseq_to_json(const DegreeSequence& s) {
  json j;
  j["counts"] = s.counts();
  return j.dump();
}

DegreeSequence degseq_from_json(const std::string& text) {
  return DegreeSequence::validate(int_array(parse(text), "counts"));
}

DegreeSequence degseq_from_inline(const std::string& text) {
  if (!text.empty() && text.front() == '{') return degseq_from_json(text);
  std::vector<i64> counts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      counts.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw validation_error("cannot parse '" + item + "' as an integer count");
    }
  }
  return DegreeSequence::validate(std::move(counts));
}

std::string tree_to_json(const PlaneTree& t) {
  json j;
  j["child_counts"] = t.child_counts();
  return j.dump();
}

PlaneTree tree_from_json(const std::string& text) {
  return PlaneTree::from_child_counts(int_array(parse(text), "child_counts"));
}

std::string labelled_tree_to_json(const LabelledTree& t) {
  json j;
  j["parents"] = t.parent;
  j["root"] = t.root;
  return j.dump();
}

OffspringDistribution offspring_from_json(const std::string& text) {
  json j = parse(text);
  if (j.contains("family")) {
    std::string family = j.at("family").get<std::string>();
    if (family == "geometric") return OffspringDistribution::geometric_mean_one();
    if (family == "poisson") return OffspringDistribution::poisson_mean_one();
    throw validation_error("unknown offspring family '" + family +
                           "' (expected geometric or poisson)");
  }
  if (j.contains("probabilities")) {
    std::vector<double> probs;
    for (const auto& v : j.at("probabilities")) {
      if (!v.is_number()) throw validation_error("probabilities must be numbers");
      probs.push_back(v.get<double>());
    }
    return OffspringDistribution::from_probabilities(std::move(probs));
  }
  throw validation_error("offspring distribution needs \"family\" or \"probabilities\"");
}

void write_path_csv(std::ostream& out, const LatticePath& path) {
  out << "time,value\n";
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out << k << ',' << path.values[k] << '\n';
  }
}

std::string decomposition_to_json(const Decomposition& d) {
  json j;
  json content = json::array();
  for (const auto& step : d.content.steps) {
    content.push_back(json::array({step.child_count, step.child_index}));
  }
  j["content"] = std::move(content);
  json forest = json::array();
  for (const auto& t : d.forest) {
    forest.push_back(json{{"child_counts", t.child_counts()}});
  }
  j["forest"] = std::move(forest);
  return j.dump();
}

Decomposition decomposition_from_json(const std::string& text) {
  json j = parse(text);
  Decomposition d;
  if (!j.contains("content") || !j.at("content").is_array()) {
    throw validation_error("decomposition needs a \"content\" array");
  }
  for (const auto& step : j.at("content")) {
    if (!step.is_array() || step.size() != 2) {
      throw validation_error("content steps must be [child_count, child_index] pairs");
    }
    d.content.steps.push_back(ContentStep{step[0].get<i64>(), step[1].get<i64>()});
  }
  if (!j.contains("forest") || !j.at("forest").is_array()) {
    throw validation_error("decomposition needs a \"forest\" array");
  }
  for (const auto& tj : j.at("forest")) {
    d.forest.push_back(PlaneTree::from_child_counts(int_array(tj, "child_counts")));
  }
  return d;
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j = parse(text);
  ExperimentConfig config;
  if (!j.contains("families") || !j.at("families").is_array()) {
    throw validation_error("config needs a \"families\" array");
  }
  for (const auto& fj : j.at("families")) {
    FamilySpec spec = FamilySpec::parse(fj.at("name").get<std::string>());
    if (fj.contains("mu")) {
      spec.mu = offspring_from_json(fj.at("mu").dump());
    }
    config.families.push_back(std::move(spec));
  }
  config.sizes = int_array(j, "sizes");
  config.replicas = j.value("replicas", i64{1});
  if (!j.contains("seed")) throw validation_error("config needs an explicit \"seed\"");
  config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("functionals")) {
    for (const auto& fj : j.at("functionals")) {
      config.functionals.push_back(FunctionalSpec::parse(fj.get<std::string>()));
    }
  }
  config.threads = static_cast<int>(j.value("threads", i64{1}));
  config.validate();
  return config;
}

std::string experiment_report_to_json(const ExperimentReport& report) {
  json j;
  json config;
  json families = json::array();
  for (const auto& f : report.config.families) {
    json fj{{"name", f.name}};
    if (f.name == "empirical-gw") fj["mu"] = {{"family", f.mu.name()}};
    families.push_back(std::move(fj));
  }
  config["families"] = std::move(families);
  config["sizes"] = report.config.sizes;
  config["replicas"] = report.config.replicas;
  config["seed"] = report.config.seed;
  json functionals = json::array();
  for (const auto& f : report.config.functionals) functionals.push_back(f.name);
  config["functionals"] = std::move(functionals);
  config["threads"] = report.config.threads;
  j["config"] = std::move(config);

  json results = json::array();
  for (const auto& r : report.results) {
    json rj;
    rj["family"] = r.family;
    rj["requested_size"] = r.requested_size;
    rj["actual_size"] = r.actual_size;
    rj["sigma2_median"] = r.sigma2;
    rj["delta_over_sqrt_n_max"] = r.delta_over_sqrt_n;
    rj["hypothesis_flag"] = r.hypothesis_flag;
    rj["sup_discrepancy_median"] = r.sup_discrepancy_median;
    json fs = json::array();
    for (const auto& f : r.functionals) {
      fs.push_back(json{{"name", f.name},
                        {"mean", f.mean},
                        {"median", f.median},
                        {"q25", f.q25},
                        {"q75", f.q75},
                        {"count", f.sorted_values.size()}});
    }
    rj["functionals"] = std::move(fs);
    results.push_back(std::move(rj));
  }
  j["results"] = std::move(results);

  json ks = json::array();
  for (const auto& entry : report.ks) {
    ks.push_back(json{{"functional", entry.functional},
                      {"family_a", entry.family_a},
                      {"family_b", entry.family_b},
                      {"size", entry.size},
                      {"statistic", entry.report.statistic},
                      {"p_value", entry.report.p_value},
                      {"conclusive", entry.report.conclusive}});
  }
  j["ks"] = std::move(ks);
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
}

}  // namespace ptree
