#include "qmut/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmut {

DetectionScores confusion_and_scores(const std::vector<DetectionRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no detection records");
  DetectionScores s;
  for (const DetectionRecord& r : records) {
    if (r.truly_nonequivalent)
      r.detected ? ++s.confusion.tp : ++s.confusion.fn;
    else
      r.detected ? ++s.confusion.fp : ++s.confusion.tn;
  }
  const auto& c = s.confusion;
  s.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp > 0)
    s.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  else
    s.degenerate = true;
  if (c.tp + c.fn > 0)
    s.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  else
    s.degenerate = true;
  if (s.precision + s.recall > 0.0)
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  else
    s.degenerate = true;
  return s;
}

const std::vector<std::string> kAllCharacteristicVariables = {
    "n_qubits", "n_gates", "depth", "relative_position",
    "gate_type", "input_type", "output_type",
    "algorithm", "operator"};

namespace {

double segment_rank(const std::string& segment) {
  if (segment == "beginning") return 1.0;
  if (segment == "pre_middle") return 2.0;
  if (segment == "middle") return 3.0;
  if (segment == "post_middle") return 4.0;
  if (segment == "end") return 5.0;
  throw std::invalid_argument("unknown segment: " + segment);
}

const CircuitFacts& facts_of(const std::map<std::string, CircuitFacts>& facts,
                             const std::string& circuit_id) {
  const auto it = facts.find(circuit_id);
  if (it == facts.end())
    throw std::invalid_argument("no circuit facts for " + circuit_id);
  return it->second;
}

}  // namespace

StatResult correlate_one(const std::vector<DistanceRecord>& distances,
                         const std::map<std::string, CircuitFacts>& facts,
                         const std::string& variable) {
  if (distances.empty()) throw std::invalid_argument("empty distance table");

  // Quantitative: Pearson on (variable, value).
  if (variable == "n_qubits" || variable == "n_gates" || variable == "depth" ||
      variable == "relative_position") {
    std::vector<double> x, y;
    for (const DistanceRecord& r : distances) {
      double v = 0.0;
      if (variable == "n_qubits") v = r.n_qubits;
      else if (variable == "n_gates") v = facts_of(facts, r.circuit_id).n_gates;
      else if (variable == "depth") v = facts_of(facts, r.circuit_id).depth;
      else v = segment_rank(r.segment);
      x.push_back(v);
      y.push_back(r.value);
    }
    return pearson_r(x, y);
  }

  // Binary: Mann-Whitney between the two category groups.
  if (variable == "gate_type" || variable == "input_type" || variable == "output_type") {
    std::vector<double> a, b;
    for (const DistanceRecord& r : distances) {
      bool first;
      if (variable == "gate_type") first = r.gate_type == "single";
      else if (variable == "input_type") first = r.input_type == "classical";
      else first = facts_of(facts, r.circuit_id).dominant_output;
      (first ? a : b).push_back(r.value);
    }
    if (a.empty() || b.empty())
      throw std::invalid_argument("variable " + variable + " has a single category");
    return mann_whitney_cliffs(a, b);
  }

  // Multi-valued: Kruskal-Wallis over category groups.
  if (variable == "algorithm" || variable == "operator") {
    std::map<std::string, std::vector<double>> groups;
    for (const DistanceRecord& r : distances)
      groups[variable == "algorithm" ? r.algorithm : r.op].push_back(r.value);
    if (groups.size() < 2)
      throw std::invalid_argument("variable " + variable + " has fewer than 2 categories");
    std::vector<std::vector<double>> gs;
    for (auto& [key, values] : groups) gs.push_back(std::move(values));
    return kruskal_wallis_eta(gs);
  }

  throw std::invalid_argument("unknown characteristic variable: " + variable);
}

std::vector<CharacteristicResult> correlate_characteristics(
    const std::vector<DistanceRecord>& distances,
    const std::map<std::string, CircuitFacts>& facts,
    const std::vector<std::string>& variables) {
  std::vector<CharacteristicResult> results;
  std::vector<double> pvalues;
  for (const std::string& variable : variables) {
    CharacteristicResult cr;
    cr.variable = variable;
    cr.stat = correlate_one(distances, facts, variable);
    pvalues.push_back(cr.stat.p_value);
    results.push_back(std::move(cr));
  }
  const std::vector<double> adjusted = holm_correct(pvalues);
  for (std::size_t i = 0; i < results.size(); ++i) {
    results[i].p_holm = adjusted[i];
    apply_significance_gate(results[i].stat, adjusted[i]);
  }
  return results;
}

}  // namespace qmut
