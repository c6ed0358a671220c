#include "qmut/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qmut {

Orientation metric_orientation(MetricKind m) {
  return m == MetricKind::Fidelity ? Orientation::Similarity : Orientation::Dissimilarity;
}

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::TraceDistance: return "trace_distance";
    case MetricKind::Fidelity: return "fidelity";
    case MetricKind::Hellinger: return "hellinger";
    case MetricKind::JensenShannon: return "jensen_shannon";
    case MetricKind::ExpectationDiff: return "expectation_diff";
  }
  throw std::logic_error("unknown metric");
}

MetricKind metric_from_name(const std::string& name) {
  for (MetricKind m : kAllMetrics)
    if (name == metric_name(m)) return m;
  throw std::invalid_argument("unknown metric: " + name);
}

bool metric_uses_density(MetricKind m) {
  return m == MetricKind::TraceDistance || m == MetricKind::Fidelity;
}

double trace_distance(const DensityMatrix& s, const DensityMatrix& t) {
  if (s.n_qubits != t.n_qubits)
    throw std::invalid_argument("trace_distance: dimension mismatch");
  const std::vector<double> eigs = hermitian_eigenvalues(s.data - t.data);
  double sum = 0.0;
  for (double e : eigs) sum += std::abs(e);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double fidelity(const DensityMatrix& s, const DensityMatrix& t) {
  if (s.n_qubits != t.n_qubits)
    throw std::invalid_argument("fidelity: dimension mismatch");
  const CMat root = sqrtm_psd(s.data);
  const CMat inner = root * t.data * root;
  const std::vector<double> eigs = hermitian_eigenvalues(inner);
  // Clip float noise around zero before the sqrt: sqrt turns an O(eps)
  // eigenvalue perturbation into an O(sqrt(eps)) error in the trace.
  double lam_max = 0.0;
  for (double e : eigs) lam_max = std::max(lam_max, std::abs(e));
  const double cutoff = 1e-13 * lam_max;
  double tr = 0.0;
  for (double e : eigs)
    if (e > cutoff) tr += std::sqrt(e);
  return std::clamp(tr * tr, 0.0, 1.0);
}

namespace {

std::set<std::string> support_union(const std::map<std::string, double>& p,
                                    const std::map<std::string, double>& q) {
  std::set<std::string> keys;
  for (const auto& [k, v] : p) keys.insert(k);
  for (const auto& [k, v] : q) keys.insert(k);
  return keys;
}

double lookup(const std::map<std::string, double>& m, const std::string& k) {
  const auto it = m.find(k);
  return it == m.end() ? 0.0 : it->second;
}

void check_same_width(const std::map<std::string, double>& p,
                      const std::map<std::string, double>& q) {
  std::size_t width = 0;
  for (const auto& m : {&p, &q})
    for (const auto& [k, v] : *m) {
      if (width == 0) width = k.size();
      if (k.size() != width)
        throw std::invalid_argument("distribution qubit-count mismatch");
    }
}

}  // namespace

double hellinger(const std::map<std::string, double>& p,
                 const std::map<std::string, double>& q) {
  check_same_width(p, q);
  double sum = 0.0;
  for (const std::string& k : support_union(p, q)) {
    const double d = std::sqrt(lookup(p, k)) - std::sqrt(lookup(q, k));
    sum += d * d;
  }
  return std::clamp(std::sqrt(sum) / std::sqrt(2.0), 0.0, 1.0);
}

double jensen_shannon(const std::map<std::string, double>& p,
                      const std::map<std::string, double>& q) {
  check_same_width(p, q);
  // Base-2 logs, so the distance ranges over exactly [0, 1];
  // terms with P(i) = 0 contribute 0 (0 log 0 == 0).
  double div = 0.0;
  for (const std::string& k : support_union(p, q)) {
    const double pv = lookup(p, k), qv = lookup(q, k);
    const double m = 0.5 * (pv + qv);
    if (pv > 0.0) div += 0.5 * pv * std::log2(pv / m);
    if (qv > 0.0) div += 0.5 * qv * std::log2(qv / m);
  }
  return std::clamp(std::sqrt(std::max(div, 0.0)), 0.0, 1.0);
}

double hellinger(const OutputDistribution& p, const OutputDistribution& q) {
  if (p.n_qubits != q.n_qubits) throw std::invalid_argument("hellinger: qubit-count mismatch");
  return hellinger(p.probabilities(), q.probabilities());
}

double jensen_shannon(const OutputDistribution& p, const OutputDistribution& q) {
  if (p.n_qubits != q.n_qubits)
    throw std::invalid_argument("jensen_shannon: qubit-count mismatch");
  return jensen_shannon(p.probabilities(), q.probabilities());
}

double expectation_diff(double a, double b) { return std::abs(a - b); }

}  // namespace qmut
