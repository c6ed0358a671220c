#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmut/linalg.hpp"
#include "qmut/sim.hpp"

namespace qmut {

enum class MetricKind { TraceDistance, Fidelity, Hellinger, JensenShannon, ExpectationDiff };

enum class Orientation { Dissimilarity, Similarity };

Orientation metric_orientation(MetricKind m);
const char* metric_name(MetricKind m);
MetricKind metric_from_name(const std::string& name);
bool metric_uses_density(MetricKind m);

inline constexpr MetricKind kAllMetrics[] = {
    MetricKind::TraceDistance, MetricKind::Fidelity, MetricKind::Hellinger,
    MetricKind::JensenShannon, MetricKind::ExpectationDiff};

// D(s,t) = 1/2 sum |eig(s - t)|; the difference is Hermitian, so the trace
// norm is the sum of absolute eigenvalues.
double trace_distance(const DensityMatrix& s, const DensityMatrix& t);

// F(s,t) = (Tr sqrt(sqrt(s) t sqrt(s)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& s, const DensityMatrix& t);

// Probability-map forms sum over the union of supports; absent outcomes
// contribute probability zero.
double hellinger(const std::map<std::string, double>& p,
                 const std::map<std::string, double>& q);
double jensen_shannon(const std::map<std::string, double>& p,
                      const std::map<std::string, double>& q);

double hellinger(const OutputDistribution& p, const OutputDistribution& q);
double jensen_shannon(const OutputDistribution& p, const OutputDistribution& q);

double expectation_diff(double a, double b);

}  // namespace qmut
