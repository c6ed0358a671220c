#include "qmut/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qmut {

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf requires p in (0, 1)");
  // Acklam (2003) rational approximation with three regions.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement step against erfc.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Regularized lower incomplete gamma P(a, x) via series / continued fraction.
double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain error");
  if (x == 0.0) return 0.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Lentz continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1.0 - q;
}

// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - incomplete_beta(b, a, 1.0 - x);
}

double group_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double group_variance(const std::vector<double>& v) {
  const double m = group_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sum of (t^3 - t) over tie groups in a sorted pooled sample.
double tie_term(std::vector<double> pooled) {
  std::sort(pooled.begin(), pooled.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    total += t * t * t - t;
    i = j;
  }
  return total;
}

EffectStrength grade(double magnitude, double weak, double moderate, double strong) {
  if (magnitude < weak) return EffectStrength::Negligible;
  if (magnitude < moderate) return EffectStrength::Weak;
  if (magnitude < strong) return EffectStrength::Moderate;
  return EffectStrength::Strong;
}

}  // namespace

double chi_squared_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return 1.0 - gamma_p(df / 2.0, x / 2.0);
}

double student_t_two_sided_p(double t, double df) {
  const double x = df / (df + t * t);
  return incomplete_beta(df / 2.0, 0.5, x);
}

const char* strength_name(EffectStrength s) {
  switch (s) {
    case EffectStrength::NotSignificant: return "not_significant";
    case EffectStrength::Negligible: return "negligible";
    case EffectStrength::Weak: return "weak";
    case EffectStrength::Moderate: return "moderate";
    case EffectStrength::Strong: return "strong";
  }
  throw std::logic_error("unknown strength");
}

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j + 1);  // 1-based midrank
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

StatResult variance_ratio(const std::vector<double>& noisy,
                          const std::vector<double>& noiseless) {
  if (noisy.size() < 2 || noiseless.size() < 2)
    throw std::invalid_argument("variance_ratio requires groups of size >= 2");
  StatResult res;
  res.test_name = "fligner_killeen";

  const double var_noisy = group_variance(noisy);
  const double var_base = group_variance(noiseless);
  if (var_base == 0.0) {
    res.effect_size = std::numeric_limits<double>::infinity();
    res.degenerate = true;
  } else {
    res.effect_size = var_noisy / var_base;
  }

  // Median-center each group, rank pooled |deviations|, transform through
  // the normal quantile a = Phi^-1(1/2 + rank / (2(N+1))).
  std::vector<double> pooled;
  std::vector<int> group_of;
  const double med_noisy = median_of(noisy);
  const double med_base = median_of(noiseless);
  for (double x : noisy) {
    pooled.push_back(std::abs(x - med_noisy));
    group_of.push_back(0);
  }
  for (double x : noiseless) {
    pooled.push_back(std::abs(x - med_base));
    group_of.push_back(1);
  }
  const std::size_t total = pooled.size();
  const std::vector<double> ranks = midranks(pooled);
  std::vector<double> scores(total);
  for (std::size_t i = 0; i < total; ++i)
    scores[i] = inverse_normal_cdf(0.5 + ranks[i] / (2.0 * (static_cast<double>(total) + 1.0)));

  const double abar = group_mean(scores);
  double v = 0.0;
  for (double a : scores) v += (a - abar) * (a - abar);
  v /= static_cast<double>(total - 1);

  double stat = 0.0;
  for (int g = 0; g < 2; ++g) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < total; ++i)
      if (group_of[i] == g) {
        sum += scores[i];
        ++count;
      }
    const double gm = sum / static_cast<double>(count);
    stat += static_cast<double>(count) * (gm - abar) * (gm - abar);
  }
  stat = v > 0.0 ? stat / v : 0.0;
  res.statistic = stat;
  res.p_value = chi_squared_sf(stat, 1.0);
  // VR itself carries no graded strength scale; keep direction in the size.
  res.strength = res.p_value < 0.05 ? EffectStrength::Strong : EffectStrength::NotSignificant;
  return res;
}

StatResult mann_whitney_cliffs(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("mann_whitney_cliffs requires non-empty samples");
  StatResult res;
  res.test_name = "mann_whitney";
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - na * (na + 1.0) / 2.0;
  res.statistic = u;

  const double ties = tie_term(pooled);
  const double sigma2 = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (sigma2 > 0.0) {
    const double z = (u - na * nb / 2.0) / std::sqrt(sigma2);
    res.p_value = 2.0 * (1.0 - normal_cdf(std::abs(z)));
  } else {
    res.p_value = 1.0;
  }

  // Cliff's delta: brute force below 1e6 pairs, sorted-merge counting above.
  double gt = 0.0, lt = 0.0;
  if (na * nb <= 1e6) {
    for (double x : a)
      for (double y : b) {
        if (x > y) gt += 1.0;
        if (x < y) lt += 1.0;
      }
  } else {
    std::vector<double> sb = b;
    std::sort(sb.begin(), sb.end());
    for (double x : a) {
      gt += static_cast<double>(std::lower_bound(sb.begin(), sb.end(), x) - sb.begin());
      lt += static_cast<double>(sb.end() - std::upper_bound(sb.begin(), sb.end(), x));
    }
  }
  const double delta = (gt - lt) / (na * nb);
  res.effect_size = delta;
  res.strength = grade(std::abs(delta), 0.15, 0.33, 0.47);
  if (res.p_value >= 0.05) res.strength = EffectStrength::NotSignificant;
  return res;
}

StatResult kruskal_wallis_eta(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2)
    throw std::invalid_argument("kruskal_wallis_eta requires at least 2 groups");
  for (const auto& g : groups)
    if (g.empty()) throw std::invalid_argument("kruskal_wallis_eta: empty group");

  StatResult res;
  res.test_name = "kruskal_wallis";
  std::vector<double> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const double n = static_cast<double>(pooled.size());
  const double k = static_cast<double>(groups.size());
  const std::vector<double> ranks = midranks(pooled);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    offset += g.size();
    h += rank_sum * rank_sum / static_cast<double>(g.size());
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
  const double ties = tie_term(pooled);
  const double correction = 1.0 - ties / (n * n * n - n);
  if (correction > 0.0) h /= correction;

  res.statistic = h;
  res.p_value = chi_squared_sf(h, k - 1.0);
  const double eta = n > k ? std::clamp((h - k + 1.0) / (n - k), 0.0, 1.0) : 0.0;
  res.effect_size = eta;
  res.strength = grade(eta, 0.01, 0.06, 0.14);
  if (res.p_value >= 0.05) res.strength = EffectStrength::NotSignificant;
  return res;
}

StatResult pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("pearson_r requires equal lengths >= 3");
  const double n = static_cast<double>(x.size());
  const double mx = group_mean(x), my = group_mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::invalid_argument("pearson_r: zero-variance input");
  StatResult res;
  res.test_name = "pearson";
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  res.statistic = r;
  res.effect_size = r;
  const double df = n - 2.0;
  if (std::abs(r) >= 1.0) {
    res.p_value = 0.0;
  } else {
    const double t = r * std::sqrt(df / (1.0 - r * r));
    res.p_value = student_t_two_sided_p(t, df);
  }
  res.strength = grade(std::abs(r), 0.10, 0.30, 0.50);
  if (res.p_value >= 0.05) res.strength = EffectStrength::NotSignificant;
  return res;
}

std::vector<double> holm_correct(const std::vector<double>& pvalues) {
  const std::size_t m = pvalues.size();
  for (double p : pvalues)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("holm_correct: p-value out of [0, 1]");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&pvalues](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });
  std::vector<double> adjusted(m);
  double running_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double scaled = static_cast<double>(m - i) * pvalues[order[i]];
    running_max = std::max(running_max, scaled);
    adjusted[order[i]] = std::min(1.0, running_max);
  }
  return adjusted;
}

void apply_significance_gate(StatResult& r, double adjusted_p, double alpha) {
  if (adjusted_p >= alpha) r.strength = EffectStrength::NotSignificant;
}

}  // namespace qmut
