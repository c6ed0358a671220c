#pragma once

#include <string>
#include <vector>

namespace qmut {

// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9
// absolute error), the kernel for Fligner-Killeen scores and normal p-values.
double inverse_normal_cdf(double p);
double normal_cdf(double z);

// Upper-tail survival functions built on regularized incomplete gamma/beta.
double chi_squared_sf(double x, double df);
double student_t_two_sided_p(double t, double df);

enum class EffectStrength { NotSignificant, Negligible, Weak, Moderate, Strong };
const char* strength_name(EffectStrength s);

struct StatResult {
  std::string test_name;
  double statistic = 0.0;   // U, Z, H, or VR depending on the test
  double p_value = 1.0;
  double effect_size = 0.0; // Cliff's delta, eta^2[H], Pearson r, or VR
  EffectStrength strength = EffectStrength::NotSignificant;
  bool degenerate = false;  // e.g. VR with zero noiseless variance
};

// Fligner-Killeen scale test with the variance ratio VR = var(a)/var(b) as
// effect size. VR with zero baseline variance reports an infinity sentinel
// with the degenerate flag set.
StatResult variance_ratio(const std::vector<double>& noisy,
                          const std::vector<double>& noiseless);

// Mann-Whitney U (midranks, two-sided normal approximation with tie
// correction) with Cliff's delta; strength cuts 0.15 / 0.33 / 0.47 on |delta|.
StatResult mann_whitney_cliffs(const std::vector<double>& a, const std::vector<double>& b);

// Kruskal-Wallis H with tie correction; eta^2[H] = (H - k + 1) / (n - k),
// clamped at 0; strength cuts 0.01 / 0.06 / 0.14.
StatResult kruskal_wallis_eta(const std::vector<std::vector<double>>& groups);

// Pearson product-moment r with a two-sided t-test p; cuts 0.10 / 0.30 / 0.50.
StatResult pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// Holm step-down adjustment, returned in the original order.
std::vector<double> holm_correct(const std::vector<double>& pvalues);

// Midranks of the pooled values (average rank for ties), 1-based.
std::vector<double> midranks(const std::vector<double>& values);

// Re-labels strength to NotSignificant when the (adjusted) p fails 0.05.
void apply_significance_gate(StatResult& r, double adjusted_p, double alpha = 0.05);

}  // namespace qmut
