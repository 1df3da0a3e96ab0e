#pragma once

#include <numbers>
#include <vector>

namespace srs {

/// Inputs of the closed-form sample-size bounds. Logarithms use `log_base`
/// (natural log by default).
struct BoundParams {
  int m = 1;
  double delta = 0.1;
  double beta = 0.0;
  double n_total = 0.0;
  std::vector<double> populations;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double r = 0.0;
  double s = 0.0;
  double c = 1.0;
  double min_p = 0.0;
  double log_base = std::numbers::e;
};

/// Smallest admissible beta: 2 + (3/m) log(4/delta).
double min_beta(int m, double delta, double log_base = std::numbers::e);

/// beta m N2 / min n_i, columns needed by uniform index sampling with
/// replacement to draw >= m points per arc cluster w.p. >= 1 - delta.
/// BadBeta when beta is below min_beta; BadParams for bad m, delta or
/// populations.
double lemma2_bound(const BoundParams& p);

/// beta m 2 pi / (pi - |tau2 - tau1|), the spatial-sampling counterpart.
/// BadArcs unless tau1, tau2 > 0 and tau1 + tau2 < pi.
double lemma3_bound(const BoundParams& p);

/// Columns sufficient to span the column space of a union of subspaces:
/// (1/min p) xi_max (2 + (3/xi_min) log(2s/delta)) with
/// xi = 10 c max(r/s, log n_i) log(2r/delta) at the min / max population.
double lemma4_bound(const BoundParams& p);

}  // namespace srs
