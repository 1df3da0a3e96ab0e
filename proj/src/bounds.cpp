#include "srs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srs/error.hpp"

namespace srs {
namespace {

constexpr double kPi = std::numbers::pi;

double log_in(double value, double base) { return std::log(value) / std::log(base); }

void check_common(const BoundParams& p) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) {
    throw Error(ErrorKind::BadParams, "delta must lie in (0, 1)");
  }
  if (!(p.log_base > 0.0 && p.log_base != 1.0)) {
    throw Error(ErrorKind::BadParams, "log base must be positive and != 1");
  }
}

void check_beta(const BoundParams& p) {
  if (p.m < 1) throw Error(ErrorKind::BadParams, "m must be >= 1");
  const double needed = min_beta(p.m, p.delta, p.log_base);
  if (!(p.beta >= needed * (1.0 - 1e-12))) {
    throw Error(ErrorKind::BadBeta, "beta = " + std::to_string(p.beta) + " is below " +
                                        std::to_string(needed));
  }
}

}  // namespace

double min_beta(int m, double delta, double log_base) {
  return 2.0 + (3.0 / m) * log_in(4.0 / delta, log_base);
}

double lemma2_bound(const BoundParams& p) {
  check_common(p);
  check_beta(p);
  if (p.populations.empty()) throw Error(ErrorKind::BadParams, "need cluster populations");
  const double smallest = *std::min_element(p.populations.begin(), p.populations.end());
  if (!(smallest > 0.0) || !(p.n_total >= smallest)) {
    throw Error(ErrorKind::BadParams, "populations must be positive and at most N2");
  }
  return p.beta * p.m * p.n_total / smallest;
}

double lemma3_bound(const BoundParams& p) {
  check_common(p);
  if (!(p.tau1 > 0.0 && p.tau2 > 0.0 && p.tau1 + p.tau2 < kPi)) {
    throw Error(ErrorKind::BadArcs, "need tau1, tau2 > 0 and tau1 + tau2 < pi");
  }
  check_beta(p);
  return p.beta * p.m * 2.0 * kPi / (kPi - std::abs(p.tau2 - p.tau1));
}

double lemma4_bound(const BoundParams& p) {
  check_common(p);
  if (!(p.c > 0.0)) throw Error(ErrorKind::BadParams, "c must be > 0");
  if (!(p.min_p > 0.0 && p.min_p <= 1.0)) {
    throw Error(ErrorKind::BadParams, "min p must lie in (0, 1]");
  }
  if (!(p.r >= 1.0 && p.s >= 1.0)) throw Error(ErrorKind::BadParams, "need r, s >= 1");
  if (p.populations.empty()) throw Error(ErrorKind::BadParams, "need cluster populations");
  const auto [lo, hi] = std::minmax_element(p.populations.begin(), p.populations.end());
  if (!(*lo >= 1.0)) throw Error(ErrorKind::BadParams, "populations must be >= 1");

  const double log_r = log_in(2.0 * p.r / p.delta, p.log_base);
  const double xi_min = 10.0 * p.c * std::max(p.r / p.s, log_in(*lo, p.log_base)) * log_r;
  const double xi_max = 10.0 * p.c * std::max(p.r / p.s, log_in(*hi, p.log_base)) * log_r;
  return (1.0 / p.min_p) * xi_max *
         (2.0 + (3.0 / xi_min) * log_in(2.0 * p.s / p.delta, p.log_base));
}

}  // namespace srs
