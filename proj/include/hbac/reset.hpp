#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hbac/backend.hpp"

namespace hbac {

// Equilibrium distribution a_1 >= a_2 >= ... >= a_k of the reset system:
// the distribution the bath restores on every reset step. Requires k >= 2
// and a_k > 0 so that the level ratio a_1/a_k stays finite.
template <class T>
class ResetDistribution {
 public:
  explicit ResetDistribution(std::vector<T> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
      throw invalid_parameter("reset distribution needs at least 2 levels");
    }
    if (!(probs_.back() > T(0))) {
      throw invalid_parameter("reset distribution requires a_k > 0");
    }
    for (std::size_t m = 0; m + 1 < probs_.size(); ++m) {
      if (probs_[m] < probs_[m + 1]) {
        throw invalid_parameter("reset distribution must be non-increasing");
      }
    }
    T sum(0);
    for (const T& a : probs_) sum += a;
    const T drift = abs_value(T(sum - T(1)));
    if (drift > backend_traits<T>::sum_tolerance()) {
      throw invalid_parameter("reset distribution must sum to 1");
    }
  }

  // Rescales an arbitrary positive, non-increasing level set to unit sum.
  // Normalization never happens implicitly; this is the explicit route.
  static ResetDistribution normalized(std::vector<T> levels) {
    T sum(0);
    for (const T& a : levels) sum += a;
    if (!(sum > T(0))) {
      throw invalid_parameter("reset levels must have positive total");
    }
    for (T& a : levels) a = T(a / sum);
    return ResetDistribution(std::move(levels));
  }

  std::size_t dim() const { return probs_.size(); }
  const std::vector<T>& probs() const { return probs_; }
  const T& operator[](std::size_t m) const { return probs_[m]; }

  // log(a_1/a_k): the only property of the level structure the asymptotic
  // state depends on. Interior levels influence transients only.
  double log_ratio() const {
    return std::log(to_double(T(probs_.front() / probs_.back())));
  }

  // Effective two-level polarization log(a_1/a_k)/2. For a thermal qubit
  // pair this recovers the polarization it was built from.
  double effective_polarization() const { return 0.5 * log_ratio(); }

  bool operator==(const ResetDistribution&) const = default;

 private:
  std::vector<T> probs_;
};

// Two-level reset system of a thermal qubit at polarization epsilon:
// {e^eps, e^-eps} / (e^eps + e^-eps).
inline ResetDistribution<double> make_thermal_reset(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw invalid_parameter("thermal reset requires a finite polarization >= 0");
  }
  const double z = std::exp(epsilon) + std::exp(-epsilon);
  return ResetDistribution<double>({std::exp(epsilon) / z, std::exp(-epsilon) / z});
}

// Composite reset system formed by several independent subsystems reset
// together. The joint spectrum is the tensor product of the parts, sorted
// non-increasing; log-ratios of the parts add.
template <class T>
ResetDistribution<T> make_tensor_reset(const std::vector<ResetDistribution<T>>& parts) {
  if (parts.empty()) {
    throw invalid_parameter("tensor reset needs at least one part");
  }
  std::vector<T> acc{T(1)};
  for (const ResetDistribution<T>& part : parts) {
    std::vector<T> next;
    next.reserve(acc.size() * part.dim());
    for (const T& x : acc) {
      for (const T& a : part.probs()) next.push_back(T(x * a));
    }
    acc = std::move(next);
  }
  std::stable_sort(acc.begin(), acc.end(), std::greater<T>());
  return ResetDistribution<T>(std::move(acc));
}

}  // namespace hbac
