#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hbac/backend.hpp"
#include "hbac/reset.hpp"
#include "hbac/state.hpp"

namespace hbac {

// Largest entry of the asymptotic computation marginal reached from the
// maximally mixed start: p0 = 1 / sum_{i < 2^n} q^i with q = a_k/a_1.
// Equivalently (q-1)/(q^(2^n)-1); the float64 path uses that closed form
// through expm1/log1p so it stays accurate for q near 1, with q == 1
// falling back to the uniform value 2^-n. The rational path evaluates the
// geometric sum exactly.
template <class T>
T asymptotic_p0(int n, const ResetDistribution<T>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("asymptotic_p0: qubit count must be in [1, 30]");
  if constexpr (backend_traits<T>::exact) {
    const T q = T(reset[reset.dim() - 1] / reset[0]);
    T denom(0), qi(1);
    const std::size_t m_size = std::size_t{1} << n;
    for (std::size_t i = 0; i < m_size; ++i) {
      denom += qi;
      qi = T(qi * q);
    }
    return T(T(1) / denom);
  } else {
    const double q = to_double(reset[reset.dim() - 1]) / to_double(reset[0]);
    const double d = q - 1.0;
    if (d == 0.0) return std::ldexp(1.0, -n);
    return d / std::expm1(std::ldexp(1.0, n) * std::log1p(d));
  }
}

// Full asymptotic marginal: geometric with ratio q = a_k/a_1, i.e.
// p_i = p_0 * q^i, normalized. All consecutive distances equal
// log(a_1/a_k), the saturation value. The float64 path normalizes by the
// computed sum so the result is a valid marginal for any n.
template <class T>
ComputationMarginal<T> asymptotic_state(int n, const ResetDistribution<T>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("asymptotic_state: qubit count must be in [1, 30]");
  const std::size_t m_size = std::size_t{1} << n;
  if constexpr (backend_traits<T>::exact) {
    const T q = T(reset[reset.dim() - 1] / reset[0]);
    const T p0 = asymptotic_p0(n, reset);
    std::vector<T> p(m_size);
    T cur = p0;
    for (std::size_t i = 0; i < m_size; ++i) {
      p[i] = cur;
      cur = T(cur * q);
    }
    return ComputationMarginal<T>::unchecked(std::move(p));
  } else {
    const double q = to_double(reset[reset.dim() - 1]) / to_double(reset[0]);
    const double log_q = std::log1p(q - 1.0);
    std::vector<double> p(m_size);
    double sum = 0.0;
    for (std::size_t i = 0; i < m_size; ++i) {
      p[i] = std::exp(static_cast<double>(i) * log_q);
      sum += p[i];
    }
    for (double& x : p) x /= sum;
    return ComputationMarginal<double>::unchecked(std::move(p));
  }
}

// Polarization the first (most significant) qubit approaches from the
// maximally mixed start: 2^(n-1) times the reset's effective polarization.
inline double qubit1_polarization_limit(int n, const ResetDistribution<double>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("qubit1_polarization_limit: qubit count must be in [1, 30]");
  return std::ldexp(reset.effective_polarization(), n - 1);
}

// Same limit for qubit j (1-indexed): 2^(n-j) times the effective
// polarization. Each qubit down the register gains half the previous
// one's boost; qubit n ends exactly at the reset polarization.
inline double qubit_polarization_limit(int n, int qubit, const ResetDistribution<double>& reset) {
  if (n < 1 || n > 30) throw invalid_parameter("qubit_polarization_limit: qubit count must be in [1, 30]");
  if (qubit < 1 || qubit > n) throw invalid_parameter("qubit_polarization_limit: qubit index out of range");
  return std::ldexp(reset.effective_polarization(), n - qubit);
}

// Physical temperature picture of the same limit. delta is the energy
// gap of the cooled qubit, delta_total the gap that sets the bath
// polarization, t_bath the bath temperature.
struct TemperatureSpec {
  double delta = 0.0;
  double delta_total = 0.0;
  double t_bath = 0.0;
};

// Effective temperature of qubit 1 in the asymptotic state:
// (delta/delta_total) * t_bath / 2^(n-1).
inline double effective_temperature(int n, const TemperatureSpec& spec) {
  if (n < 1 || n > 30) throw invalid_parameter("effective_temperature: qubit count must be in [1, 30]");
  if (!(spec.delta > 0.0) || !(spec.delta_total > 0.0) || !(spec.t_bath > 0.0)) {
    throw invalid_parameter("effective_temperature: delta, delta_total and t_bath must be > 0");
  }
  return (spec.delta / spec.delta_total) * spec.t_bath * std::ldexp(1.0, 1 - n);
}

// Classic upper bound on the largest joint eigenvalue reachable by
// cooling n qubits with a polarization-epsilon bath: e^(2^n eps) / 2^n.
// Compared against lambda1 = a_1 * p0_infinity; the gap between the two
// widens with epsilon.
inline double schulman_upper_bound(int n, double epsilon) {
  if (n < 1 || n > 30) throw invalid_parameter("schulman_upper_bound: qubit count must be in [1, 30]");
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw invalid_parameter("schulman_upper_bound: polarization must be finite and >= 0");
  }
  return std::exp(std::ldexp(epsilon, n)) * std::ldexp(1.0, -n);
}

// Everything the closed forms say about the cooling limit of a given
// register and reset, bundled for reporting. schulman_bound is present
// only for two-level resets, where the bath polarization is unambiguous.
struct AsymptoticPrediction {
  int n = 0;
  ResetDistribution<double> reset;
  ComputationMarginal<double> p_infinity;
  double p0_infinity = 0.0;
  double qubit1_polarization_limit = 0.0;
  double lambda1_limit = 0.0;
  std::optional<double> schulman_bound;
  std::vector<double> per_qubit_polarizations;
};

inline AsymptoticPrediction predict(int n, const ResetDistribution<double>& reset) {
  AsymptoticPrediction out{n, reset, asymptotic_state(n, reset)};
  out.p0_infinity = asymptotic_p0(n, reset);
  out.qubit1_polarization_limit = hbac::qubit1_polarization_limit(n, reset);
  out.lambda1_limit = to_double(reset[0]) * out.p0_infinity;
  if (reset.dim() == 2) {
    out.schulman_bound = schulman_upper_bound(n, reset.effective_polarization());
  }
  out.per_qubit_polarizations.reserve(n);
  for (int j = 1; j <= n; ++j) {
    out.per_qubit_polarizations.push_back(qubit_polarization_limit(n, j, reset));
  }
  return out;
}

// Asymptotic structure reached from an arbitrary sorted positive start.
// Indices split into blocks at every boundary whose distance already
// meets or exceeds L = log(a_1/a_k); such a boundary never admits mass
// transfer again, so each block keeps its initial total mass and relaxes
// internally to the geometric profile with ratio q = a_k/a_1.
struct BlockStructure {
  // Inclusive [first, last] index ranges, in order.
  std::vector<std::pair<std::size_t, std::size_t>> boundaries;
  std::vector<double> block_masses;
  ComputationMarginal<double> predicted_marginal;
};

// Predicts the limit without simulating. Partition at distances >= L,
// redistribute each block geometrically, then merge adjacent blocks whose
// post-redistribution boundary distance dropped below L (redistribution
// can flatten a boundary that initially cleared L) and repeat until the
// structure is stable. Requires a non-increasing, strictly positive
// marginal.
inline BlockStructure block_predict(const ComputationMarginal<double>& initial,
                                    const ResetDistribution<double>& reset) {
  const std::vector<double>& p = initial.probs();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw singular_distance("block_predict: marginal entries must be > 0");
    }
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] < p[i + 1]) {
      throw invalid_parameter("block_predict: marginal must be non-increasing");
    }
  }
  const double L = reset.log_ratio();
  const double q = to_double(reset[reset.dim() - 1]) / to_double(reset[0]);

  // Initial split: a new block starts after every boundary with d >= L.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t first = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (std::log(p[i] / p[i + 1]) >= L) {
      blocks.emplace_back(first, i);
      first = i + 1;
    }
  }
  blocks.emplace_back(first, p.size() - 1);

  std::vector<double> masses(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    double mass = 0.0;
    for (std::size_t i = blocks[b].first; i <= blocks[b].second; ++i) mass += p[i];
    masses[b] = mass;
  }

  std::vector<double> pred(p.size());
  for (;;) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::size_t len = blocks[b].second - blocks[b].first + 1;
      double norm = 0.0, w = 1.0;
      for (std::size_t j = 0; j < len; ++j) {
        pred[blocks[b].first + j] = w;
        norm += w;
        w *= q;
      }
      for (std::size_t j = 0; j < len; ++j) {
        pred[blocks[b].first + j] *= masses[b] / norm;
      }
    }

    bool merged = false;
    std::vector<std::pair<std::size_t, std::size_t>> new_blocks;
    std::vector<double> new_masses;
    new_blocks.push_back(blocks[0]);
    new_masses.push_back(masses[0]);
    for (std::size_t b = 1; b < blocks.size(); ++b) {
      const std::size_t left = new_blocks.back().second;
      if (std::log(pred[left] / pred[blocks[b].first]) < L) {
        new_blocks.back().second = blocks[b].second;
        new_masses.back() += masses[b];
        merged = true;
      } else {
        new_blocks.push_back(blocks[b]);
        new_masses.push_back(masses[b]);
      }
    }
    if (!merged) break;
    blocks = std::move(new_blocks);
    masses = std::move(new_masses);
  }

  return BlockStructure{std::move(blocks), std::move(masses),
                        ComputationMarginal<double>::unchecked(std::move(pred))};
}

}  // namespace hbac
