#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace hbac {

// Exact arithmetic backend used as a cross-check oracle for the float64
// lane. Exact runs require rational reset probabilities (thermal e^eps
// levels are irrational), so exact setups are parameterized by
// probabilities directly.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

// Per-backend comparison slack. The rational backend is exact everywhere:
// every tolerance collapses to zero and comparisons become equalities.
template <class T>
struct backend_traits;

template <>
struct backend_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float64";
  static double sum_tolerance() { return 1e-12; }
  static double fixed_point_slack() { return 1e-12; }
};

template <>
struct backend_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational sum_tolerance() { return Rational(0); }
  static Rational fixed_point_slack() { return Rational(0); }
};

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A marginal probability entering a polarization log-ratio is zero.
struct singular_polarization : std::domain_error {
  using std::domain_error::domain_error;
};

// A marginal entry entering a pairwise-distance log-ratio is zero.
struct singular_distance : std::domain_error {
  using std::domain_error::domain_error;
};

// An operation was called on data that does not satisfy its contract
// (for example, a convergence-only check fed a truncated trajectory).
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hbac
