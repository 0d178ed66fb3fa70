#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcone {

/// Exact rational scalar. Always kept in canonical form (lowest terms,
/// positive denominator) by the GMP backend.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

using VecR = Vec<Rat>;
using MatR = Mat<Rat>;
using VecD = Eigen::VectorXd;

/// Parse "p", "-p" or "p/q" into a canonical rational.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

/// Render a rational as "p" or "p/q" (canonical form).
std::string rat_to_string(const Rat& r);

/// Exact conversion of a finite double to a rational.
Rat rat_from_double(double x);

double to_double(const Rat& r);
VecD to_double(const VecR& v);
VecR rat_vec(std::initializer_list<std::string> coords);
VecR rat_vec_from_double(const VecD& v);

/// Absolute + relative float tolerances used by every inexact comparison.
struct Tolerances {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  bool close(double a, double b) const;
};

/// Runtime configuration shared by the library entry points and the CLI.
struct RunConfig {
  enum class ScalarMode { Rational, Float };
  ScalarMode scalar_mode = ScalarMode::Rational;
  Tolerances tol;
  int max_iter = 10000;
  double residual_tol = 1e-6;
  unsigned long seed = 0;

  /// Supported ambient dimensions are 2..4; throws std::invalid_argument
  /// otherwise.
  static void check_dimension(int n);
};

}  // namespace pcone
