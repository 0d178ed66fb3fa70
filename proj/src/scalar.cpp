#include "pcone/scalar.hpp"

#include <cmath>

namespace pcone {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    // Dividing two integers canonicalizes; the string constructor would not.
    return Rat(num) / Rat(den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rat(x);
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

VecD to_double(const VecR& v) {
  VecD out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

VecR rat_vec(std::initializer_list<std::string> coords) {
  VecR out(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) out[i++] = rat_from_string(c);
  return out;
}

VecR rat_vec_from_double(const VecD& v) {
  VecR out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

bool Tolerances::close(double a, double b) const {
  const double diff = std::abs(a - b);
  return diff <= abs_tol || diff <= rel_tol * std::max(std::abs(a), std::abs(b));
}

void RunConfig::check_dimension(int n) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument("ambient dimension must be between 2 and 4");
  }
}

}  // namespace pcone
