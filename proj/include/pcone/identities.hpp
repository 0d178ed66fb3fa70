#pragma once

#include "pcone/copolarity.hpp"
#include "pcone/instances.hpp"

#include <string>

namespace pcone {

/// Aggregated result of one identity checked across a corpus.
struct IdentityCheck {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string detail;  // first failure description
  bool pass() const { return cases > 0 && failures == 0; }
};

/// Exact duality/identity battery over a corpus of pseudo-cones:
///   - copolar involution (exact H-rep equality) and recession duality,
///   - copolar of intersections and convex unions (both directions),
///   - copolar of a zero-offset halfspace cut (ray adjunction),
///   - radial/support duality and the boundary criterion at sampled points,
///   - crucial pairs validating reversed against the copolar,
///   - conjugate-face dimension law, involution, inclusion reversal,
///     class bijections, and empty conjugates exactly on the
///     unbounded boundary faces,
///   - normal/angle/tangent cone identities.
/// `seed` drives the auxiliary random draws (partners, sample points);
/// `samples` is the number of radial/support points per instance.
std::vector<IdentityCheck> identity_battery(const std::vector<PseudoCone>& corpus,
                                            unsigned long long seed, int samples = 20);

}  // namespace pcone
