#pragma once

#include "pcone/pseudocone.hpp"

#include <random>

namespace pcone {

/// The non-negative orthant cone in dimension n.
PolyCone orthant_cone(int n);

/// Random pointed full-dimensional cone from `generators` integer vectors
/// (all lying in an open halfspace, so pointedness is structural).
PolyCone random_cone(std::mt19937_64& rng, int n, int generators);

/// Random pseudo-cone over c: 2..max_halfspaces halfspaces whose normals are
/// strictly positive integer combinations of the facet normals of c (hence
/// interior to the polar cone) with rational offsets in [-3, -1/3], plus the
/// facets of c.  The complement inside c always has finite volume.
PseudoCone random_pseudocone(std::mt19937_64& rng, const PolyCone& c, int max_halfspaces = 8);

/// Deterministic corpus: pseudo-cones over a mix of the orthant and random
/// cones with 3..6 generators.  Same seed, dimension, and count give the
/// same corpus.
std::vector<PseudoCone> gen_corpus(unsigned long long seed, int n, int count);

}  // namespace pcone
