#include "pcone/instances.hpp"

namespace pcone {

PolyCone orthant_cone(int n) {
  std::vector<VecR> gens;
  for (int i = 0; i < n; ++i) {
    VecR e = VecR::Zero(n);
    e[i] = 1;
    gens.push_back(e);
  }
  return PolyCone::from_generators(gens);
}

PolyCone random_cone(std::mt19937_64& rng, int n, int generators) {
  std::uniform_int_distribution<int> head(1, 3);
  std::uniform_int_distribution<int> tail(-2, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<VecR> gens;
    for (int g = 0; g < generators; ++g) {
      VecR v(n);
      v[0] = Rat(head(rng));  // open halfspace x1 > 0 keeps the cone pointed
      for (int j = 1; j < n; ++j) v[j] = Rat(tail(rng));
      gens.push_back(v);
    }
    try {
      return PolyCone::from_generators(gens);
    } catch (const ConeError&) {
      continue;  // degenerate draw (not full-dimensional); redraw
    }
  }
  return orthant_cone(n);
}

PseudoCone random_pseudocone(std::mt19937_64& rng, const PolyCone& c, int max_halfspaces) {
  const int n = c.ambient_dim();
  const std::vector<VecR>& walls = c.facet_normals();
  std::uniform_int_distribution<int> count(2, std::max(2, max_halfspaces));
  std::uniform_int_distribution<int> mix(1, 4);
  std::uniform_int_distribution<int> num(1, 9);
  std::uniform_int_distribution<int> den(1, 3);
  HRep h;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    VecR u = VecR::Zero(n);
    for (const VecR& w : walls) {
      const Rat lambda = Rat(mix(rng));
      u += (w * lambda).eval();
    }
    Rat mag = Rat(num(rng)) / den(rng);
    while (mag < Rat(1) / 3 || mag > 3) mag = Rat(num(rng)) / den(rng);
    h.halfspaces.push_back({primitive(u), -mag});
  }
  for (const VecR& w : walls) h.halfspaces.push_back({w, Rat(0)});
  return PseudoCone::validate(c, h);
}

std::vector<PseudoCone> gen_corpus(unsigned long long seed, int n, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gen_count(3, 6);
  std::vector<PseudoCone> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int i = 0; i < count; ++i) {
    const PolyCone c = (i % 2 == 0) ? orthant_cone(n) : random_cone(rng, n, gen_count(rng));
    out.push_back(random_pseudocone(rng, c));
  }
  return out;
}

}  // namespace pcone
