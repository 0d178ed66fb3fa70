#include "pcone/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_set>

namespace pcone {

namespace {

constexpr size_t kMaxConstraints = 128;
using Mask = std::bitset<128>;

bool vec_eq(const VecR& a, const VecR& b) { return a == b; }

void sort_dedup(std::vector<VecR>& vs) {
  std::sort(vs.begin(), vs.end(), [](const VecR& a, const VecR& b) { return lex_less(a, b); });
  vs.erase(std::unique(vs.begin(), vs.end(), vec_eq), vs.end());
}

void check_dims(const std::vector<VecR>& vs, Eigen::Index n, const char* what) {
  for (const VecR& v : vs) {
    if (v.size() != n) {
      throw PolyhedronError(PolyhedronError::Code::Input,
                            std::string(what) + ": inconsistent dimensions");
    }
  }
}

}  // namespace

int HRep::ambient_dim() const {
  if (halfspaces.empty()) {
    throw PolyhedronError(PolyhedronError::Code::Input, "H-representation has no halfspaces");
  }
  return static_cast<int>(halfspaces.front().normal.size());
}

int VRep::ambient_dim() const {
  if (points.empty()) {
    throw PolyhedronError(PolyhedronError::Code::Input, "V-representation has no points");
  }
  return static_cast<int>(points.front().size());
}

Halfspace canonical(const Halfspace& h) {
  VecR p;
  try {
    p = primitive(h.normal);
  } catch (const std::invalid_argument&) {
    throw PolyhedronError(PolyhedronError::Code::Input, "halfspace with zero normal");
  }
  Eigen::Index k = 0;
  while (h.normal[k] == 0) ++k;
  const Rat factor = p[k] / h.normal[k];
  return Halfspace{p, h.offset * factor};
}

HRep canonical(const HRep& h) {
  const Eigen::Index n = h.ambient_dim();
  HRep out;
  out.halfspaces.reserve(h.halfspaces.size());
  for (const Halfspace& hs : h.halfspaces) {
    if (hs.normal.size() != n) {
      throw PolyhedronError(PolyhedronError::Code::Input, "H-rep: inconsistent dimensions");
    }
    out.halfspaces.push_back(canonical(hs));
  }
  auto cmp = [](const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
  };
  auto eq = [](const Halfspace& a, const Halfspace& b) {
    return a.normal == b.normal && a.offset == b.offset;
  };
  std::sort(out.halfspaces.begin(), out.halfspaces.end(), cmp);
  out.halfspaces.erase(std::unique(out.halfspaces.begin(), out.halfspaces.end(), eq),
                       out.halfspaces.end());
  return out;
}

VRep canonical(const VRep& v) {
  const Eigen::Index n = v.ambient_dim();
  check_dims(v.points, n, "V-rep points");
  check_dims(v.rays, n, "V-rep rays");
  VRep out;
  out.points = v.points;
  out.rays.reserve(v.rays.size());
  for (const VecR& r : v.rays) {
    try {
      out.rays.push_back(primitive(r));
    } catch (const std::invalid_argument&) {
      throw PolyhedronError(PolyhedronError::Code::Input, "V-rep: zero ray");
    }
  }
  sort_dedup(out.points);
  sort_dedup(out.rays);
  return out;
}

// ---------------------------------------------------------------------------
// Double description.
//
// Maintains the cone { y : <m_i, y> <= 0, i processed } as
// span(lineality) + cone(rays), with the invariants that the lineality
// basis spans exactly the kernel of the processed constraints and the rays
// are the extreme rays of the quotient (a pointed cone).  A constraint that
// is non-orthogonal to the lineality removes one lineality dimension and
// becomes a single new ray; otherwise the classic step keeps the
// non-violating rays and inserts one combination per adjacent
// (positive, negative) pair.  Adjacency is decided combinatorially from the
// sets of active processed constraints, which is exact for the pointed
// quotient.  Rays are rescaled to primitive integer vectors after every step
// to keep coefficients small.
// ---------------------------------------------------------------------------

ConeDescription dual_description(const std::vector<VecR>& normals, int dim) {
  if (dim <= 0) throw PolyhedronError(PolyhedronError::Code::Input, "nonpositive dimension");
  if (normals.size() > kMaxConstraints) {
    throw PolyhedronError(PolyhedronError::Code::Input, "too many constraints");
  }
  check_dims(normals, dim, "constraints");

  struct Ray {
    VecR v;
    Mask active;
  };

  std::vector<VecR> lin;
  for (int i = 0; i < dim; ++i) {
    VecR e = VecR::Zero(dim);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<Ray> rays;

  for (size_t t = 0; t < normals.size(); ++t) {
    const VecR& m = normals[t];

    int l0 = -1;
    for (size_t j = 0; j < lin.size(); ++j) {
      if (dot(m, lin[j]) != 0) {
        l0 = static_cast<int>(j);
        break;
      }
    }

    if (l0 >= 0) {
      // The constraint cuts the lineality space: one basis vector turns into
      // the single extreme ray on the strict side, the rest are projected
      // into the new kernel.
      const Rat mp = dot(m, lin[l0]);
      const VecR l0p = lin[l0] * (Rat(-1) / mp);  // <m, l0p> = -1
      std::vector<VecR> new_lin;
      for (size_t j = 0; j < lin.size(); ++j) {
        if (static_cast<int>(j) == l0) continue;
        new_lin.push_back(primitive(lin[j] + dot(m, lin[j]) * l0p));
      }
      for (Ray& r : rays) {
        r.v = primitive(r.v + dot(m, r.v) * l0p);
        r.active.set(t);  // projected rays satisfy <m, .> = 0
      }
      Ray nr;
      nr.v = primitive(l0p);
      for (size_t j = 0; j < t; ++j) nr.active.set(j);
      rays.push_back(std::move(nr));
      lin = std::move(new_lin);
      continue;
    }

    // Classic double-description step in the quotient.
    std::vector<Rat> prod(rays.size());
    bool any_pos = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      prod[i] = dot(m, rays[i].v);
      if (prod[i] > 0) any_pos = true;
    }
    if (!any_pos) {
      for (size_t i = 0; i < rays.size(); ++i) {
        if (prod[i] == 0) rays[i].active.set(t);
      }
      continue;
    }

    auto adjacent = [&](size_t i, size_t j) {
      const Mask z = rays[i].active & rays[j].active;
      for (size_t k = 0; k < rays.size(); ++k) {
        if (k == i || k == j) continue;
        if ((rays[k].active & z) == z) return false;
      }
      return true;
    };

    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (prod[i] > 0) continue;
      Ray kept = rays[i];
      if (prod[i] == 0) kept.active.set(t);
      next.push_back(std::move(kept));
    }
    for (size_t i = 0; i < rays.size(); ++i) {
      if (prod[i] <= 0) continue;
      for (size_t j = 0; j < rays.size(); ++j) {
        if (prod[j] >= 0) continue;
        if (!adjacent(i, j)) continue;
        Ray nr;
        nr.v = primitive(prod[i] * rays[j].v - prod[j] * rays[i].v);
        nr.active = rays[i].active & rays[j].active;
        nr.active.set(t);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  ConeDescription out;
  for (const VecR& l : lin) out.lineality.push_back(primitive(l));
  for (const Ray& r : rays) out.rays.push_back(r.v);
  sort_dedup(out.rays);
  return out;
}

VRep enumerate_generators(const HRep& h0) {
  const HRep h = canonical(h0);
  const int n = h.ambient_dim();

  std::vector<VecR> normals;
  normals.reserve(h.halfspaces.size() + 1);
  // Homogenization variable s >= 0 first, then (u, -t) per halfspace.
  VecR srow = VecR::Zero(n + 1);
  srow[n] = -1;
  normals.push_back(srow);
  for (const Halfspace& hs : h.halfspaces) {
    VecR row(n + 1);
    row.head(n) = hs.normal;
    row[n] = -hs.offset;
    normals.push_back(row);
  }

  const ConeDescription dd = dual_description(normals, n + 1);

  bool nonempty = false;
  for (const VecR& r : dd.rays) {
    if (r[n] > 0) {
      nonempty = true;
      break;
    }
  }
  if (!nonempty) {
    throw PolyhedronError(PolyhedronError::Code::Empty, "empty intersection");
  }
  if (!dd.lineality.empty()) {
    throw PolyhedronError(PolyhedronError::Code::Lineality, "set contains a line");
  }

  VRep out;
  for (const VecR& r : dd.rays) {
    if (r[n] > 0) {
      VecR p = r.head(n) * (Rat(1) / r[n]);
      out.points.push_back(std::move(p));
    } else {
      out.rays.push_back(r.head(n));
    }
  }
  return canonical(out);
}

HRep enumerate_facets(const VRep& v0) {
  const VRep v = canonical(v0);
  const int n = v.ambient_dim();

  std::vector<VecR> gens;
  gens.reserve(v.points.size() + v.rays.size());
  for (const VecR& p : v.points) {
    VecR g(n + 1);
    g.head(n) = p;
    g[n] = 1;
    gens.push_back(std::move(g));
  }
  for (const VecR& r : v.rays) {
    VecR g(n + 1);
    g.head(n) = r;
    g[n] = 0;
    gens.push_back(std::move(g));
  }

  // The polar of the homogenization cone: extreme rays are irredundant
  // inequalities, lineality vectors are equalities.
  const ConeDescription dd = dual_description(gens, n + 1);

  std::vector<VecR> all = dd.rays;
  all.insert(all.end(), dd.lineality.begin(), dd.lineality.end());
  if (rank_of(all) < n + 1) {
    throw PolyhedronError(PolyhedronError::Code::Lineality, "generators span a line");
  }

  HRep out;
  for (const VecR& z : dd.rays) {
    VecR a = z.head(n);
    if (a.isZero()) continue;  // the trivial inequality s >= 0
    out.halfspaces.push_back(Halfspace{a, -z[n]});
  }
  for (const VecR& z : dd.lineality) {
    VecR a = z.head(n);
    if (a.isZero()) {
      throw std::logic_error("facet enumeration: degenerate equality");
    }
    out.halfspaces.push_back(Halfspace{a, -z[n]});
    out.halfspaces.push_back(Halfspace{-a, z[n]});
  }
  return canonical(out);
}

Polyhedron Polyhedron::from_h(const HRep& h) {
  Polyhedron p;
  p.v_ = enumerate_generators(h);
  p.h_ = enumerate_facets(p.v_);
  p.ambient_dim_ = p.v_.ambient_dim();
  std::vector<VecR> span;
  for (const VecR& pt : p.v_.points) span.push_back(pt - p.v_.points.front());
  for (const VecR& r : p.v_.rays) span.push_back(r);
  p.dim_ = rank_of(span);
  return p;
}

Polyhedron Polyhedron::from_v(const VRep& v) {
  Polyhedron p;
  p.h_ = enumerate_facets(v);
  p.v_ = enumerate_generators(p.h_);
  p.ambient_dim_ = p.v_.ambient_dim();
  std::vector<VecR> span;
  for (const VecR& pt : p.v_.points) span.push_back(pt - p.v_.points.front());
  for (const VecR& r : p.v_.rays) span.push_back(r);
  p.dim_ = rank_of(span);
  return p;
}

bool Polyhedron::contains(const VecR& x) const {
  if (x.size() != ambient_dim_) {
    throw PolyhedronError(PolyhedronError::Code::Input, "contains: dimension mismatch");
  }
  for (const Halfspace& hs : h_.halfspaces) {
    if (dot(hs.normal, x) > hs.offset) return false;
  }
  return true;
}

bool Polyhedron::same_set_as(const Polyhedron& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  return v_.points == other.v_.points && v_.rays == other.v_.rays;
}

namespace {

FaceLattice build_lattice(const Polyhedron& p) {
  if (!p.full_dim()) {
    throw PolyhedronError(PolyhedronError::Code::Dimension,
                          "face lattice requires a full-dimensional polyhedron");
  }
  const HRep& h = p.h();
  const VRep& v = p.v();
  const size_t m = h.halfspaces.size();
  if (m > kMaxConstraints) {
    throw PolyhedronError(PolyhedronError::Code::Input, "too many facets");
  }

  const size_t nv = v.points.size();
  const size_t nr = v.rays.size();
  std::vector<Mask> gen_active(nv + nr);
  for (size_t g = 0; g < nv + nr; ++g) {
    for (size_t i = 0; i < m; ++i) {
      const Halfspace& hs = h.halfspaces[i];
      const bool active = g < nv ? dot(hs.normal, v.points[g]) == hs.offset
                                 : dot(hs.normal, v.rays[g - nv]) == 0;
      if (active) gen_active[g].set(i);
    }
  }

  // Closure of a constraint set: intersect the active sets of the
  // generators that satisfy it; no surviving vertex means the face is empty.
  auto closure = [&](const Mask& a) -> std::optional<Mask> {
    Mask cl;
    cl.set();
    bool has_vertex = false;
    for (size_t g = 0; g < nv + nr; ++g) {
      if ((gen_active[g] & a) == a) {
        cl &= gen_active[g];
        if (g < nv) has_vertex = true;
      }
    }
    if (!has_vertex) return std::nullopt;
    return cl;
  };

  const auto root = closure(Mask());
  if (!root || root->any()) {
    throw std::logic_error("face lattice: implicit equalities in a minimal H-rep");
  }

  std::unordered_set<Mask> seen;
  std::vector<Mask> queue;
  seen.insert(*root);
  queue.push_back(*root);
  std::vector<Mask> found;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const Mask cur = queue[qi];
    for (size_t i = 0; i < m; ++i) {
      if (cur.test(i)) continue;
      Mask probe = cur;
      probe.set(i);
      const auto cl = closure(probe);
      if (!cl) continue;
      if (seen.insert(*cl).second) {
        queue.push_back(*cl);
        found.push_back(*cl);
      }
    }
  }

  FaceLattice lat;
  for (const Mask& mask : found) {
    Face f;
    f.active = mask;
    for (size_t i = 0; i < m; ++i) {
      if (mask.test(i)) f.active_list.push_back(static_cast<int>(i));
    }
    for (size_t g = 0; g < nv + nr; ++g) {
      if ((gen_active[g] & mask) != mask) continue;
      if (g < nv) {
        f.vertices.push_back(v.points[g]);
      } else {
        f.rays.push_back(v.rays[g - nv]);
      }
    }
    f.bounded = f.rays.empty();
    std::vector<VecR> span;
    for (const VecR& pt : f.vertices) span.push_back(pt - f.vertices.front());
    for (const VecR& r : f.rays) span.push_back(r);
    f.dim = rank_of(span);
    lat.faces.push_back(std::move(f));
  }

  std::sort(lat.faces.begin(), lat.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.active_list < b.active_list;
  });
  return lat;
}

std::mutex lattice_mutex;

}  // namespace

const FaceLattice& Polyhedron::lattice() const {
  std::scoped_lock lock(lattice_mutex);
  if (!lattice_) {
    lattice_ = std::make_shared<const FaceLattice>(build_lattice(*this));
  }
  return *lattice_;
}

std::vector<int> FaceLattice::of_dim(int d) const {
  std::vector<int> out;
  for (size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].dim == d) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool FaceLattice::subface(const Face& a, const Face& b) {
  return (a.active & b.active) == b.active;
}

namespace {

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool face_has_vertex(const Face& f, const VecR& v) {
  for (const VecR& w : f.vertices) {
    if (w == v) return true;
  }
  return false;
}

/// Recursive lexicographic triangulation of the faces of a bounded
/// polytope: a face is coned from its lex-min vertex over the
/// triangulations of the subfacets avoiding that vertex.
class Triangulator {
 public:
  explicit Triangulator(const FaceLattice& lat)
      : lat_(lat), memo_(lat.faces.size()), done_(lat.faces.size(), false) {}

  const std::vector<std::vector<VecR>>& of(int fi) {
    if (!done_[fi]) compute(fi);
    return memo_[fi];
  }

 private:
  void compute(int fi) {
    const Face& f = lat_.faces[fi];
    std::vector<std::vector<VecR>> tris;
    if (f.dim == 0) {
      tris.push_back({f.vertices.front()});
    } else {
      const VecR& apex = f.vertices.front();  // lex-min (vertices are sorted)
      for (size_t gi = 0; gi < lat_.faces.size(); ++gi) {
        const Face& g = lat_.faces[gi];
        if (g.dim != f.dim - 1 || !FaceLattice::subface(g, f)) continue;
        if (face_has_vertex(g, apex)) continue;
        for (const auto& s : of(static_cast<int>(gi))) {
          std::vector<VecR> simplex = s;
          simplex.push_back(apex);
          tris.push_back(std::move(simplex));
        }
      }
    }
    memo_[fi] = std::move(tris);
    done_[fi] = true;
  }

  const FaceLattice& lat_;
  std::vector<std::vector<std::vector<VecR>>> memo_;
  std::vector<bool> done_;
};

}  // namespace

Rat volume_exact(const Polyhedron& p) {
  if (!p.bounded()) {
    throw PolyhedronError(PolyhedronError::Code::Unbounded, "volume of an unbounded set");
  }
  if (!p.full_dim()) {
    throw PolyhedronError(PolyhedronError::Code::Dimension,
                          "exact volume requires a full-dimensional polytope");
  }
  const int n = p.ambient_dim();
  if (p.v().points.size() == 1) return 0;  // cannot happen for full-dim, defensive
  const FaceLattice& lat = p.lattice();
  Triangulator tri(lat);
  const VecR& apex = p.v().points.front();
  Rat total = 0;
  for (size_t fi = 0; fi < lat.faces.size(); ++fi) {
    const Face& f = lat.faces[fi];
    if (f.dim != n - 1 || face_has_vertex(f, apex)) continue;
    for (const auto& s : tri.of(static_cast<int>(fi))) {
      MatR m(n, n);
      for (int k = 0; k < n; ++k) m.col(k) = s[k] - apex;
      total += abs(determinant(m));
    }
  }
  return total / factorial(n);
}

double region_volume(const Polyhedron& p) {
  if (!p.bounded()) {
    throw PolyhedronError(PolyhedronError::Code::Unbounded, "volume of an unbounded region");
  }
  if (!p.full_dim()) return 0.0;
  return to_double(volume_exact(p));
}

double polytope_volume(const std::vector<VecR>& points, int k) {
  if (k < 1) throw PolyhedronError(PolyhedronError::Code::Input, "polytope_volume: k < 1");
  if (points.empty()) return 0.0;
  std::vector<VecR> pts = points;
  sort_dedup(pts);
  if (pts.size() < static_cast<size_t>(k) + 1) return 0.0;

  const VecR& p0 = pts.front();
  std::vector<VecR> basis;
  for (const VecR& p : pts) {
    if (p == p0) continue;
    std::vector<VecR> probe = basis;
    probe.push_back(p - p0);
    if (rank_of(probe) > static_cast<int>(basis.size())) basis.push_back(p - p0);
  }
  if (static_cast<int>(basis.size()) < k) return 0.0;
  if (static_cast<int>(basis.size()) > k) {
    throw PolyhedronError(PolyhedronError::Code::Dimension,
                          "polytope_volume: hull dimension exceeds target");
  }

  MatR b(p0.size(), k);
  for (int j = 0; j < k; ++j) b.col(j) = basis[j];
  const MatR gram = b.transpose() * b;

  VRep coords;
  for (const VecR& p : pts) {
    const auto lambda = solve(gram, b.transpose() * (p - p0));
    if (!lambda) throw std::logic_error("polytope_volume: inconsistent projection");
    coords.points.push_back(*lambda);
  }
  const Rat vol_coords = volume_exact(Polyhedron::from_v(coords));
  return to_double(vol_coords) * std::sqrt(to_double(determinant(gram)));
}

double facet_volume(const Face& f, int ambient_dim) {
  if (!f.bounded) {
    throw PolyhedronError(PolyhedronError::Code::Unbounded, "area of an unbounded face");
  }
  return polytope_volume(f.vertices, ambient_dim - 1);
}

VecR relative_interior_point(const Face& f) {
  if (f.vertices.empty()) {
    throw PolyhedronError(PolyhedronError::Code::Input, "face without vertices");
  }
  VecR x = VecR::Zero(f.vertices.front().size());
  for (const VecR& v : f.vertices) x += v;
  x *= Rat(1) / Rat(static_cast<int>(f.vertices.size()));
  for (const VecR& r : f.rays) x += r;
  return x;
}

Rat squared_distance(const VecR& x, const Polyhedron& q) {
  if (q.contains(x)) return 0;
  const FaceLattice& lat = q.lattice();
  std::optional<Rat> best;
  for (const Face& f : lat.faces) {
    std::vector<VecR> basis;
    for (const VecR& v : f.vertices) {
      if (v != f.vertices.front()) basis.push_back(v - f.vertices.front());
    }
    for (const VecR& r : f.rays) basis.push_back(r);
    const VecR proj = project_affine(x, basis, f.vertices.front());
    if (!q.contains(proj)) continue;
    const Rat d2 = (x - proj).squaredNorm();
    if (!best || d2 < *best) best = d2;
  }
  if (!best) throw std::logic_error("squared_distance: no boundary candidate");
  return *best;
}

double hausdorff_distance(const Polyhedron& a, const Polyhedron& b) {
  if (!a.bounded() || !b.bounded()) {
    throw PolyhedronError(PolyhedronError::Code::Unbounded,
                          "Hausdorff distance of unbounded sets");
  }
  Rat worst = 0;
  for (const VecR& v : a.v().points) worst = std::max(worst, squared_distance(v, b));
  for (const VecR& v : b.v().points) worst = std::max(worst, squared_distance(v, a));
  return std::sqrt(to_double(worst));
}

}  // namespace pcone
