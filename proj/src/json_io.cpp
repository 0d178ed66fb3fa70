#include "pcone/json_io.hpp"

#include <cmath>

namespace pcone {

namespace {

void require_version(const Json& j, const char* what) {
  if (!j.is_object())
    throw JsonSchemaError(std::string(what) + ": expected a JSON object");
  if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != kSchemaVersion)
    throw JsonSchemaError(std::string(what) + ": missing or unsupported schema version (want \"v\": 1)");
}

const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw JsonSchemaError(std::string(what) + ": missing field \"" + key + "\"");
  return j[key];
}

Rat parse_rat(const std::string& s) {
  try {
    return rat_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw JsonSchemaError(std::string("not a rational: ") + e.what());
  }
}

Json face_to_json(const PolyCone& c, const Face& f, int index) {
  Json out;
  out["index"] = index;
  out["dim"] = f.dim;
  out["bounded"] = f.bounded;
  out["class"] = face_class_name(classify_face(c, f));
  out["active"] = f.active_list;
  Json verts = Json::array();
  for (const VecR& v : f.vertices) verts.push_back(rat_vec_to_json(v));
  out["vertices"] = std::move(verts);
  Json rays = Json::array();
  for (const VecR& r : f.rays) rays.push_back(rat_vec_to_json(r));
  out["rays"] = std::move(rays);
  return out;
}

}  // namespace

Rat rat_from_json(const Json& j, bool allow_float) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_float()) {
    if (!allow_float)
      throw JsonSchemaError("floating number where an exact rational is required "
                            "(use \"p/q\" or run with the float scalar mode)");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw JsonSchemaError("non-finite number");
    return rat_from_double(x);
  }
  throw JsonSchemaError("expected a rational (integer or \"p/q\" string)");
}

Json rat_vec_to_json(const VecR& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(rat_to_string(v[i]));
  return out;
}

VecR rat_vec_from_json(const Json& j, bool allow_float) {
  if (!j.is_array() || j.empty()) throw JsonSchemaError("expected a nonempty array of rationals");
  VecR v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = rat_from_json(j[i], allow_float);
  return v;
}

Json float_vec_to_json(const VecD& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

VecD float_vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw JsonSchemaError("expected a nonempty array of numbers");
  VecD v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) throw JsonSchemaError("expected a number");
    v[i] = j[i].get<double>();
    if (!std::isfinite(v[i])) throw JsonSchemaError("non-finite number");
  }
  return v;
}

Json cone_to_json(const PolyCone& c) {
  Json out;
  out["v"] = kSchemaVersion;
  Json gens = Json::array();
  for (const VecR& g : c.generators()) gens.push_back(rat_vec_to_json(g));
  out["generators"] = std::move(gens);
  return out;
}

PolyCone cone_from_json(const Json& j, bool allow_float) {
  require_version(j, "cone");
  const Json& gens = require_field(j, "generators", "cone");
  if (!gens.is_array() || gens.empty())
    throw JsonSchemaError("cone: \"generators\" must be a nonempty array");
  std::vector<VecR> vs;
  for (const Json& g : gens) vs.push_back(rat_vec_from_json(g, allow_float));
  for (const VecR& v : vs)
    if (v.size() != vs.front().size())
      throw JsonSchemaError("cone: generators of mixed dimensions");
  return PolyCone::from_generators(vs);
}

Json pseudocone_to_json(const PseudoCone& k) {
  Json out;
  out["v"] = kSchemaVersion;
  out["cone"] = cone_to_json(k.cone());
  Json rows = Json::array();
  for (const Halfspace& hs : k.h().halfspaces) {
    Json row;
    row["normal"] = rat_vec_to_json(hs.normal);
    row["offset"] = rat_to_string(hs.offset);
    rows.push_back(std::move(row));
  }
  out["halfspaces"] = std::move(rows);
  return out;
}

PseudoCone pseudocone_from_json(const Json& j, bool allow_float) {
  require_version(j, "pseudocone");
  const PolyCone c = cone_from_json(require_field(j, "cone", "pseudocone"), allow_float);
  const Json& rows = require_field(j, "halfspaces", "pseudocone");
  if (!rows.is_array()) throw JsonSchemaError("pseudocone: \"halfspaces\" must be an array");
  HRep h;
  for (const Json& row : rows) {
    Halfspace hs;
    hs.normal = rat_vec_from_json(require_field(row, "normal", "halfspace"), allow_float);
    hs.offset = rat_from_json(require_field(row, "offset", "halfspace"), allow_float);
    if (hs.normal.size() != c.ambient_dim())
      throw JsonSchemaError("pseudocone: halfspace dimension differs from the cone");
    h.halfspaces.push_back(std::move(hs));
  }
  return PseudoCone::validate(c, h);
}

Json measure_to_json(const AtomicMeasure& m) {
  Json out;
  out["v"] = kSchemaVersion;
  Json atoms = Json::array();
  for (const AtomicMeasure::Atom& a : m.atoms()) {
    Json atom;
    atom["dir"] = float_vec_to_json(a.dir);
    atom["weight"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

AtomicMeasure measure_from_json(const PolyCone& c, const Json& j) {
  require_version(j, "measure");
  const Json& atoms = require_field(j, "atoms", "measure");
  if (!atoms.is_array()) throw JsonSchemaError("measure: \"atoms\" must be an array");
  std::vector<AtomicMeasure::Atom> parsed;
  for (const Json& a : atoms) {
    AtomicMeasure::Atom atom;
    atom.dir = float_vec_from_json(require_field(a, "dir", "atom"));
    const Json& w = require_field(a, "weight", "atom");
    if (!w.is_number()) throw JsonSchemaError("atom: \"weight\" must be a number");
    atom.weight = w.get<double>();
    if (atom.dir.size() != c.ambient_dim())
      throw JsonSchemaError("atom: direction dimension differs from the cone");
    parsed.push_back(std::move(atom));
  }
  return AtomicMeasure(c, std::move(parsed));
}

Json volume_to_json(const CoconvexVolume& v) {
  Json out;
  out["v"] = kSchemaVersion;
  out["finite"] = v.finite;
  if (v.finite) {
    out["exact"] = rat_to_string(v.exact);
    out["triangulation"] = v.triangulation;
    out["divergence"] = v.divergence;
  } else {
    out["exact"] = nullptr;
    out["triangulation"] = nullptr;
    out["divergence"] = nullptr;
  }
  return out;
}

Json solver_state_to_json(const SolverState& st) {
  Json out;
  Json normals = Json::array();
  for (const VecD& u : st.normals) normals.push_back(float_vec_to_json(u));
  out["normals"] = std::move(normals);
  out["hbar"] = st.hbar;
  out["volume"] = st.volume;
  out["facet_areas"] = st.facet_areas;
  out["lambda"] = st.lambda;
  out["iterations"] = st.iterations;
  out["residual"] = st.residual;
  return out;
}

Json diagnostics_json(int iterations, double residual, double lambda,
                      std::optional<double> volume) {
  Json out;
  out["iterations"] = iterations;
  out["residual"] = residual;
  out["lambda"] = lambda;
  if (volume && std::isfinite(*volume))
    out["volume"] = *volume;
  else
    out["volume"] = nullptr;
  return out;
}

Json pipeline_report_to_json(const PipelineReport& rep) {
  Json out;
  out["v"] = kSchemaVersion;
  out["t_ladder"] = rep.t_ladder;
  Json stages = Json::array();
  for (const PipelineStage& st : rep.stages) {
    Json s;
    s["stage"] = st.stage;
    s["tau"] = st.tau;
    s["atom_count"] = st.atom_count;
    s["mass"] = st.mass;
    s["depth_moment"] = st.depth_moment;
    s["lambda"] = st.lambda;
    s["b"] = st.b;
    s["volume"] = st.volume;
    s["iterations"] = st.iterations;
    s["residual"] = st.residual;
    s["trunc_dist"] = st.trunc_dist;
    s["hbar_shift"] = st.hbar_shift;
    stages.push_back(std::move(s));
  }
  out["stages"] = std::move(stages);
  return out;
}

Json face_report(const PseudoCone& k) {
  Json out;
  out["v"] = kSchemaVersion;
  Json faces = Json::array();
  int counts[4] = {0, 0, 0, 0};
  const auto& fs = k.lattice().faces;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    faces.push_back(face_to_json(k.cone(), fs[i], static_cast<int>(i)));
    counts[static_cast<int>(classify_face(k.cone(), fs[i]))]++;
  }
  out["faces"] = std::move(faces);
  Json cnt;
  cnt[face_class_name(FaceClass::BoundedInterior)] = counts[0];
  cnt[face_class_name(FaceClass::BoundedBoundary)] = counts[1];
  cnt[face_class_name(FaceClass::UnboundedInterior)] = counts[2];
  cnt[face_class_name(FaceClass::UnboundedBoundary)] = counts[3];
  out["counts"] = std::move(cnt);
  return out;
}

Json conjugate_report(const PseudoCone& k) {
  const PseudoCone ks = copolar(k);
  const std::vector<FaceDuality> duals = classify_faces(k, ks);
  Json out;
  out["v"] = kSchemaVersion;
  out["copolar"] = pseudocone_to_json(ks);
  Json faces = Json::array();
  const auto& fs = k.lattice().faces;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Json f;
    f["index"] = static_cast<int>(i);
    f["dim"] = fs[i].dim;
    f["class"] = face_class_name(duals[i].cls);
    if (duals[i].conjugate)
      f["conjugate_index"] = *duals[i].conjugate;
    else
      f["conjugate_index"] = nullptr;
    faces.push_back(std::move(f));
  }
  out["faces"] = std::move(faces);
  Json cfaces = Json::array();
  const auto& gs = ks.lattice().faces;
  for (std::size_t i = 0; i < gs.size(); ++i)
    cfaces.push_back(face_to_json(ks.cone(), gs[i], static_cast<int>(i)));
  out["copolar_faces"] = std::move(cfaces);
  return out;
}

Json identity_checks_to_json(const std::vector<IdentityCheck>& checks) {
  Json out;
  out["v"] = kSchemaVersion;
  Json arr = Json::array();
  bool all = true;
  for (const IdentityCheck& c : checks) {
    Json e;
    e["name"] = c.name;
    e["cases"] = c.cases;
    e["failures"] = c.failures;
    e["detail"] = c.detail;
    arr.push_back(std::move(e));
    all = all && c.pass();
  }
  out["checks"] = std::move(arr);
  out["pass"] = all;
  return out;
}

}  // namespace pcone
