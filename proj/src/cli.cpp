#include "pcone/cli.hpp"

#include "pcone/instances.hpp"
#include "pcone/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace pcone {
namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw JsonSchemaError("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json parse_doc(const std::string& path) {
  try {
    return Json::parse(read_input(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSchemaError("malformed JSON in " + path + ": " + e.what());
  }
}

/// Tool outputs wrap their payload ({"pseudocone": ...}), so results can be
/// piped straight back in; unwrap such a document to the named field.
Json unwrap(const Json& doc, const char* key) {
  if (doc.is_object() && doc.contains(key) && doc.at(key).is_object()) return doc.at(key);
  return doc;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

Json null_diag() { return diagnostics_json(0, 0.0, 0.0, std::nullopt); }

Json error_body(const char* kind, const char* invariant, const std::string& message) {
  Json e;
  e["kind"] = kind;
  if (invariant != nullptr) e["invariant"] = invariant;
  e["message"] = message;
  return e;
}

int emit_error(std::ostream& out, std::ostream& err, int code, const char* kind,
               const char* invariant, const std::string& message) {
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["error"] = error_body(kind, invariant, message);
  emit(out, doc);
  err << "error: " << message << "\n";
  return code;
}

const char* cone_error_invariant(ConeError::Code c) {
  switch (c) {
    case ConeError::Code::NotPointed:
      return "cone-not-pointed";
    case ConeError::Code::NotFullDim:
      return "cone-not-full-dimensional";
    case ConeError::Code::Input:
      return "input";
  }
  return "input";
}

const char* polyhedron_error_invariant(PolyhedronError::Code c) {
  switch (c) {
    case PolyhedronError::Code::Empty:
      return "empty-intersection";
    case PolyhedronError::Code::Lineality:
      return "lineality-space";
    case PolyhedronError::Code::Unbounded:
      return "unbounded";
    case PolyhedronError::Code::Dimension:
      return "dimension";
    case PolyhedronError::Code::Input:
      return "input";
  }
  return "input";
}

struct CliOptions {
  RunConfig cfg;
  bool allow_float = false;
  std::string pseudocone_path;
  std::string cone_path;
  std::string measure_path;
  std::string spec_path;
  std::string dir_json;
  std::string point_json;
  int dim = 2;
  bool dim_set = false;
  int count = 10;
  int samples = 10;
  int stages = 5;
  bool stages_set = false;
};

PseudoCone load_pseudocone(const CliOptions& o) {
  return pseudocone_from_json(unwrap(parse_doc(o.pseudocone_path), "pseudocone"), o.allow_float);
}

PolyCone load_cone(const CliOptions& o) {
  return cone_from_json(unwrap(parse_doc(o.cone_path), "cone"), o.allow_float);
}

int cmd_validate(const CliOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const PseudoCone k = load_pseudocone(o);
    Json doc;
    doc["v"] = kSchemaVersion;
    doc["valid"] = true;
    doc["pseudocone"] = pseudocone_to_json(k);
    doc["diagnostics"] = null_diag();
    emit(out, doc);
    return 0;
  } catch (const ValidationError& e) {
    Json doc;
    doc["v"] = kSchemaVersion;
    doc["valid"] = false;
    doc["error"] = error_body("invariant-violation", e.code_string(), e.what());
    emit(out, doc);
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_copolar(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["pseudocone"] = pseudocone_to_json(copolar(k));
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_faces(const CliOptions& o, std::ostream& out) {
  Json doc = face_report(load_pseudocone(o));
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_conjugate(const CliOptions& o, std::ostream& out) {
  Json doc = conjugate_report(load_pseudocone(o));
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_measure(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  Json doc = measure_to_json(surface_area_measure(k));
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_volume(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  const CoconvexVolume vol = coconvex_volume(k);
  Json doc = volume_to_json(vol);
  doc["diagnostics"] = diagnostics_json(
      0, 0.0, 0.0, vol.finite ? std::optional<double>(vol.triangulation) : std::nullopt);
  emit(out, doc);
  return 0;
}

int cmd_support(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  Json dj;
  try {
    dj = Json::parse(o.dir_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSchemaError(std::string("malformed --dir: ") + e.what());
  }
  const VecR u = rat_vec_from_json(dj, o.allow_float);
  if (u.size() != k.ambient_dim()) throw JsonSchemaError("--dir has the wrong dimension");
  if (u.isZero()) throw JsonSchemaError("--dir must be nonzero");
  const SupportValue sv = support(k, u);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["unbounded"] = sv.unbounded;
  if (sv.unbounded) {
    doc["value"] = nullptr;
    doc["hbar"] = nullptr;
  } else {
    doc["value"] = rat_to_string(sv.value);
    const double norm = to_double(u).norm();
    doc["hbar"] = -to_double(sv.value) / norm;
  }
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_radial(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  Json pj;
  try {
    pj = Json::parse(o.point_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSchemaError(std::string("malformed --point: ") + e.what());
  }
  const VecR x = rat_vec_from_json(pj, o.allow_float);
  if (x.size() != k.ambient_dim()) throw JsonSchemaError("--point has the wrong dimension");
  const Rat value = radial(k, x);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["value"] = rat_to_string(value);
  doc["float"] = to_double(value);
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_bdist(const CliOptions& o, std::ostream& out) {
  const PseudoCone k = load_pseudocone(o);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["b"] = distance_b(k);
  doc["nearest"] = rat_vec_to_json(nearest_point(k));
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

int cmd_solve(const CliOptions& o, std::ostream& out) {
  const PolyCone c = load_cone(o);
  const AtomicMeasure phi =
      measure_from_json(c, unwrap(parse_doc(o.measure_path), "measure"));
  const SolveResult r = solve_minkowski(c, phi, o.cfg);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["pseudocone"] = pseudocone_to_json(r.k);
  doc["state"] = solver_state_to_json(r.state);
  doc["diagnostics"] =
      diagnostics_json(r.state.iterations, r.state.residual, r.state.lambda, r.state.volume);
  emit(out, doc);
  return 0;
}

int cmd_pipeline(const CliOptions& o, std::ostream& out) {
  const PolyCone c = load_cone(o);
  double decay = 0.5;
  int stages = o.stages;
  if (!o.spec_path.empty()) {
    const Json sd = parse_doc(o.spec_path);
    if (!sd.is_object()) throw JsonSchemaError("pipeline spec must be a JSON object");
    if (!sd.contains("v") || !sd.at("v").is_number_integer() ||
        sd.at("v").get<int>() != kSchemaVersion)
      throw JsonSchemaError("pipeline spec needs \"v\": 1");
    if (!sd.contains("angles_rule") || sd.at("angles_rule") != "dyadic")
      throw JsonSchemaError("pipeline spec: only \"angles_rule\": \"dyadic\" is supported");
    if (!sd.contains("weights_rule") || !sd.at("weights_rule").is_string())
      throw JsonSchemaError("pipeline spec needs a \"weights_rule\" string");
    const std::string w = sd.at("weights_rule").get<std::string>();
    if (w == "dyadic-decay")
      decay = 0.5;
    else if (w == "dyadic-growth")
      decay = 2.0;
    else
      throw JsonSchemaError(
          "pipeline spec: \"weights_rule\" must be \"dyadic-decay\" or \"dyadic-growth\"");
    if (sd.contains("stages")) {
      if (!sd.at("stages").is_number_integer() || sd.at("stages").get<int>() < 1)
        throw JsonSchemaError("pipeline spec: \"stages\" must be a positive integer");
      if (!o.stages_set) stages = sd.at("stages").get<int>();
    }
  }
  const PipelineReport rep = truncation_pipeline(c, dyadic_measure_generator(c, decay), stages, o.cfg);
  Json doc = pipeline_report_to_json(rep);
  const PipelineStage& last = rep.stages.back();
  doc["diagnostics"] = diagnostics_json(last.iterations, last.residual, last.lambda, last.volume);
  emit(out, doc);
  return 0;
}

int cmd_check_identities(const CliOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<PseudoCone> corpus;
  if (o.dim_set) {
    corpus = gen_corpus(o.cfg.seed, o.dim, o.count);
  } else {
    corpus = gen_corpus(o.cfg.seed, 2, o.count);
    const std::vector<PseudoCone> extra =
        gen_corpus(o.cfg.seed + 1, 3, std::max(2, o.count / 2));
    corpus.insert(corpus.end(), extra.begin(), extra.end());
  }
  const std::vector<IdentityCheck> checks = identity_battery(corpus, o.cfg.seed, o.samples);
  Json doc = identity_checks_to_json(checks);
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  for (const IdentityCheck& c : checks) {
    if (!c.pass()) {
      err << "identity check failed: " << c.name << " (" << c.failures << "/" << c.cases
          << " cases): " << c.detail << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_gen(const CliOptions& o, std::ostream& out) {
  const std::vector<PseudoCone> corpus = gen_corpus(o.cfg.seed, o.dim, o.count);
  Json doc;
  doc["v"] = kSchemaVersion;
  doc["seed"] = o.cfg.seed;
  doc["dim"] = o.dim;
  doc["count"] = o.count;
  Json list = Json::array();
  for (const PseudoCone& k : corpus) list.push_back(pseudocone_to_json(k));
  doc["instances"] = std::move(list);
  doc["diagnostics"] = null_diag();
  emit(out, doc);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polyhedral pseudo-cone toolkit: copolarity, conjugate faces, facet-area "
               "measures, complement volumes, and the inverse (Minkowski-type) solver"};
  app.require_subcommand(1);

  CliOptions o;
  double tol = 1e-9;
  std::string scalar = "rational";
  unsigned long long seed = 0;

  app.add_option("--tol", tol, "absolute/relative tolerance for float comparisons");
  app.add_option("--residual-tol", o.cfg.residual_tol, "solver convergence threshold");
  app.add_option("--max-iter", o.cfg.max_iter, "solver iteration budget");
  app.add_option("--seed", seed, "seed for generated instances and sampling");
  app.add_option("--scalar", scalar, "scalar mode: rational (exact input) or float (snapped)")
      ->check(CLI::IsMember({"rational", "float"}));
  CLI::Option* dim_opt =
      app.add_option("--dim", o.dim, "ambient dimension for generators")->check(CLI::Range(2, 4));
  CLI::Option* stages_opt = app.add_option("--stages", o.stages, "pipeline stage count");

  const auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  CLI::App* validate_cmd = sub("validate", "check an H-representation against its cone");
  CLI::App* copolar_cmd = sub("copolar", "copolar body of a pseudo-cone");
  CLI::App* faces_cmd = sub("faces", "face lattice with boundary/boundedness classes");
  CLI::App* conjugate_cmd = sub("conjugate", "conjugate faces on the copolar body");
  CLI::App* measure_cmd = sub("measure", "facet-area measure of a pseudo-cone");
  CLI::App* volume_cmd = sub("volume", "complement volume inside the cone");
  CLI::App* support_cmd = sub("support", "support function value in one direction");
  CLI::App* radial_cmd = sub("radial", "radial function value at one interior point");
  CLI::App* bdist_cmd = sub("bdist", "minimum-norm point and its distance");
  CLI::App* solve_cmd = sub("solve", "recover the pseudo-cone with a given facet-area measure");
  CLI::App* pipeline_cmd = sub("pipeline", "deepening measure pipeline with truncation distances");
  CLI::App* check_cmd = sub("check-identities", "run the duality identity battery");
  CLI::App* gen_cmd = sub("gen", "generate a deterministic pseudo-cone corpus");

  for (CLI::App* s : {validate_cmd, copolar_cmd, faces_cmd, conjugate_cmd, measure_cmd,
                      volume_cmd, support_cmd, radial_cmd, bdist_cmd}) {
    s->add_option("--pseudocone", o.pseudocone_path, "pseudo-cone JSON file ('-' for stdin)")
        ->required();
  }
  support_cmd->add_option("--dir", o.dir_json, "direction as a JSON array of rationals")
      ->required();
  radial_cmd->add_option("--point", o.point_json, "point as a JSON array of rationals")
      ->required();
  for (CLI::App* s : {solve_cmd, pipeline_cmd}) {
    s->add_option("--cone", o.cone_path, "cone JSON file ('-' for stdin)")->required();
  }
  solve_cmd->add_option("--measure", o.measure_path, "measure JSON file")->required();
  pipeline_cmd->add_option("--spec", o.spec_path,
                           "generator spec JSON file (angles_rule, weights_rule, stages)");
  check_cmd->add_option("--count", o.count, "instances per dimension");
  check_cmd->add_option("--samples", o.samples, "sample points per instance");
  gen_cmd->add_option("--count", o.count, "number of instances");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pcone");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  o.cfg.tol.abs_tol = tol;
  o.cfg.tol.rel_tol = tol;
  o.cfg.seed = static_cast<unsigned long>(seed);
  o.allow_float = (scalar == "float");
  o.cfg.scalar_mode =
      o.allow_float ? RunConfig::ScalarMode::Float : RunConfig::ScalarMode::Rational;
  o.dim_set = (dim_opt->count() > 0);
  o.stages_set = (stages_opt->count() > 0);

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out, err);
    if (copolar_cmd->parsed()) return cmd_copolar(o, out);
    if (faces_cmd->parsed()) return cmd_faces(o, out);
    if (conjugate_cmd->parsed()) return cmd_conjugate(o, out);
    if (measure_cmd->parsed()) return cmd_measure(o, out);
    if (volume_cmd->parsed()) return cmd_volume(o, out);
    if (support_cmd->parsed()) return cmd_support(o, out);
    if (radial_cmd->parsed()) return cmd_radial(o, out);
    if (bdist_cmd->parsed()) return cmd_bdist(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (pipeline_cmd->parsed()) return cmd_pipeline(o, out);
    if (check_cmd->parsed()) return cmd_check_identities(o, out, err);
    if (gen_cmd->parsed()) return cmd_gen(o, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const JsonSchemaError& e) {
    return emit_error(out, err, 1, "malformed-input", nullptr, e.what());
  } catch (const SolverError& e) {
    Json doc;
    doc["v"] = kSchemaVersion;
    doc["error"] = error_body("non-convergence", nullptr, e.what());
    doc["state"] = solver_state_to_json(e.state);
    doc["diagnostics"] =
        diagnostics_json(e.state.iterations, e.state.residual, e.state.lambda, e.state.volume);
    emit(out, doc);
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    return emit_error(out, err, 2, "invariant-violation", e.code_string(), e.what());
  } catch (const ConeError& e) {
    return emit_error(out, err, 2, "invariant-violation", cone_error_invariant(e.code), e.what());
  } catch (const PolyhedronError& e) {
    return emit_error(out, err, 2, "invariant-violation", polyhedron_error_invariant(e.code),
                      e.what());
  } catch (const std::invalid_argument& e) {
    return emit_error(out, err, 2, "invariant-violation", "input", e.what());
  } catch (const std::exception& e) {
    return emit_error(out, err, 2, "internal", nullptr, e.what());
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<size_t>(argc) - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace pcone
