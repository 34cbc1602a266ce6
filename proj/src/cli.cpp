#include "homothety/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "homothety/json_io.hpp"

namespace homothety::cli {

namespace {

struct RunConfig {
  std::string spec_path;
  std::string point;
  int depth = 8;
  std::string eps = "0.25";
  std::string region;
  unsigned relation_bound = kDefaultRelationBound;
  std::string format = "json";
  std::string csv;
  std::size_t cap = kDefaultOrbitCap;
};

Vector parse_point(const RunConfig& cfg, std::size_t dim) {
  if (cfg.point.empty()) throw SpecError("--point", "required for this command");
  Json j;
  try {
    j = Json::parse(cfg.point);
  } catch (const Json::parse_error& e) {
    throw SpecError("--point", e.what());
  }
  Vector x = vector_from_json(j, "--point");
  if (x.dim() != dim) {
    throw SpecError("--point", "dimension mismatch: expected " + std::to_string(dim) + ", got " +
                                   std::to_string(x.dim()));
  }
  return x;
}

Rational parse_eps(const RunConfig& cfg) {
  Rational eps;
  try {
    eps = parse_rational(cfg.eps);
  } catch (const std::exception& e) {
    throw SpecError("--eps", e.what());
  }
  if (sgn(eps) <= 0) throw SpecError("--eps", "must be positive");
  return eps;
}

Box parse_region(const RunConfig& cfg, std::size_t dim) {
  Box box;
  if (cfg.region.empty()) {
    box.bounds.assign(dim, {Rational(-2), Rational(2)});
    return box;
  }
  std::stringstream ss(cfg.region);
  std::string axis;
  while (std::getline(ss, axis, ';')) {
    const auto comma = axis.find(',');
    if (comma == std::string::npos) throw SpecError("--region", "expected lo,hi per axis, got '" + axis + "'");
    try {
      box.bounds.emplace_back(parse_rational(axis.substr(0, comma)), parse_rational(axis.substr(comma + 1)));
    } catch (const std::exception& e) {
      throw SpecError("--region", e.what());
    }
    if (box.bounds.back().second < box.bounds.back().first) throw SpecError("--region", "empty interval '" + axis + "'");
  }
  if (box.dim() != dim) {
    throw SpecError("--region", "expected " + std::to_string(dim) + " intervals, got " + std::to_string(box.dim()));
  }
  return box;
}

void emit(std::ostream& out, const RunConfig& cfg, const Json& report, const std::string& text) {
  if (cfg.format == "json") {
    out << report.dump(2) << '\n';
  } else {
    out << text;
  }
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_spec(cfg.spec_path);
  const Json r = analysis_report(spec, cfg.relation_bound);
  std::ostringstream t;
  t << "non-abelian: yes\ncase: " << r["case"].get<std::string>() << '\n';
  t << "ratio closure: " << r["scale_set"]["positive_part"].get<std::string>()
    << (r["scale_set"]["closure_is_real_line"].get<bool>() ? " (closure is R)" : "") << '\n';
  if (!r["E_G"].is_null()) t << "dim E_G: " << r["E_G"]["dim"].get<std::size_t>() << '\n';
  if (!r["H_G"].is_null()) {
    const Json& c = r["H_G"]["closure"];
    t << "closure of H_G: dense part dim " << c["dense_part"].size() << ", lattice rank " << c["lattice_part"].size()
      << '\n';
  }
  t << "dense orbit: " << (r["predicates"]["dense_orbit"].get<bool>() ? "yes" : "no") << '\n';
  emit(out, cfg, r, t.str());
  return kOk;
}

int cmd_closure(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_spec(cfg.spec_path);
  const Vector x = parse_point(cfg, spec.dim());
  const OrbitClosureDesc desc = orbit_closure(spec, x, cfg.relation_bound);
  const Json r = to_json(desc);
  std::ostringstream t;
  t << "variant: " << desc.variant_name() << "\ncomponents: ";
  if (auto n = desc.component_count()) {
    t << *n << '\n';
  } else {
    t << "infinitely many\n";
  }
  emit(out, cfg, r, t.str());
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_spec(cfg.spec_path);
  const Vector x = parse_point(cfg, spec.dim());
  const Rational eps = parse_eps(cfg);
  const Box region = parse_region(cfg, spec.dim());
  const OrbitClosureDesc desc = orbit_closure(spec, x, cfg.relation_bound);
  const OrbitEnumeration orbit = enumerate_orbit(spec, x, cfg.depth, cfg.cap);
  VerificationReport containment = verify_containment(orbit.points, desc, kDefaultMembershipTolerance);
  VerificationReport covering =
      verify_covering(orbit.points, desc, region, eps.get_d(), Rational(eps / 2), CoveringOptions{});
  containment.depth = covering.depth = static_cast<std::size_t>(cfg.depth);
  const bool passed = containment.passed() && covering.passed();
  Json r{{"closure", to_json(desc)},
         {"orbit", {{"depth", cfg.depth}, {"points", orbit.size()}, {"truncated", orbit.truncated}}},
         {"containment", to_json(containment)},
         {"covering", to_json(covering)},
         {"passed", passed}};
  std::ostringstream t;
  t << "closure: " << desc.variant_name() << "\norbit points: " << orbit.size()
    << (orbit.truncated ? " (truncated)" : "") << "\ncontainment violations: "
    << containment.containment_violations.size() << "\ncovering gaps: " << covering.gap_count << " of "
    << covering.grid_points_in_closure << " grid points in the closure"
    << (covering.scan_complete ? "" : " (scan incomplete)") << "\nresult: " << (passed ? "pass" : "FAIL") << '\n';
  emit(out, cfg, r, t.str());
  return passed ? kOk : kVerificationFailed;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_spec(cfg.spec_path);
  const Vector x = parse_point(cfg, spec.dim());
  const OrbitEnumeration orbit = enumerate_orbit(spec, x, cfg.depth, cfg.cap);
  if (cfg.csv.empty() || cfg.csv == "-") {
    write_orbit_csv(out, orbit.points, spec.dim());
    return kOk;
  }
  std::ofstream file(cfg.csv);
  if (!file) throw SpecError("--csv", "cannot write '" + cfg.csv + "'");
  write_orbit_csv(file, orbit.points, spec.dim());
  Json r{{"csv", cfg.csv}, {"points", orbit.size()}, {"truncated", orbit.truncated}};
  emit(out, cfg, r, std::to_string(orbit.size()) + " points written to " + cfg.csv + "\n");
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_point) {
  sub->add_option("spec", cfg.spec_path, "group spec JSON file")->required();
  sub->add_option("--relation-bound", cfg.relation_bound, "ratio relation search bound")
      ->check(CLI::Range(1u, 100000u));
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  if (needs_point) {
    sub->add_option("--point", cfg.point, "start point as a JSON array of scalars")->required();
  }
}

void add_orbit(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--depth", cfg.depth, "maximal word length")->check(CLI::NonNegativeNumber);
  sub->add_option("--cap", cfg.cap, "maximal number of orbit points")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Orbit closures of groups of affine homotheties"};
  app.require_subcommand(1);
  auto* analyze = app.add_subcommand("analyze", "case split, ratio closure, E_G / H_G and predicates");
  add_common(analyze, cfg, false);
  auto* closure = app.add_subcommand("closure", "symbolic closure of the orbit of --point");
  add_common(closure, cfg, true);
  auto* verify = app.add_subcommand("verify", "check the closure against an enumerated orbit");
  add_common(verify, cfg, true);
  add_orbit(verify, cfg);
  verify->add_option("--eps", cfg.eps, "covering radius");
  verify->add_option("--region", cfg.region, "box as x0,x1;y0,y1;... (default [-2,2]^n)");
  auto* exporter = app.add_subcommand("export-orbit", "write the enumerated orbit as CSV");
  add_common(exporter, cfg, true);
  add_orbit(exporter, cfg);
  exporter->add_option("--csv", cfg.csv, "output path ('-' or omitted: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, out);
    if (*closure) return cmd_closure(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    return cmd_export(cfg, out);
  } catch (const AbelianGroupError& e) {
    err << "error: " << e.what() << '\n';
    return kAbelian;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace homothety::cli
