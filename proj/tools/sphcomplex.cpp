// sphcomplex: construct, check, develop, and certify glued spherical
// complexes. Exit codes: 0 all checks pass, 1 a check failed, 2 undecided or
// needs deeper development, 3 input error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sph/catalog.hpp"
#include "sph/fixtures.hpp"
#include "sph/io.hpp"

using namespace sph;
using io::Json;

namespace {

struct Global {
  std::string backend = "exact";
  double eps = 1e-9;
  std::string json_out;
  std::string svg_out;
};

GluingSpec load_spec(const std::string& arg) {
  for (auto& n : fixtures::names())
    if (n == arg) return fixtures::get(n);
  std::ifstream in(arg);
  if (!in) throw io::SpecError("$", "cannot open '" + arg + "' (not a fixture name or readable file)");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return io::parse_spec_text(text);
}

void emit(const Global& g, const Json& report) {
  std::string text = report.dump(2) + "\n";
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    out << text;
  } else {
    std::cout << text;
  }
}

Json matrix_json(const Mat<Rat>& m) {
  Json out = Json::array();
  for (auto& row : m) out.push_back(io::rat_vec_json(row));
  return out;
}

void warn_exact_only(const Global& g) {
  if (g.backend == "float")
    std::cerr << "note: the float backend applies to classification; "
                 "gluing specs run exact\n";
}

int cmd_classify(const Global& g) {
  Json rows = Json::array();
  for (auto& name : catalog::names()) {
    bool flt = g.backend == "float" || catalog::is_float_only(name);
    Json row;
    row["name"] = name;
    row["backend"] = flt ? "float" : "exact";
    if (flt) {
      Approx::eps = g.eps;
      Polytope<Approx> p = catalog::build_float(name);
      row["triangular"] = is_triangular(p).first;
      row["cone_like"] = is_cone_like(p).first;
      row["thin"] = is_thin(p).first;
    } else {
      Polytope<Rat> p = catalog::build(name);
      row["triangular"] = is_triangular(p).first;
      row["cone_like"] = is_cone_like(p).first;
      row["thin"] = is_thin(p).first;
    }
    rows.push_back(std::move(row));
  }
  Json report;
  report["command"] = "classify";
  report["table"] = std::move(rows);
  emit(g, report);
  return 0;
}

int cmd_check(const Global& g, const std::string& spec_arg) {
  warn_exact_only(g);
  GluingSpec s = load_spec(spec_arg);
  Json report;
  report["command"] = "check";
  auto val = validate(s);
  report["valid"] = val.valid();
  report["violations"] = Json::array();
  for (auto& v : val.violations) report["violations"].push_back(v.message);
  bool ok = val.valid();
  if (val.valid()) {
    report["poincare"] = Json::array();
    for (auto& r : poincare_check(s)) {
      Json jr;
      jr["holonomy_identity"] = r.holonomy_identity;
      jr["link_is_circle"] = r.link_is_circle;
      report["poincare"].push_back(std::move(jr));
      ok = ok && r.pass();
    }
    report["residual_convexity"] = Json::array();
    for (auto& r : residual_convexity_check(s)) {
      Json jr;
      jr["convex"] = r.convex_ridge_link;
      jr["methods_agree"] = r.agree();
      report["residual_convexity"].push_back(std::move(jr));
      ok = ok && r.convex_ridge_link && r.agree();
    }
    report["triangular_cells"] = Json::array();
    for (auto& t : triangular_scan(s))
      report["triangular_cells"].push_back(s.names[t.pid]);
    report["thickness"] = Json::array();
    for (auto& [pid, thick] : thickness_scan(s)) {
      Json jt;
      jt["polytope"] = s.names[pid];
      jt["dual_thick"] = thick;
      report["thickness"].push_back(std::move(jt));
    }
  }
  emit(g, report);
  return ok ? 0 : 1;
}

int cmd_develop(const Global& g, const std::string& spec_arg, int base, int depth) {
  warn_exact_only(g);
  GluingSpec s = load_spec(spec_arg);
  if (base < 0 || base >= (int)s.polytopes.size())
    throw io::SpecError("--base", "no such polytope");
  DevelopedComplex dc = develop(s, base, depth);
  Json report;
  report["command"] = "develop";
  report["cells"] = Json::array();
  for (auto& c : dc.cells) {
    Json jc;
    jc["polytope"] = s.names[c.pid];
    jc["depth"] = c.depth;
    jc["transform"] = matrix_json(c.g.m);
    report["cells"].push_back(std::move(jc));
  }
  report["cell_count"] = dc.cells.size();
  report["overlaps"] = Json::array();
  for (auto& ev : dc.overlaps) {
    Json je;
    je["a"] = ev.a;
    je["b"] = ev.b;
    je["depth"] = ev.depth;
    report["overlaps"].push_back(std::move(je));
  }
  bool ok = dc.injective();
  bool undecided = false;
  if (dc.injective()) {
    Mat<Rat> neg;
    for (auto& v : dc.cells[0].shape.generators) neg.push_back(vec_neg(v));
    Cone<Rat> anti = cone_from_generators(std::move(neg), {}, s.d);
    report["per_depth"] = Json::array();
    for (int k = 1; k <= depth; ++k) {
      std::vector<int> S = dc.st_cells(k);
      Json jk;
      jk["k"] = k;
      jk["polyball"] = polyball_check(dc, S).ok();
      auto uc = union_convexity(dc, S);
      jk["convex"] = uc.ok();
      jk["convexity_methods_agree"] = uc.agree();
      bool anti_ok = true;
      for (int c : S)
        if (intersect(dc.cells[c].shape, anti).dim() != 0) anti_ok = false;
      jk["antipodal_properness"] = anti_ok;
      ok = ok && jk["polyball"].get<bool>() && uc.ok() && uc.agree() && anti_ok;
      report["per_depth"].push_back(std::move(jk));
    }
    AuditReport audit = residual_convexity_audit(dc);
    Json ja;
    ja["condition1_vertices"] = audit.cond1();
    ja["condition2_mid"] = audit.cond2();
    ja["condition3_facets"] = audit.cond3();
    ja["checked"] = audit.checked_vertices + audit.checked_mid + audit.checked_facets;
    ja["skipped"] = audit.skipped;
    ja["method_disagreements"] = audit.disagreements.size();
    report["audit"] = std::move(ja);
    ok = ok && audit.all_pass() && audit.disagreements.empty();
    StrongReport strong = strong_residual_convexity_check(dc);
    Json js;
    js["checked"] = strong.checked;
    js["bad_ridges"] = strong.bad.size();
    js["undecided"] = strong.undecided;
    report["strong_audit"] = std::move(js);
    ok = ok && strong.bad.empty();
    undecided = strong.undecided;
  } else {
    report["verdict"] = "developing map not injective at depth " +
                        std::to_string(dc.overlaps.front().depth);
  }
  if (!g.svg_out.empty() && s.d == 3) {
    std::ofstream out(g.svg_out);
    out << io::render_svg(dc);
  }
  emit(g, report);
  return ok ? (undecided ? 2 : 0) : 1;
}

int cmd_certify(const Global& g, const std::string& spec_arg, int base, int depth) {
  warn_exact_only(g);
  GluingSpec s = load_spec(spec_arg);
  if (base < 0 || base >= (int)s.polytopes.size())
    throw io::SpecError("--base", "no such polytope");
  CertifyReport rep = certify_convexity(s, base, depth);
  Json report;
  report["command"] = "certify";
  report["theorem_applicable"] = rep.theorem_applicable;
  report["theorem_certified"] = rep.theorem_certified;
  report["direct_certified"] = rep.direct_certified;
  report["paths_agree"] = rep.paths_agree;
  report["overlap"] = rep.overlap;
  report["per_depth"] = Json::array();
  for (auto& d : rep.per_depth) {
    Json jk;
    jk["k"] = d.k;
    jk["polyball"] = d.polyball;
    jk["convex"] = d.convex;
    jk["antipodal_properness"] = d.antipodal;
    report["per_depth"].push_back(std::move(jk));
  }
  report["verdict"] = rep.verdict;
  emit(g, report);
  return rep.direct_certified && rep.paths_agree ? 0 : 1;
}

int cmd_gallery(const Global& g, const std::string& spec_arg, int base,
                int facet, int steps) {
  warn_exact_only(g);
  GluingSpec s = load_spec(spec_arg);
  if (base < 0 || base >= (int)s.polytopes.size())
    throw io::SpecError("--base", "no such polytope");
  if (facet < 0 || facet >= s.poly(base).num_facets())
    throw io::SpecError("--facet", "no such facet");
  DevelopedComplex dc = develop(s, base, steps + 1);
  Gallery gal = gallery_trace(dc, 0, facet, steps);
  Json report;
  report["command"] = "gallery";
  if (!gal.error.empty()) {
    report["error"] = gal.error;
    emit(g, report);
    return gal.error.find("needs deeper") != std::string::npos ? 2 : 1;
  }
  report["cells"] = gal.cells;
  Json jf = Json::array();
  for (auto& [c, f] : gal.facets) jf.push_back(Json::array({c, f}));
  report["facets"] = std::move(jf);
  report["s_disjoint"] = gal.s_disjoint;
  report["s_on_boundary"] = gal.s_on_boundary;
  report["partial_union_convex"] = gal.partial_union_convex;
  SupportReport sup = supporting_hyperplane(dc, gal);
  Json jn = Json::array();
  for (auto& u : sup.normals) jn.push_back(io::rat_vec_json(u));
  report["hyperplane_normals"] = std::move(jn);
  report["avoids_Q"] = sup.avoids_Q;
  report["meets_Q_sigma"] = sup.meets_Qsigma;
  report["stabilized"] = sup.stabilized;
  if (!g.svg_out.empty() && s.d == 3) {
    io::SvgOptions opt;
    opt.galleries.push_back(gal.cells);
    std::ofstream out(g.svg_out);
    out << io::render_svg(dc, opt);
  }
  emit(g, report);
  return gal.ok && sup.restrictions_hold() ? 0 : 1;
}

int cmd_render(const Global& g, const std::string& spec_arg, int base, int depth) {
  warn_exact_only(g);
  GluingSpec s = load_spec(spec_arg);
  if (s.d != 3) throw io::SpecError("$", "render supports dimension 2 only");
  if (base < 0 || base >= (int)s.polytopes.size())
    throw io::SpecError("--base", "no such polytope");
  DevelopedComplex dc = develop(s, base, depth);
  std::string svg = io::render_svg(dc);
  if (!g.svg_out.empty()) {
    std::ofstream out(g.svg_out);
    out << svg;
  } else {
    std::cout << svg;
  }
  return 0;
}

int cmd_fixtures(const Global& g) {
  Json report;
  report["command"] = "fixtures";
  report["gluing_specs"] = Json::array();
  for (auto& n : fixtures::names()) report["gluing_specs"].push_back(n);
  report["polytopes"] = Json::array();
  for (auto& n : catalog::names()) {
    Json jp;
    jp["name"] = n;
    jp["backend"] = catalog::is_float_only(n) ? "float" : "exact";
    report["polytopes"].push_back(std::move(jp));
  }
  emit(g, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glued spherical complexes: checks, development, certification"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--backend", g.backend, "scalar backend")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--eps", g.eps, "float backend tolerance");
  app.add_option("--json-out", g.json_out, "write the JSON report to a file");
  app.add_option("--svg", g.svg_out, "write an SVG rendering to a file");

  std::string spec_arg;
  int base = 0, depth = 2, facet = 0, steps = 5;
  auto* classify = app.add_subcommand("classify", "classify the polytope catalog");
  auto* check = app.add_subcommand("check", "validate and check a gluing spec");
  check->add_option("spec", spec_arg, "fixture name or spec.json")->required();
  auto* dev = app.add_subcommand("develop", "develop the universal cover");
  dev->add_option("spec", spec_arg)->required();
  dev->add_option("--base", base, "base polytope id");
  dev->add_option("--depth", depth, "star depth K");
  auto* cert = app.add_subcommand("certify", "certify convexity both ways");
  cert->add_option("spec", spec_arg)->required();
  cert->add_option("--base", base);
  cert->add_option("--depth", depth);
  auto* gal = app.add_subcommand("gallery", "trace a directed gallery");
  gal->add_option("spec", spec_arg)->required();
  gal->add_option("--base", base);
  gal->add_option("--facet", facet, "direction facet index");
  gal->add_option("--steps", steps, "gallery length K");
  auto* render = app.add_subcommand("render", "render a 2D development as SVG");
  render->add_option("spec", spec_arg)->required();
  render->add_option("--base", base);
  render->add_option("--depth", depth);
  auto* fix = app.add_subcommand("fixtures", "list shipped fixtures");

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();
  CLI11_PARSE(app, argc, argv);
  try {
    if (app.got_subcommand(classify)) return cmd_classify(g);
    if (app.got_subcommand(check)) return cmd_check(g, spec_arg);
    if (app.got_subcommand(dev)) return cmd_develop(g, spec_arg, base, depth);
    if (app.got_subcommand(cert)) return cmd_certify(g, spec_arg, base, depth);
    if (app.got_subcommand(gal)) return cmd_gallery(g, spec_arg, base, facet, steps);
    if (app.got_subcommand(render)) return cmd_render(g, spec_arg, base, depth);
    if (app.got_subcommand(fix)) return cmd_fixtures(g);
  } catch (const io::SpecError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
