// supersymp: command-line front end for the DSL documents in samples/.
#include "supersymp/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace ssp;

namespace {

constexpr int kVerified = 0;
constexpr int kRefuted = 1;
constexpr int kError = 2;

Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  if (trim(s).empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(trim(t)));
  return out;
}

json cochain_json(const CECochain& c, const SuperLieAlgebra& g) {
  json j = json::object();
  for (const auto& [idx, v] : c.values) {
    std::string key;
    for (std::size_t i = 0; i < idx.size(); ++i) key += (i ? "," : "") + g.names[static_cast<std::size_t>(idx[i])];
    j[key] = to_string(v);
  }
  return j;
}

json cech_json(const CechCochain& c) {
  json j = json::object();
  for (const auto& [s, v] : c.values) j[dsl::render_simplex(s)] = to_string(v);
  return j;
}

json matrix_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(to_string(x));
    rows.push_back(row);
  }
  return rows;
}

/// "i,j=v; k,l=w" with 1-based basis indices.
CECochain cocycle_arg(const std::string& text, const SuperLieAlgebra& g) {
  CECochain c(2, g.parity);
  for (const auto& item : split(text, ';')) {
    if (trim(item).empty()) continue;
    const auto eq = split(item, '=');
    if (eq.size() != 2) throw std::invalid_argument("cocycle entry '" + trim(item) + "' must look like i,j=value");
    const auto ij = split(eq[0], ',');
    if (ij.size() != 2) throw std::invalid_argument("cocycle entry '" + trim(item) + "' needs two indices");
    const int i = std::stoi(trim(ij[0])), j = std::stoi(trim(ij[1]));
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > g.dim() || static_cast<std::size_t>(j) > g.dim())
      throw std::invalid_argument("cocycle index out of range");
    c.set({i - 1, j - 1}, parse_rational(trim(eq[1])));
  }
  return c;
}

const KForm& form_arg(const Document& doc, const std::string& name, int degree) {
  if (!name.empty()) {
    const auto& w = std::get<KForm>(doc.require("form", name).value);
    if (w.degree() != degree)
      throw std::invalid_argument("form '" + name + "' has degree " + std::to_string(w.degree()));
    return w;
  }
  const KForm* found = nullptr;
  for (const auto* d : doc.of_kind("form"))
    if (std::get<KForm>(d->value).degree() == degree) found = &std::get<KForm>(d->value);
  if (!found) throw std::invalid_argument("document has no " + std::to_string(degree) + "-form");
  return *found;
}

const SuperLieAlgebra& algebra_arg(const Document& doc, const std::string& name, SuperLieAlgebra& storage) {
  if (!name.empty()) {
    const Declaration* d = doc.find(name);
    if (d && d->kind == "heisenberg") return storage = algebra_of(std::get<HeisenbergSpec>(d->value));
    return std::get<SuperLieAlgebra>(doc.require("algebra", name).value);
  }
  if (!doc.of_kind("algebra").empty()) return std::get<SuperLieAlgebra>(doc.of_kind("algebra").back()->value);
  if (!doc.of_kind("heisenberg").empty())
    return storage = algebra_of(std::get<HeisenbergSpec>(doc.of_kind("heisenberg").back()->value));
  throw std::invalid_argument("document has no algebra declaration");
}

json symplectic_json(const SymplecticReport& rep) {
  json pts = json::array();
  for (const auto& p : rep.points) {
    json pj;
    json coords = json::array();
    for (const auto& x : p.point) coords.push_back(to_string(x));
    pj["point"] = coords;
    pj["nondegenerate"] = p.nondegenerate;
    pj["homogeneously_nondegenerate"] = p.homogeneously_nondegenerate;
    pts.push_back(pj);
  }
  return {{"closed", rep.closed},
          {"nondegenerate", rep.nondegenerate()},
          {"homogeneously_nondegenerate", rep.homogeneously_nondegenerate()},
          {"symplectic", rep.symplectic()},
          {"points", pts}};
}

struct Options {
  std::string file, form, theta, f, g, s, sections, algebra, cocycle, cocycle2, cover, point, section = "all";
  std::string y0 = "1", ybar1 = "0", d;
  int degree = -1;
  bool quiet = false;
};

Orbit orbit_from(const Document& doc, const Options& o) {
  const auto& spec = std::get<HeisenbergSpec>(doc.require("heisenberg", o.algebra).value);
  return orbit_chart(spec, parse_rational(o.y0), parse_rational(o.ybar1));
}

const CoverData& cover_arg(const Document& doc, const Options& o) {
  return std::get<CoverData>(doc.require("cover", o.cover).value);
}

Rational unit_arg(const CoverData& cd, const Options& o) {
  if (!o.d.empty()) return parse_rational(o.d);
  if (cd.d) return *cd.d;
  return Rational(1);
}

int emit(const json& j, int code) {
  std::cout << j.dump(2) << "\n";
  return code;
}

PrequantChart prequant_from(const Document& doc, const Options& o) {
  return PrequantChart::create(form_arg(doc, o.form, 2), form_arg(doc, o.theta, 1));
}

int run_symplectic(const std::string& cmd, const Options& o) {
  const Document doc = load(o.file);
  const KForm& w = form_arg(doc, o.form, 2);
  const ChartPtr& c = w.chart();
  if (cmd == "check") {
    std::vector<Rational> pt = o.point.empty() ? std::vector<Rational>(c->p(), Rational(0)) : rational_list(o.point);
    const auto rep = is_symplectic(w, {pt});
    json j = symplectic_json(rep);
    j["form"] = w.to_string();
    return emit(j, rep.symplectic() ? kVerified : kRefuted);
  }
  if (cmd == "hamiltonian") {
    const CFunction f = parse_cfunction(doc, c, o.f);
    const auto h = hamiltonian_field(f, w, o.degree);
    json j{{"f", f.to_string()}, {"status", to_string(h.status)}, {"reason", h.reason}};
    if (h.field) {
      j["field"] = h.field->to_string();
      const CKForm lhs = contract(*h.field, double_form(w));
      const CKForm rhs = ext_d(f);
      j["certificate"] = lhs == rhs;
    }
    return emit(j, h.status == Membership::Member ? kVerified : kRefuted);
  }
  if (cmd == "poisson") {
    const CFunction f = parse_cfunction(doc, c, o.f), g = parse_cfunction(doc, c, o.g);
    const CFunction a = poisson_bracket(f, g, w);
    const CFunction b =
        poisson_bracket_by_contraction(require_hamiltonian(f, w, o.degree), require_hamiltonian(g, w, o.degree), w);
    const bool agree = a == b;
    return emit({{"bracket", a.to_string()}, {"by_contraction", b.to_string()}, {"agree", agree}},
                agree ? kVerified : kRefuted);
  }
  const auto dr = darboux_normal_form(w);
  const bool ok = dr.verify(gram_matrix(w));
  json scale = json::array();
  for (const auto& s : dr.scale) scale.push_back(to_string(s));
  return emit({{"even", dr.even},
               {"k", dr.k},
               {"ell", dr.ell},
               {"canonical", dr.canonical.to_string()},
               {"basis", matrix_json(dr.basis)},
               {"sqrt_scale", scale},
               {"verified", ok}},
              ok ? kVerified : kRefuted);
}

int run_liecoh(const std::string& cmd, const Options& o) {
  const Document doc = load(o.file);
  SuperLieAlgebra storage;
  const SuperLieAlgebra& g = algebra_arg(doc, o.algebra, storage);
  if (cmd == "h2") {
    const auto jac = jacobi_check(g);
    if (!jac.ok)
      return emit({{"jacobi", false}, {"first_failure", {g.names[jac.a], g.names[jac.b], g.names[jac.c]}}}, kRefuted);
    const auto r = h2(g);
    json reps = json::array();
    for (const auto& c : r.representatives) reps.push_back(cochain_json(c, g));
    return emit({{"dim_Z2", r.dim_z2}, {"dim_B2", r.dim_b2}, {"dim_H2", r.dim_h2}, {"representatives", reps}},
                kVerified);
  }
  if (cmd == "extend") {
    const CECochain om = cocycle_arg(o.cocycle, g);
    const bool closed = ce_coboundary(om, g).is_zero();
    const SuperLieAlgebra e = central_extension(g, om);
    const auto jac = jacobi_check(e);
    json br = json::array();
    for (std::size_t i = 0; i < e.dim(); ++i)
      for (std::size_t j = i; j < e.dim(); ++j) {
        std::string lc;
        for (std::size_t k = 0; k < e.dim(); ++k)
          if (!is_zero(e.c[i][j][k])) detail::append_term(lc, Gauss(e.c[i][j][k]), e.names[k]);
        if (!lc.empty()) br.push_back("[" + e.names[i] + "," + e.names[j] + "] = " + lc);
      }
    return emit({{"cocycle_closed", closed}, {"jacobi", jac.ok}, {"brackets", br}},
                jac.ok ? kVerified : kRefuted);
  }
  const CECochain a = cocycle_arg(o.cocycle, g), b = cocycle_arg(o.cocycle2, g);
  const auto f = extension_equivalent(a, b, g);
  json j{{"equivalent", f.has_value()}};
  if (f) j["F"] = cochain_json(*f, g);
  return emit(j, f ? kVerified : kRefuted);
}

int run_heisenberg(const std::string& cmd, const Options& o) {
  const Document doc = load(o.file);
  const Orbit orb = orbit_from(doc, o);
  json j{{"type", to_string(orb.type)},
         {"dimension", std::to_string(orb.chart->p()) + "|" + std::to_string(orb.chart->q())},
         {"even", orb.chart->even},
         {"odd", orb.chart->odd}};
  if (cmd == "orbit") return emit(j, kVerified);
  if (orb.type == OrbitType::Trivial) return emit(j, kVerified);
  const KForm w = kks_form(orb);
  j["omega"] = w.to_string();
  const auto rep = is_symplectic(w, {std::vector<Rational>(orb.chart->p(), Rational(0))});
  j["symplectic"] = symplectic_json(rep);
  if (cmd == "kks") return emit(j, rep.symplectic() ? kVerified : kRefuted);
  const auto mc = momentum_check(orb);
  const auto cyc = momentum_cocycle(orb, std::vector<Rational>(orb.spec.n() + 2, Rational(0)));
  j["hamiltonian"] = mc.hamiltonian;
  j["strongly_hamiltonian"] = mc.strong;
  j["pairs_checked"] = mc.pairs_checked;
  j["failures"] = mc.failures;
  j["cocycle_zero"] = cyc.constant && cyc.even && cyc.cocycle.is_zero();
  return emit(j, mc.hamiltonian && mc.strong ? kVerified : kRefuted);
}

int run_cech(const std::string& cmd, const Options& o) {
  const Document doc = load(o.file);
  const CoverData& cd = cover_arg(doc, o);
  const Rational d = unit_arg(cd, o);
  json j{{"vertices", cd.nerve.count(0)}, {"edges", cd.nerve.count(1)}, {"triangles", cd.nerve.count(2)}};
  if (cmd == "classify") {
    const auto c = classify_prequantum(cd.nerve, d);
    json tors = json::array();
    for (const auto& t : c.torsion) tors.push_back(t.get_str());
    j["d"] = to_string(c.d);
    j["free_rank"] = c.free_rank;
    j["torsion"] = tors;
    j["H1"] = c.to_string();
    j["trivial"] = c.trivial();
    return emit(j, kVerified);
  }
  const CechCochain a = cd.cocycle();
  const PeriodGroup per = period_group(a, cd.nerve);
  j["per"] = to_string(per.lambda);
  if (cmd == "periods") return emit(j, kVerified);
  const bool exists = prequantum_exists(per, d);
  j["d"] = to_string(d);
  j["exists"] = exists;
  const auto nz = normalize_to_periods(a, cd.nerve);
  j["correction"] = cech_json(nz.correction);
  j["normalized"] = cech_json(nz.normalized);
  if (exists) {
    const auto td = transition_data(nz.correction, nz.normalized, cd.nerve, d);
    j["transition"] = cech_json(td.g);
  }
  return emit(j, exists ? kVerified : kRefuted);
}

int run_prequant(const std::string& cmd, const Options& o) {
  const Document doc = load(o.file);
  const PrequantChart pc = prequant_from(doc, o);
  const CFunction f = parse_cfunction(doc, pc.base, o.f);
  if (cmd == "eta") {
    const VectorField eta = eta_field(f, pc, o.degree);
    const CKForm ia = contract(eta, pc.alpha);
    const CFunction pf = pc.lift(f);
    const bool defining = ia.part0 == KForm::from_function(-pf.f0) && ia.part1 == KForm::from_function(-pf.f1);
    const bool sym = symmetry_check(eta, pc);
    const bool proj = pc.project(eta) == require_hamiltonian(f, pc.omega, o.degree);
    return emit({{"eta", eta.to_string()}, {"contraction_is_minus_f", defining}, {"symmetry", sym}, {"projects_to_X_f", proj}},
                defining && sym && proj ? kVerified : kRefuted);
  }
  if (cmd == "qop") {
    const SuperFunction s = parse_function(doc, pc.base, o.s);
    return emit({{"Q(f)s", quantum_op(f, s, pc, o.degree).to_string()}}, kVerified);
  }
  const CFunction g = parse_cfunction(doc, pc.base, o.g);
  std::vector<SuperFunction> secs;
  for (const auto& t : split(o.sections, ';'))
    if (!trim(t).empty()) secs.push_back(parse_function(doc, pc.base, t));
  if (secs.empty()) secs.push_back(SuperFunction::constant(pc.base, Gauss(1)));
  const auto r = rep_check(f, g, pc, secs);
  return emit({{"ok", r.ok}, {"sections", secs.size()}, {"failures", r.failures}}, r.ok ? kVerified : kRefuted);
}

int run_verify(const Options& o) {
  json out = json::array();
  bool all_ok = true, matched = false;
  for (const auto& [name, fn] : verify_sections()) {
    if (o.section != "all" && o.section != name) continue;
    matched = true;
    const SectionReport r = fn();
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    out.push_back({{"section", name}, {"ok", r.ok()}, {"checks", checks}});
    all_ok = all_ok && r.ok();
    for (const auto& c : r.checks)
      if (!c.ok) std::cerr << "MISMATCH " << name << ": " << c.name << "\n  expected " << c.expected << "\n  actual   "
                           << c.actual << "\n";
  }
  if (!matched) throw std::invalid_argument("unknown section '" + o.section + "'");
  return emit(out, all_ok ? kVerified : kRefuted);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic engine for super symplectic geometry"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto file = [&](CLI::App* sub) { sub->add_option("file", o.file, "DSL document")->required()->check(CLI::ExistingFile); };
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help,
                  std::function<int(const std::string&, const Options&)> fn) {
    CLI::App* sub = group->add_subcommand(name, help);
    file(sub);
    sub->callback([&action, fn, name, &o]() { action = [fn, name, &o]() { return fn(name, o); }; });
    return sub;
  };

  CLI::App* sym = app.add_subcommand("symplectic", "forms, hamiltonian fields and brackets");
  sym->require_subcommand(1);
  auto* check = leaf(sym, "check", "closedness and (homogeneous) non-degeneracy", run_symplectic);
  check->add_option("--form", o.form, "2-form name (default: last 2-form)");
  check->add_option("--point", o.point, "comma-separated even coordinates of the sample point");
  auto* ham = leaf(sym, "hamiltonian", "solve i_X omega-bar = df", run_symplectic);
  ham->add_option("--form", o.form);
  ham->add_option("--f", o.f, "C-valued function, e.g. 'x*c0 + xi*c1'")->required();
  ham->add_option("--degree", o.degree, "ansatz degree for non-constant forms");
  auto* poi = leaf(sym, "poisson", "Poisson bracket by two routes", run_symplectic);
  poi->add_option("--form", o.form);
  poi->add_option("--f", o.f)->required();
  poi->add_option("--g", o.g)->required();
  poi->add_option("--degree", o.degree);
  auto* dar = leaf(sym, "darboux", "normal form of a constant homogeneous form", run_symplectic);
  dar->add_option("--form", o.form);

  CLI::App* lie = app.add_subcommand("liecoh", "Chevalley-Eilenberg cohomology");
  lie->require_subcommand(1);
  auto* h2c = leaf(lie, "h2", "Z2, B2, H2", run_liecoh);
  h2c->add_option("--algebra", o.algebra);
  auto* ext = leaf(lie, "extend", "central extension by a 2-cochain", run_liecoh);
  ext->add_option("--algebra", o.algebra);
  ext->add_option("--cocycle", o.cocycle, "entries 'i,j=value; ...' (1-based)")->required();
  auto* eq = leaf(lie, "equiv", "are two extensions equivalent", run_liecoh);
  eq->add_option("--algebra", o.algebra);
  eq->add_option("--omega1", o.cocycle)->required();
  eq->add_option("--omega2", o.cocycle2)->required();

  CLI::App* hei = app.add_subcommand("heisenberg", "coadjoint orbits of super Heisenberg groups");
  hei->require_subcommand(1);
  for (const char* n : {"orbit", "kks", "momentum"}) {
    auto* sub = leaf(hei, n, std::string(n) + " at the point (y0, ybar1)", run_heisenberg);
    sub->add_option("--name", o.algebra, "heisenberg declaration");
    sub->add_option("--y0", o.y0);
    sub->add_option("--ybar1", o.ybar1);
  }

  CLI::App* cech = app.add_subcommand("cech", "periods and prequantum bundles");
  cech->require_subcommand(1);
  for (const char* n : {"periods", "prequantize", "classify"}) {
    auto* sub = leaf(cech, n, n, run_cech);
    sub->add_option("--cover", o.cover);
    sub->add_option("--d", o.d, "period unit (default: the cover's d, else 1)");
  }

  CLI::App* pre = app.add_subcommand("prequant", "prequantum symmetries and operators");
  pre->require_subcommand(1);
  for (const char* n : {"eta", "qop", "repcheck"}) {
    auto* sub = leaf(pre, n, n, run_prequant);
    sub->add_option("--omega", o.form, "2-form name");
    sub->add_option("--theta", o.theta, "1-form name with d(theta) = omega");
    sub->add_option("--f", o.f)->required();
    sub->add_option("--degree", o.degree);
    if (std::string(n) == "qop") sub->add_option("--s", o.s, "section")->required();
    if (std::string(n) == "repcheck") {
      sub->add_option("--g", o.g)->required();
      sub->add_option("--sections", o.sections, "';'-separated sections");
    }
  }

  CLI::App* ver = app.add_subcommand("verify-paper", "reproduce the worked examples");
  ver->add_option("section", o.section, "section3 section6 section7 section8 section9 or all");
  ver->callback([&]() { action = [&]() { return run_verify(o); }; });

  CLI::App* ren = app.add_subcommand("render", "print a document in canonical form");
  file(ren);
  ren->callback([&]() {
    action = [&]() {
      std::cout << render(load(o.file));
      return kVerified;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return kError;
  }
}
