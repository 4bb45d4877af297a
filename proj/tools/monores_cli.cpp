#include "monores/atlas_json.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace monores;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerify = 3;

struct Options {
  int n = 0;
  std::string input;
  std::string svg;
  std::vector<std::string> exponents;
  std::string norm = "real";
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  int growth_N = 0;
  int max_order = 8;
  std::string suite = "all";
  std::string atlas_file;
  std::string radius;
  EngineConfig cfg;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json exponent_list(const std::vector<Exponent>& es) {
  Json a = Json::array();
  for (const auto& e : es) a.push_back(e);
  return a;
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_string(c));
  return a;
}

Json face_json(const Face& f) {
  return Json{{"dim", f.dim}, {"index", f.index}, {"vertices", exponent_list(f.vertices)},
              {"normal", vec_json(f.normal)}, {"offset", to_string(f.offset)}};
}

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("MONORES_SEED");
  if (!env || !*env) return flag;
  std::size_t used = 0;
  const std::string s(env);
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw Error("MONORES_SEED is not an unsigned integer");
  return v;
}

void write_svg(const std::string& path, const Polyhedron& p) {
  if (p.n != 2) throw Error("--svg needs n = 2");
  auto verts = p.vertices;
  std::sort(verts.begin(), verts.end());
  int M = 1;
  for (const auto& g : p.generators) M = std::max({M, g[0], g[1]});
  M += 2;
  const int s = 40, pad = 20, size = M * s + 2 * pad;
  auto X = [&](int a) { return pad + a * s; };
  auto Y = [&](int b) { return pad + (M - b) * s; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  for (int t = 0; t <= M; ++t) {
    out << "<line x1=\"" << X(t) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(t) << "\" y2=\"" << Y(M)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<line x1=\"" << X(0) << "\" y1=\"" << Y(t) << "\" x2=\"" << X(M) << "\" y2=\"" << Y(t)
        << "\" stroke=\"#ddd\"/>\n";
  }
  out << "<polygon fill=\"#cde\" stroke=\"#246\" stroke-width=\"2\" points=\"";
  out << X(verts.front()[0]) << "," << Y(M) << " ";
  for (const auto& v : verts) out << X(v[0]) << "," << Y(v[1]) << " ";
  out << X(M) << "," << Y(verts.back()[1]) << " " << X(M) << "," << Y(M) << "\"/>\n";
  for (const auto& g : p.generators) {
    out << "<circle cx=\"" << X(g[0]) << "\" cy=\"" << Y(g[1]) << "\" r=\"4\" fill=\"#246\"/>\n";
  }
  out << "</svg>\n";
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << out.str();
}

int cmd_polyhedron(const Options& o) {
  const Series f = parse_series(o.input, o.n);
  if (f.is_zero()) throw InputZero();
  const Polyhedron p = build_polyhedron(f);
  Json facets = Json::array();
  for (const auto& fc : p.facets) facets.push_back(Json{{"normal", vec_json(fc.normal)}, {"offset", to_string(fc.offset)}});
  Json faces = Json::array();
  for (const auto& fc : compact_faces(p)) faces.push_back(face_json(fc));
  const CentralFace cf = central_face(p);
  Json central = face_json(cf.face);
  central["noncompact"] = cf.noncompact;
  central["tight_vertices"] = exponent_list(cf.tight_vertices);
  emit(Json{{"schema", kSchemaVersion},
            {"n", o.n},
            {"input", f.to_string()},
            {"vertices", exponent_list(p.vertices)},
            {"facets", facets},
            {"faces", faces},
            {"newton_distance", to_string(newton_distance(p))},
            {"central_face", central}});
  if (!o.svg.empty()) write_svg(o.svg, p);
  return kExitOk;
}

Exponent parse_exponent(const std::string& text) {
  Exponent e;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::logic_error&) {
    }
    if (v < 0 || used != part.size()) throw Error("bad exponent '" + text + "'");
    e.push_back(v);
  }
  return e;
}

int cmd_order(const Options& o) {
  std::vector<Exponent> es;
  for (const auto& t : o.exponents) es.push_back(parse_exponent(t));
  for (const auto& e : es) {
    if (e.size() != es.front().size()) throw Error("exponents differ in length");
  }
  const BlowupTree tree = order_monomials(es);
  Json nodes = Json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& nd = tree.nodes[i];
    if (nd.leaf) {
      nodes.push_back(Json{{"id", i}, {"leaf", nd.leaf_id}});
    } else {
      nodes.push_back(Json{{"id", i}, {"j", nd.j}, {"k", nd.k}, {"children", {nd.child[0], nd.child[1]}}});
    }
  }
  Json leaves = Json::array();
  for (std::size_t k = 0; k < tree.leaves.size(); ++k) {
    const auto& lf = tree.leaves[k];
    Json comps = Json::array();
    for (int l = 0; l < tree.n; ++l) comps.push_back(lf.map.component(l));
    Json images = Json::array();
    for (const auto& e : tree.exponents) images.push_back(lf.map.apply(e));
    leaves.push_back(Json{{"id", k}, {"node", lf.node}, {"L", lf.map.L}, {"components", comps},
                          {"exponents", images}, {"strict", lf.strict}});
  }
  emit(Json{{"schema", kSchemaVersion}, {"n", tree.n}, {"exponents", exponent_list(tree.exponents)},
            {"nodes", nodes}, {"leaves", leaves}});
  return kExitOk;
}

int cmd_regions(const Options& o) {
  const Series f = parse_series(o.input, o.n);
  if (f.is_zero()) throw InputZero();
  const Norm norm = Norm::parse(o.norm);
  const std::uint64_t seed = effective_seed(o.seed);
  const std::size_t samples = o.samples ? o.samples : 200;
  const FaceData fd = FaceData::from(build_polyhedron(f));
  RegionConstants consts;
  DominationReport rep;
  if (o.growth_N > 0) {
    consts = choose_constants(o.n, o.growth_N);
    rep = verify_domination(fd, consts, samples, seed, norm);
  } else {
    std::tie(consts, rep) = adaptive_constants(fd, samples, seed, norm);
  }
  const BlowupTree tree = order_monomials(fd.vertices);
  Json regions = Json::array();
  for (auto d : region_descriptions(tree, fd)) {
    if (!d.empty && !d.z_vars.empty()) {
      const auto [mono, F] = factor_monomial(compose_chart(f, tree.chart_map(d.k)));
      d.witness = derivative_witness(d, tree, fd, consts, F, o.max_order, samples, seed, norm);
    }
    Json w = nullptr;
    if (d.witness) {
      w = Json{{"beta", vec_json(d.witness->beta)}, {"order", d.witness->order},
               {"delta", to_string(d.witness->delta)}, {"max_order", d.witness->max_order}};
    }
    regions.push_back(Json{{"i", d.i}, {"j", d.j}, {"k", d.k}, {"face", d.face}, {"empty", d.empty},
                           {"p", d.p_exponent}, {"q", d.q_exponent}, {"s", d.s_exponent}, {"t", d.t_exponent},
                           {"y_vars", d.y_vars}, {"z_vars", d.z_vars}, {"alpha", d.alpha}, {"vmin", d.vmin},
                           {"witness", w}});
  }
  Json faces = Json::array();
  for (const auto& fc : fd.faces) faces.push_back(face_json(fc));
  Json C = Json::array();
  for (const auto& c : consts.C) C.push_back(to_string(c));
  emit(Json{{"schema", kSchemaVersion},
            {"n", o.n},
            {"input", f.to_string()},
            {"norm", norm.name()},
            {"seed", seed},
            {"N", consts.N},
            {"C", C},
            {"theorem", {{"samples", rep.samples}, {"violations_a", rep.violations_a},
                         {"violations_b", rep.violations_b}, {"mu_hat", rep.mu_hat}, {"census", rep.census}}},
            {"faces", faces},
            {"regions", regions}});
  return rep.ok() ? kExitOk : kExitVerify;
}

int cmd_resolve(Options o) {
  const Series f = parse_series(o.input, o.n);
  EngineConfig cfg = o.cfg;
  cfg.norm = Norm::parse(o.norm);
  cfg.seed = effective_seed(o.seed);
  if (o.samples) cfg.samples = o.samples;
  if (!o.radius.empty()) cfg.radius = parse_rational(o.radius);
  const Atlas atlas = resolve(f, cfg);
  const Report rep = atlas_verify(atlas, f, cfg.samples, cfg.seed);
  emit(atlas_to_json(atlas, &rep));
  return rep.ok() ? kExitOk : kExitVerify;
}

int cmd_verify(const Options& o) {
  const std::uint64_t seed = effective_seed(o.seed);
  const std::size_t samples = o.samples ? o.samples : 1000;
  Json reports = Json::array();
  bool ok = true;
  auto add = [&](const Report& r) {
    ok = ok && r.ok();
    reports.push_back(report_to_json(r));
  };
  if (!o.atlas_file.empty()) {
    std::ifstream in(o.atlas_file);
    if (!in) throw Error("cannot read " + o.atlas_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("atlas json: ") + e.what());
    }
    const Atlas atlas = atlas_from_json(j);
    add(atlas_verify(atlas, atlas.input, atlas.config.samples, atlas.config.seed));
  } else {
    const Norm norm = Norm::parse(o.norm);
    if (o.suite == "fixtures" || o.suite == "all") add(run_fixture_suite(norm, samples, seed));
    if (o.suite == "atlas" || o.suite == "all") add(run_atlas_suite(norm, samples, seed));
    if (o.suite == "oracles" || o.suite == "all") add(run_oracle_suite(200, seed));
  }
  emit(Json{{"schema", kSchemaVersion}, {"ok", ok}, {"reports", reports}});
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local monomialization of polynomials with exact rational charts"};
  app.require_subcommand(1);
  Options o;

  auto* poly = app.add_subcommand("polyhedron", "Newton polyhedron: vertices, faces, distance, central face");
  poly->add_option("-n", o.n, "number of variables")->required()->check(CLI::Range(1, 8));
  poly->add_option("f", o.input, "polynomial in x1..xn")->required();
  poly->add_option("--svg", o.svg, "write the Newton polygon (n = 2) as SVG");

  auto* order = app.add_subcommand("order", "blowup tree ordering a set of monomials");
  order->add_option("exponents", o.exponents, "exponent vectors, e.g. 2,0 1,1 0,3")->required();

  auto* regions = app.add_subcommand("regions", "face regions, constants and derivative witnesses");
  regions->add_option("-n", o.n, "number of variables")->required()->check(CLI::Range(1, 8));
  regions->add_option("f", o.input, "polynomial in x1..xn")->required();
  regions->add_option("--samples", o.samples, "samples per check (default 200)");
  regions->add_option("--seed", o.seed, "random seed");
  regions->add_option("--norm", o.norm, "real or padic:<p>");
  regions->add_option("--growth-N", o.growth_N, "fixed growth parameter N (default adaptive)");
  regions->add_option("--max-order", o.max_order, "largest derivative order for witnesses");

  auto* res = app.add_subcommand("resolve", "resolve f near the origin into monomial charts");
  res->add_option("-n", o.n, "number of variables")->required()->check(CLI::Range(1, 8));
  res->add_option("f", o.input, "polynomial in x1..xn")->required();
  res->add_option("--trunc-order", o.cfg.trunc_order, "truncation order T")->check(CLI::PositiveNumber);
  res->add_option("--max-charts", o.cfg.max_charts, "chart budget")->check(CLI::PositiveNumber);
  res->add_option("--max-depth", o.cfg.max_depth, "recursion depth budget")->check(CLI::PositiveNumber);
  res->add_option("--samples", o.samples, "verification samples (default 1000)");
  res->add_option("--seed", o.seed, "random seed");
  res->add_option("--norm", o.norm, "real or padic:<p>");
  res->add_option("--growth-N", o.cfg.growth_N, "fixed growth parameter N (default adaptive)");
  res->add_option("--radius", o.radius, "coverage radius, a rational");

  auto* ver = app.add_subcommand("verify", "run the verification suites or re-verify a stored atlas");
  ver->add_option("--suite", o.suite, "fixtures, atlas, oracles or all")
      ->check(CLI::IsMember({"fixtures", "atlas", "oracles", "all"}));
  ver->add_option("--seed", o.seed, "random seed");
  ver->add_option("--samples", o.samples, "samples (default 1000)");
  ver->add_option("--norm", o.norm, "real or padic:<p>");
  ver->add_option("--atlas", o.atlas_file, "atlas JSON written by resolve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*poly) return cmd_polyhedron(o);
    if (*order) return cmd_order(o);
    if (*regions) return cmd_regions(o);
    if (*res) return cmd_resolve(o);
    return cmd_verify(o);
  } catch (const InputZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoWitness& e) {
    std::cerr << "no witness: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
