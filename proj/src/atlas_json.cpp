#include "monores/atlas_json.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace monores {

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(std::string("atlas json: missing field '") + key + "'");
  return *it;
}

Json q(const Rational& r) { return to_string(r); }
Rational q_from(const Json& j) { return parse_rational(j.get<std::string>()); }

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(q(c));
  return a;
}

Vector vec_from(const Json& j) {
  Vector v;
  for (const auto& c : j) v.push_back(q_from(c));
  return v;
}

// Non-finite doubles are not representable in JSON numbers.
Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double num_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

Json monomial_json(const Monomial& m) { return Json{{"coeff", q(m.coeff)}, {"exponents", m.exponents}}; }

Monomial monomial_from(const Json& j) {
  Monomial m;
  m.coeff = q_from(field(j, "coeff"));
  m.exponents = field(j, "exponents").get<Exponent>();
  return m;
}

Json factored_json(const Factored& f) {
  return Json{{"monomial", monomial_json(f.monomial)}, {"unit", series_to_json(f.unit)}};
}

Factored factored_from(const Json& j) {
  return Factored{monomial_from(field(j, "monomial")), series_from_json(field(j, "unit"))};
}

Json step_json(const Step& st) {
  if (const auto* a = std::get_if<AffineStep>(&st)) {
    Json A = Json::array();
    for (const auto& row : a->A) A.push_back(vec_json(row));
    return Json{{"tag", "affine"}, {"A", A}, {"b", vec_json(a->b)}};
  }
  if (const auto* b = std::get_if<BlowupStep>(&st)) return Json{{"tag", "blowup"}, {"j", b->j}, {"k", b->k}};
  const auto& qs = std::get<QuasiStep>(st);
  return Json{{"tag", "quasitranslation"}, {"axis", qs.axis}, {"a", series_to_json(qs.a)}};
}

Step step_from(const Json& j) {
  const auto tag = field(j, "tag").get<std::string>();
  if (tag == "affine") {
    AffineStep a;
    for (const auto& row : field(j, "A")) a.A.push_back(vec_from(row));
    a.b = vec_from(field(j, "b"));
    return a;
  }
  if (tag == "blowup") return BlowupStep{field(j, "j").get<int>(), field(j, "k").get<int>()};
  if (tag == "quasitranslation") return QuasiStep{field(j, "axis").get<int>(), series_from_json(field(j, "a"))};
  throw Error("atlas json: unknown step tag '" + tag + "'");
}

Json map_json(const ChartMap& m) {
  Json a = Json::array();
  for (const auto& st : m.steps()) a.push_back(step_json(st));
  return a;
}

ChartMap map_from(int n, const Json& j) {
  ChartMap m(n);
  for (const auto& st : j) m.push_back(step_from(st));
  return m;
}

Json context_json(const ClassContext& c) {
  Json faces = Json::array();
  for (const auto& f : c.faces.faces) {
    faces.push_back(Json{{"dim", f.dim}, {"index", f.index}, {"vertices", f.vertices},
                         {"normal", vec_json(f.normal)}, {"offset", q(f.offset)}});
  }
  Json C = Json::array();
  for (const auto& x : c.consts.C) C.push_back(q(x));
  return Json{{"n", c.faces.n},
              {"vertices", c.faces.vertices},
              {"faces", faces},
              {"N", c.consts.N},
              {"C", C},
              {"mu_estimate", num(c.consts.mu_estimate)},
              {"eta_estimate", num(c.consts.eta_estimate)}};
}

std::shared_ptr<const ClassContext> context_from(const Json& j) {
  auto c = std::make_shared<ClassContext>();
  c->faces.n = field(j, "n").get<int>();
  c->faces.vertices = field(j, "vertices").get<std::vector<Exponent>>();
  for (const auto& fj : field(j, "faces")) {
    Face f;
    f.dim = field(fj, "dim").get<int>();
    f.index = field(fj, "index").get<int>();
    f.vertices = field(fj, "vertices").get<std::vector<Exponent>>();
    f.normal = vec_from(field(fj, "normal"));
    f.offset = q_from(field(fj, "offset"));
    c->faces.faces.push_back(std::move(f));
  }
  c->consts.N = field(j, "N").get<int>();
  c->consts.C = vec_from(field(j, "C"));
  c->consts.mu_estimate = num_from(field(j, "mu_estimate"));
  c->consts.eta_estimate = num_from(field(j, "eta_estimate"));
  return c;
}

class ContextTable {
public:
  int index(const std::shared_ptr<const ClassContext>& c) {
    auto [it, fresh] = ids_.try_emplace(c.get(), static_cast<int>(table_.size()));
    if (fresh) table_.push_back(context_json(*c));
    return it->second;
  }
  Json table() const { return table_; }

private:
  std::map<const ClassContext*, int> ids_;
  Json table_ = Json::array();
};

Json region_json(const RegionPredicate& r, ContextTable& ctx) {
  Json atoms = Json::array();
  for (const auto& atom : r.atoms) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, CubeAtom>) {
            atoms.push_back(Json{{"atom", "cube"}, {"stage", a.stage}, {"radius", q(a.radius)}, {"coords", a.coords}});
          } else if constexpr (std::is_same_v<T, LeafAtom>) {
            atoms.push_back(Json{{"atom", "leaf"}, {"stage", a.stage}, {"strict", a.strict}});
          } else if constexpr (std::is_same_v<T, ClassAtom>) {
            atoms.push_back(Json{{"atom", "class"}, {"stage", a.stage}, {"context", ctx.index(a.ctx)}, {"i", a.i}, {"j", a.j}});
          } else if constexpr (std::is_same_v<T, BallAtom>) {
            atoms.push_back(Json{{"atom", "ball"}, {"stage", a.stage}, {"coord", a.coord}, {"center", q(a.center)},
                                 {"radius", q(a.radius)}, {"negate", a.negate}});
          } else {
            atoms.push_back(Json{{"atom", "floor"}, {"stage", a.stage}, {"u", series_to_json(a.u)},
                                 {"floor", q(a.floor)}, {"negate", a.negate}});
          }
        },
        atom);
  }
  return atoms;
}

RegionPredicate region_from(const Json& j, const std::vector<std::shared_ptr<const ClassContext>>& ctx) {
  RegionPredicate r;
  for (const auto& a : j) {
    const auto kind = field(a, "atom").get<std::string>();
    const int stage = field(a, "stage").get<int>();
    if (kind == "cube") {
      r.add(CubeAtom{stage, q_from(field(a, "radius")), field(a, "coords").get<std::vector<int>>()});
    } else if (kind == "leaf") {
      r.add(LeafAtom{stage, field(a, "strict").get<std::vector<bool>>()});
    } else if (kind == "class") {
      const auto id = field(a, "context").get<std::size_t>();
      if (id >= ctx.size()) throw Error("atlas json: context index out of range");
      r.add(ClassAtom{stage, ctx[id], field(a, "i").get<int>(), field(a, "j").get<int>()});
    } else if (kind == "ball") {
      r.add(BallAtom{stage, field(a, "coord").get<int>(), q_from(field(a, "center")), q_from(field(a, "radius")),
                     field(a, "negate").get<bool>()});
    } else if (kind == "floor") {
      r.add(FloorAtom{stage, series_from_json(field(a, "u")), q_from(field(a, "floor")), field(a, "negate").get<bool>()});
    } else {
      throw Error("atlas json: unknown atom '" + kind + "'");
    }
  }
  return r;
}

Json config_json(const EngineConfig& c) {
  return Json{{"trunc_order", c.trunc_order},
              {"growth_N", c.growth_N},
              {"max_charts", c.max_charts},
              {"max_depth", c.max_depth},
              {"samples", c.samples},
              {"seed", c.seed},
              {"norm", c.norm.name()},
              {"radius", c.radius ? q(*c.radius) : Json(nullptr)},
              {"direction_den_cap", c.direction_den_cap},
              {"theorem_samples", c.theorem_samples},
              {"radius_samples", c.radius_samples}};
}

EngineConfig config_from(const Json& j) {
  EngineConfig c;
  c.trunc_order = field(j, "trunc_order").get<int>();
  c.growth_N = field(j, "growth_N").get<int>();
  c.max_charts = field(j, "max_charts").get<std::size_t>();
  c.max_depth = field(j, "max_depth").get<int>();
  c.samples = field(j, "samples").get<std::size_t>();
  c.seed = field(j, "seed").get<std::uint64_t>();
  c.norm = Norm::parse(field(j, "norm").get<std::string>());
  if (!field(j, "radius").is_null()) c.radius = q_from(field(j, "radius"));
  c.direction_den_cap = field(j, "direction_den_cap").get<int>();
  c.theorem_samples = field(j, "theorem_samples").get<std::size_t>();
  c.radius_samples = field(j, "radius_samples").get<std::size_t>();
  return c;
}

Json stats_json(const AtlasStats& s) {
  return Json{{"jobs", s.jobs},
              {"max_depth", s.max_depth},
              {"max_m", s.max_m},
              {"recentre_checks", s.recentre_checks},
              {"recentre_order_violations", s.recentre_order_violations},
              {"radius_shrinks", s.radius_shrinks},
              {"radius_failures", s.radius_failures},
              {"growth_N", s.growth_N},
              {"domination_violations", s.domination_violations}};
}

AtlasStats stats_from(const Json& j) {
  AtlasStats s;
  s.jobs = field(j, "jobs").get<std::size_t>();
  s.max_depth = field(j, "max_depth").get<int>();
  s.max_m = field(j, "max_m").get<int>();
  s.recentre_checks = field(j, "recentre_checks").get<std::size_t>();
  s.recentre_order_violations = field(j, "recentre_order_violations").get<std::size_t>();
  s.radius_shrinks = field(j, "radius_shrinks").get<std::size_t>();
  s.radius_failures = field(j, "radius_failures").get<std::size_t>();
  s.growth_N = field(j, "growth_N").get<std::vector<int>>();
  s.domination_violations = field(j, "domination_violations").get<std::size_t>();
  return s;
}

}  // namespace

Json series_to_json(const Series& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back(Json::array({e, q(c)}));
  return Json{{"n", s.dim()}, {"trunc", s.trunc_order() ? Json(*s.trunc_order()) : Json(nullptr)}, {"terms", terms}};
}

Series series_from_json(const Json& j) {
  const int n = field(j, "n").get<int>();
  std::optional<int> T;
  if (!field(j, "trunc").is_null()) T = field(j, "trunc").get<int>();
  Series s(n, T);
  for (const auto& t : field(j, "terms")) {
    auto e = t.at(0).get<Exponent>();
    if (static_cast<int>(e.size()) != n) throw Error("atlas json: exponent length differs from n");
    s.add_term(e, q_from(t.at(1)));
  }
  return s;
}

Json report_to_json(const Report& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"check", f.check}, {"input", f.input}, {"expected", f.expected}, {"got", f.got}});
  }
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  return Json{{"suite", r.suite}, {"ok", r.ok()}, {"cases", r.cases}, {"failures", failures}, {"metrics", metrics}};
}

Report report_from_json(const Json& j) {
  Report r;
  r.suite = field(j, "suite").get<std::string>();
  r.cases = field(j, "cases").get<std::size_t>();
  for (const auto& f : field(j, "failures")) {
    r.failures.push_back(Failure{field(f, "check").get<std::string>(), field(f, "input").get<std::string>(),
                                 field(f, "expected").get<std::string>(), field(f, "got").get<std::string>()});
  }
  for (const auto& [k, v] : field(j, "metrics").items()) r.metrics[k] = num_from(v);
  return r;
}

Json atlas_to_json(const Atlas& atlas, const Report* verification) {
  ContextTable ctx;
  Json charts = Json::array();
  for (const auto& c : atlas.charts) {
    Json coords = Json::array();
    for (const auto& f : c.coordinates) coords.push_back(factored_json(f));
    charts.push_back(Json{{"path", c.path},
                          {"kind", c.kind},
                          {"depth", c.depth},
                          {"truncated", c.truncated},
                          {"steps", map_json(c.map)},
                          {"region", region_json(c.region, ctx)},
                          {"base_point", vec_json(c.base_point)},
                          {"monomial", monomial_json(c.f.monomial)},
                          {"unit", series_to_json(c.f.unit)},
                          {"jacobian", factored_json(c.jacobian)},
                          {"coordinates", coords}});
  }
  Json unresolved = Json::array();
  for (const auto& u : atlas.unresolved) {
    unresolved.push_back(Json{{"path", u.path},
                              {"reason", u.reason},
                              {"steps", map_json(u.map)},
                              {"region", region_json(u.region, ctx)}});
  }
  Json out{{"schema", kSchemaVersion},
           {"n", atlas.n},
           {"input", series_to_json(atlas.input)},
           {"input_text", atlas.input.to_string()},
           {"config", config_json(atlas.config)},
           {"frame_steps", atlas.frame_steps},
           {"radius", q(atlas.radius)},
           {"stats", stats_json(atlas.stats)},
           {"contexts", nullptr},
           {"charts", charts},
           {"unresolved", unresolved}};
  out["contexts"] = ctx.table();
  if (verification) out["verification"] = report_to_json(*verification);
  return out;
}

Atlas atlas_from_json(const Json& j) {
  if (field(j, "schema").get<int>() != kSchemaVersion) throw Error("atlas json: unsupported schema version");
  Atlas a;
  a.n = field(j, "n").get<int>();
  a.input = series_from_json(field(j, "input"));
  a.config = config_from(field(j, "config"));
  a.frame_steps = field(j, "frame_steps").get<int>();
  a.radius = q_from(field(j, "radius"));
  a.stats = stats_from(field(j, "stats"));
  std::vector<std::shared_ptr<const ClassContext>> ctx;
  for (const auto& c : field(j, "contexts")) ctx.push_back(context_from(c));
  for (const auto& cj : field(j, "charts")) {
    Chart c;
    c.path = field(cj, "path").get<std::string>();
    c.kind = field(cj, "kind").get<std::string>();
    c.depth = field(cj, "depth").get<int>();
    c.truncated = field(cj, "truncated").get<bool>();
    c.map = map_from(a.n, field(cj, "steps"));
    c.region = region_from(field(cj, "region"), ctx);
    c.base_point = vec_from(field(cj, "base_point"));
    c.f = Factored{monomial_from(field(cj, "monomial")), series_from_json(field(cj, "unit"))};
    c.jacobian = factored_from(field(cj, "jacobian"));
    for (const auto& f : field(cj, "coordinates")) c.coordinates.push_back(factored_from(f));
    a.charts.push_back(std::move(c));
  }
  for (const auto& uj : field(j, "unresolved")) {
    a.unresolved.push_back(Unresolved{field(uj, "path").get<std::string>(), map_from(a.n, field(uj, "steps")),
                                      region_from(field(uj, "region"), ctx), field(uj, "reason").get<std::string>()});
  }
  return a;
}

}  // namespace monores
