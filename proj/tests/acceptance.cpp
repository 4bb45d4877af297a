// One line per acceptance criterion; exit status is nonzero when any criterion fails.
#include "monores/atlas_json.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace monores;

namespace {

struct FixtureRun {
  std::string text;
  int n = 0;
  double seconds = 0;
  std::size_t charts = 0;
  std::size_t unresolved = 0;
  Report report;
  std::string error;
};

std::size_t failures_of(const Report& r, std::initializer_list<const char*> checks) {
  std::size_t k = 0;
  for (const auto& f : r.failures) {
    for (const char* c : checks) k += f.check == c;
  }
  return k;
}

FixtureRun run_fixture(const std::string& text, int n, const Norm& norm) {
  FixtureRun r{text, n};
  EngineConfig cfg;
  cfg.norm = norm;
  cfg.trunc_order = 12;
  const Series f = parse_series(text, n);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const Atlas atlas = resolve(f, cfg);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.charts = atlas.charts.size();
    r.unresolved = atlas.unresolved.size();
    r.report = atlas_verify(atlas, f, 1000, 42);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

struct TheoremRun {
  std::size_t fixtures = 0;
  std::size_t violations = 0;
  double min_mu = 1e300;
  int max_N = 0;
  std::string detail;
};

TheoremRun theorem_sampling(const Norm& norm, bool two_variable_only) {
  TheoremRun t;
  for (const auto& [text, n] : acceptance_fixtures()) {
    if (two_variable_only && n != 2) continue;
    const FaceData fd = FaceData::from(build_polyhedron(parse_series(text, n)));
    if (fd.faces.size() < 2) continue;
    auto [consts, rep] = adaptive_constants(fd, 10000, 42, norm);
    ++t.fixtures;
    t.violations += rep.violations_a + rep.violations_b;
    t.min_mu = std::min(t.min_mu, rep.mu_hat);
    t.max_N = std::max(t.max_N, consts.N);
    std::ostringstream s;
    s << " [" << text << ": N=" << consts.N << " mu=" << std::setprecision(3) << rep.mu_hat << "]";
    t.detail += s.str();
  }
  return t;
}

bool exactness(const std::vector<FixtureRun>& runs, std::string& detail) {
  bool ok = true;
  std::ostringstream s;
  double worst = 0;
  std::size_t max_charts = 0, fails = 0;
  for (const auto& r : runs) {
    if (!r.error.empty()) {
      ok = false;
      s << " [" << r.text << ": " << r.error << "]";
      continue;
    }
    const std::size_t k = failures_of(r.report, {"factorization", "coordinates"});
    fails += k;
    worst = std::max(worst, r.seconds);
    max_charts = std::max(max_charts, r.charts);
    ok = ok && r.seconds < 60 && r.charts <= 512 && k == 0;
  }
  std::ostringstream head;
  head << runs.size() << " fixtures, max " << max_charts << " charts, slowest " << std::fixed
       << std::setprecision(2) << worst << " s, " << fails << " check failures";
  detail = head.str() + s.str();
  return ok;
}

std::string run_cli(const std::string& cli, const std::string& args, int& status) {
  const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return {};
  }
  std::string out;
  char buf[65536];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  status = pclose(p);
  return out;
}

int report_line(int id, bool pass, const std::string& name, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << detail << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  int failed = 0;

  std::vector<FixtureRun> real;
  for (const auto& [text, n] : acceptance_fixtures()) real.push_back(run_fixture(text, n, Norm::real()));

  std::string d1;
  failed += report_line(1, exactness(real, d1), "monomialization exactness", d1);

  {
    std::size_t k = 0;
    double worst = 0;
    for (const auto& r : real) {
      k += failures_of(r.report, {"jacobian", "jacobian factorization"});
      auto it = r.report.metrics.find("jacobian_max_rel_error");
      if (it != r.report.metrics.end()) worst = std::max(worst, it->second);
    }
    std::ostringstream s;
    s << k << " failures, max relative error " << std::setprecision(3) << worst;
    failed += report_line(2, k == 0 && worst <= 1e-6, "finite-difference Jacobian", s.str());
  }

  {
    bool ok = true;
    std::ostringstream s;
    for (const auto& r : real) {
      auto it = r.report.metrics.find("coverage");
      const double c = it == r.report.metrics.end() ? 0.0 : it->second;
      ok = ok && c >= 0.999 && r.error.empty();
      s << " [" << r.text << ": " << std::fixed << std::setprecision(3) << c;
      if (r.unresolved) s << ", " << r.unresolved << " unresolved pieces";
      s << "]";
    }
    failed += report_line(3, ok, "coverage >= 0.999", s.str().substr(1));
  }

  {
    const Report o = ordering_suite(500, 42, 1000000);
    std::ostringstream s;
    s << o.cases << " sets, " << o.failures.size() << " failures, largest tree "
      << static_cast<long long>(o.metrics.at("max_nodes")) << " nodes";
    failed += report_line(4, o.ok() && o.cases == 500, "monomial ordering", s.str());
  }

  {
    const TheoremRun t = theorem_sampling(Norm::real(), false);
    std::ostringstream s;
    s << t.fixtures << " fixtures, " << t.violations << " violations, min mu " << std::setprecision(3) << t.min_mu
      << t.detail;
    failed += report_line(5, t.violations == 0 && t.min_mu > 0, "domination sampling", s.str());
  }

  {
    const Report h = hull_suite(200, 42);
    std::ostringstream s;
    s << h.cases << " sets, " << h.failures.size() << " disagreements";
    failed += report_line(6, h.ok() && h.cases == 200, "polyhedron oracles", s.str());
  }

  {
    std::vector<FixtureRun> padic;
    for (const auto& [text, n] : acceptance_fixtures()) {
      if (n == 2) padic.push_back(run_fixture(text, n, Norm::padic(2)));
    }
    std::string d;
    const bool ex = exactness(padic, d);
    const TheoremRun t = theorem_sampling(Norm::padic(2), true);
    std::ostringstream s;
    s << d << "; sampling: " << t.fixtures << " fixtures, " << t.violations << " violations, min mu "
      << std::setprecision(3) << t.min_mu;
    failed += report_line(7, ex && t.violations == 0 && t.min_mu > 0, "2-adic rerun of 1 and 5", s.str());
  }

  {
    bool ok = argc > 1;
    std::ostringstream s;
    if (!ok) {
      s << "no CLI path given";
    } else {
      std::size_t same = 0;
      for (const auto& [text, n] : acceptance_fixtures()) {
        const std::string args = "resolve -n " + std::to_string(n) + " '" + text + "' --seed 42";
        int st1 = 0, st2 = 0;
        const std::string a = run_cli(argv[1], args, st1);
        const std::string b = run_cli(argv[1], args, st2);
        const bool eq = !a.empty() && a == b && st1 == st2;
        same += eq;
        ok = ok && eq;
      }
      s << same << "/" << acceptance_fixtures().size() << " fixtures byte-identical across two runs";
    }
    failed += report_line(8, ok, "determinism", s.str());
  }

  return failed == 0 ? 0 : 1;
}
