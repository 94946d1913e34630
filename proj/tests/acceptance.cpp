// Acceptance runner: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

struct Timed {
  Report rep;
  double secs;
};

Timed timed(const std::function<Report()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  Report r = f();
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

bool prefix(const nlohmann::json& c, const std::string& p) { return c["id"].get<std::string>().rfind(p, 0) == 0; }

// All checks under the prefix passed, and at least one exists.
bool all_pass(const Report& r, const std::string& p, int* count = nullptr) {
  int n = 0;
  for (const auto& c : r.checks())
    if (prefix(c, p)) {
      if (c["status"] != "pass") return false;
      ++n;
    }
  if (count) *count = n;
  return n > 0;
}

const nlohmann::json* find(const Report& r, const std::string& id) {
  for (const auto& c : r.checks())
    if (c["id"] == id) return &c;
  return nullptr;
}

int failures = 0;

void line(int k, bool ok, double secs, double limit, const std::string& what) {
  bool pass = ok && secs < limit;
  if (!pass) ++failures;
  std::printf("criterion %2d  %s  %7.2fs (limit %4.0fs)  %s\n", k, pass ? "PASS" : "FAIL", secs, limit, what.c_str());
  std::fflush(stdout);
}

SuiteConfig cfg(int vars, int order, int arity) {
  SuiteConfig c;
  c.vars = vars;
  c.order = order;
  c.arity = arity;
  c.seed = 42;
  return c;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Report()>>> all;

  // 1, 2
  SuiteConfig hc = cfg(2, 2, 3);
  hc.twist = "x^2*dy";
  all.emplace_back("hochschild", [=] { return suite_hochschild(hc); });
  Timed h = timed(all.back().second);
  {
    int kinds = 0;
    const auto* cnt = find(h.rep, "d-squared/instance-count");
    bool ok = all_pass(h.rep, "d-squared/", &kinds) && cnt && (*cnt)["instances"].get<int>() >= 200;
    bool twisted = find(h.rep, "d-squared/@D((x^2)*dy)/n2") != nullptr;
    line(1, ok && twisted, h.secs, 120,
         "d^2 = 0, " + std::to_string(cnt ? (*cnt)["instances"].get<int>() : 0) + " cochains over " +
             std::to_string(kinds - 1) + " (kind, n) classes");
    const auto* cc = find(h.rep, "coherence/instance-count");
    line(2, all_pass(h.rep, "coherence/") && cc && (*cc)["instances"].get<int>() >= 100, h.secs, 120,
         "tensor differential = evaluation formula, " + std::to_string(cc ? (*cc)["instances"].get<int>() : 0) +
             " cochains, all monomial tuples of degree <= 3");
  }

  // 3
  all.emplace_back("braces", [] { return suite_braces(cfg(2, 2, 3)); });
  Timed b = timed(all.back().second);
  line(3,
       b.rep.ok() && all_pass(b.rep, "epsilon-sign/") && all_pass(b.rep, "arity-formula/") &&
           all_pass(b.rep, "gerstenhaber-voronov/") && all_pass(b.rep, "homotopy-commutativity/") &&
           all_pass(b.rep, "homotopy-witness/"),
       b.secs, 180, "eps signs, arity formula, GV relation, homotopy commutativity by exact solve");

  // 4
  SuiteConfig pc = cfg(2, 3, 3);
  pc.twist = "x^2*dy";
  all.emplace_back("phi", [=] { return suite_phi(pc); });
  Timed p = timed(all.back().second);
  {
    const auto* cnt = find(p.rep, "random-pairs/instance-count");
    line(4,
         p.rep.ok() && all_pass(p.rep, "generators/") && all_pass(p.rep, "random-pairs/") &&
             all_pass(p.rep, "example/phi(d)") && all_pass(p.rep, "example/phi(d^2)") &&
             find(p.rep, "random-pairs/nu=(x^2)*dy/n2") && cnt && (*cnt)["instances"].get<int>() >= 200,
         p.secs, 120,
         "phi multiplicative, " + std::to_string(cnt ? (*cnt)["instances"].get<int>() : 0) +
             " random pairs, twisted and untwisted, orders <= 3");
  }

  // 5
  all.emplace_back("diff-complex n=1", [] { return cohomology_diff_complex(cfg(1, 2, 3)); });
  all.emplace_back("diff-complex n=2", [] { return cohomology_diff_complex(cfg(2, 2, 3)); });
  {
    Timed d1 = timed(all[all.size() - 2].second);
    Timed d2 = timed(all.back().second);
    bool ok = d1.rep.count(Status::Pass) == static_cast<int>(d1.rep.checks().size()) &&
              d2.rep.count(Status::Pass) == static_cast<int>(d2.rep.checks().size());
    line(5, ok, d1.secs + d2.secs, 600,
         "stable H^0 = #monomials = centralizer, H^1 = H^2 = 0, n in {1,2}, w in [-2,2]");
  }

  // 6
  SuiteConfig mc = cfg(1, 1, 2);
  mc.bar_length = 2;
  mc.weight = 0;
  all.emplace_back("main-theorem", [=] { return suite_main_theorem(mc); });
  Timed m = timed(all.back().second);
  {
    const auto* h0 = find(m.rep, "window/h0-equals-weyl-count");
    const auto* hv = find(m.rep, "window/higher-cohomology-vanishes");
    bool ok = m.rep.ok() && h0 && (*h0)["h0"] == 2 && (*h0)["status"] == "pass" && hv && (*hv)["status"] == "pass" &&
              all_pass(m.rep, "chi-cycle/") && all_pass(m.rep, "chi-multiplicative/") &&
              all_pass(m.rep, "window/chi-onto-h0");
    line(6, ok, m.secs, 900, "chi cycles and multiplicative, window H^0 = 2 = Weyl count, chi onto H^0, H^1 = 0 stable");
  }

  // 7
  SuiteConfig tc = cfg(2, 2, 3);
  tc.twist = "x^2*dy";
  all.emplace_back("torsor", [=] { return suite_torsor(tc); });
  Timed t = timed(all.back().second);
  line(7, t.rep.ok() && all_pass(t.rep, "generator-pairs/") && all_pass(t.rep, "random-pairs/") && all_pass(t.rep, "inverse/"),
       t.secs, 60, "torsor maps multiplicative and inverted by the opposite shift");

  // 8
  all.emplace_back("bv", [] { return suite_bv(cfg(3, 2, 3)); });
  Timed bv = timed(all.back().second);
  line(8,
       bv.rep.ok() && all_pass(bv.rep, "twisted-de-rham-squared/") && all_pass(bv.rep, "contraction-plus-delta-squared/") &&
           all_pass(bv.rep, "transport-") && all_pass(bv.rep, "polarization-biderivation/") &&
           all_pass(bv.rep, "polarization-nonzero"),
       bv.secs, 120, "(d + df^)^2 = 0, (i_df + delta)^2 = 0, transport signs +1, nonzero biderivation");

  // 9
  {
    struct Case {
      const char* f;
      int n, mu;
    };
    bool ok = true;
    std::string got;
    double secs = 0;
    for (Case c : {Case{"x^2", 1, 1}, Case{"x^3", 1, 2}, Case{"x^3+y^3", 2, 4}}) {
      SuiteConfig fc = cfg(c.n, 2, 3);
      fc.f = c.f;
      fc.degree_cap = 12;
      all.emplace_back(std::string("twisted-derham ") + c.f, [=] { return cohomology_forms(fc, Flavor::TwistedDR, c.n); });
      Timed r = timed(all.back().second);
      secs += r.secs;
      const auto* mil = find(r.rep, "milnor");
      ok = ok && mil && (*mil)["status"] == "pass" && (*mil)["jacobian"] == c.mu && (*mil)["top"] == c.mu;
      if (mil) got += std::string(c.f) + " -> " + std::to_string((*mil)["top"].get<int>()) + "  ";
    }
    SuiteConfig zc = cfg(2, 2, 3);
    zc.f = "0";
    zc.degree_cap = 12;
    all.emplace_back("twisted-derham 0", [=] { return cohomology_forms(zc, Flavor::TwistedDR, 2); });
    Timed z = timed(all.back().second);
    secs += z.secs;
    ok = ok && all_pass(z.rep, "poincare-lemma");
    line(9, ok, secs, 180, got + "0 -> H^0 = 1");
  }

  // 10
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    for (const auto& [name, f] : all) {
      std::string a = f().to_json().dump(), b = f().to_json().dump();
      if (a != b) {
        ok = false;
        bad += name + " ";
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line(10, ok, secs, 1800, ok ? std::to_string(all.size()) + " suites byte-identical on rerun" : "differs: " + bad);
  }
  std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: PASS");
  return failures ? 1 : 0;
}
