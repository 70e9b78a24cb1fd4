// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "../unit/helpers.hpp"

using namespace bdt;
using namespace bdt::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// The builtin session restricted to the tasks accepted by `keep`.
Report run_builtin(const std::string& name, const std::function<bool(const TaskDecl&)>& keep) {
  Session s = builtin_example(name);
  std::vector<TaskDecl> tasks;
  for (auto& t : s.tasks)
    if (keep(t)) tasks.push_back(t);
  s.tasks = std::move(tasks);
  return run_session(s);
}

bool has_label(const TaskDecl& t, const std::string& label) {
  const auto* l = t.find("label");
  return l && l->text == label;
}

/// First failing certificate or error across the report, empty when all pass.
std::string first_failure(const Report& r) {
  for (const auto& t : r.tasks) {
    if (!t.error.empty()) return t.task + ": " + t.error;
    for (const auto& c : t.certificates)
      if (!c.passed) return t.task + ": " + c.name + ": " + c.detail;
  }
  return {};
}

bool note_contains(const Report& r, const std::string& needle) {
  for (const auto& t : r.tasks)
    for (const auto& n : t.notes)
      if (n.find(needle) != std::string::npos) return true;
  return false;
}

int failures = 0;

void line(int n, bool ok, double secs, const std::string& what) {
  if (!ok) ++failures;
  std::printf("criterion %d: %s (%.1f s) %s\n", n, ok ? "PASS" : "FAIL", secs, what.c_str());
  std::fflush(stdout);
}

void criterion1() {
  auto t0 = Clock::now();
  Report r = run_builtin("cm3", [](const TaskDecl& t) {
    return has_label(t, "standard Hamiltonian") || has_label(t, "momentum");
  });
  double s = seconds_since(t0);
  std::string f = first_failure(r);
  bool ok = f.empty() && r.tasks.size() == 2 && s < 60;
  line(1, ok, s, ok ? "CM3 K intertwines Delta with the standard Hamiltonian and commutes with D[x1]+D[x2]+D[x3]" : f);
}

void criterion2() {
  auto t0 = Clock::now();
  Report r = run_builtin("bk", [](const TaskDecl& t) { return t.kind == "divide" || t.kind == "commute"; });
  double s = seconds_since(t0);
  std::string f = first_failure(r);
  bool ok = f.empty() && r.tasks.size() == 5 && s < 120;
  line(2, ok, s, ok ? "q^3, x1 q^3, x2 q^3 divide exactly by K (pivot D[x1]); quotients commute" : f);
  if (note_contains(r, "does not right-divide"))
    std::printf("  info: the printed K, with D[x1] in its second factor, leaves a nonzero remainder on q^3; "
                "the corrected K uses D[x2]\n");
}

void criterion3() {
  auto t0 = Clock::now();
  Report r = run_builtin("sec5-example1", [](const TaskDecl& t) { return t.kind == "transform"; });
  double s = seconds_since(t0);
  std::string f = first_failure(r);
  bool flagged = note_contains(r, "printed K differs") && note_contains(r, "printed Q differs") &&
                 note_contains(r, "printed generators use f^2");
  bool dims = true;
  for (const auto& c : r.tasks.at(0).certificates)
    if (c.name.find("dimension") != std::string::npos) dims = dims && c.detail.rfind("spectral dimension 2", 0) == 0;
  bool ok = f.empty() && flagged && dims && s < 60;
  line(3, ok, s,
       ok ? "K, R, Q identities hold with symbolic s; both transforms pass all certificates; printed K, Q and f^2 flagged"
          : (f.empty() ? std::string("discrepancy flags or dimension missing") : f));
}

void criterion4() {
  auto t0 = Clock::now();
  std::string f;
  std::size_t count = 0;
  bool control = false;
  for (const auto& name : builtin_names()) {
    if (name == "cm3-iterated") continue;  // same pair and (f, g) as cm3
    // transforms that register a repaired pair are kept for the vanishing checks on it
    Report r = run_builtin(name, [](const TaskDecl& t) { return t.kind == "vanishing" || t.find("repair"); });
    for (const auto& t : r.tasks) count += t.kind == "vanishing";
    if (f.empty()) f = first_failure(r);
    control = control || note_contains(r, "no vanishing within 8 iterations");
  }
  double s = seconds_since(t0);
  bool ok = f.empty() && control;
  line(4, ok, s,
       ok ? std::to_string(count) + " vanishing checks pass; D[x1]^2 + x1^3 with g = x1 reported non-terminating"
          : (f.empty() ? std::string("control not reported") : f));
}

void criterion5() {
  auto t0 = Clock::now();
  std::string f;
  for (const char* name : {"weyl-n", "airy-product"}) {
    Report r = run_builtin(name, [](const TaskDecl& t) { return t.kind == "duality"; });
    if (f.empty()) f = first_failure(r);
  }
  Report sec5 = run_builtin("sec5-example1", [](const TaskDecl& t) { return t.kind == "transform"; });
  bool exchange = note_contains(sec5, "exchange_xz(K psi) = b(K) psi holds");
  double s = seconds_since(t0);
  bool ok = f.empty() && exchange;
  std::string what = f.empty() ? "check_duality passes 100 words on Weyl and Airy" : f;
  if (!exchange)
    what += "; exchange_xz(K psi) = b(K) psi fails for the f = l1^2 + l2, g = m1 + s m2 example "
            "(K psi = b(K) psi does hold)";
  line(5, ok, s, what);
}

void criterion6() {
  auto t0 = Clock::now();
  Report r = run_builtin("weyl-n", [](const TaskDecl& t) { return t.kind == "transform"; });
  double s = seconds_since(t0);
  std::string f = first_failure(r);
  bool golden = false;
  for (const auto& c : r.tasks.at(0).certificates) golden = golden || (c.name == "golden T0" && c.passed);
  bool ok = f.empty() && golden && r.tasks.size() == 2;
  line(6, ok, s, ok ? "two iterations from S_W^1 pass all certificates; T0 = D[x1]^2 - 2/x1 D[x1]" : f);
}

// Property laws, 200 cases each at fixed seeds.
constexpr int kCases = 200;

std::string properties() {
  auto r = xz({"x1", "x2"}, {"z1", "z2"}, {"s"});
  const std::vector<std::size_t> vars{0, 1, 4};
  auto fun = [&](const RationalFunction& f) { return DiffOperator::function(r, Block::x, f); };
  Random rnd(701);
  for (int i = 0; i < kCases; ++i) {
    RationalFunction a = rnd.rational(r, vars), b = rnd.rational(r, vars), c = rnd.rational(r, vars);
    if (!((a + b) + c == a + (b + c)) || !(a * b == b * a) || !((a * b) * c == a * (b * c)) ||
        !((a + b) * c == a * c + b * c) || (!a.is_zero() && !(a * a.inverse()).is_one()))
      return "field axioms: " + a.to_string() + " ; " + b.to_string() + " ; " + c.to_string();
  }
  for (int i = 0; i < kCases; ++i) {
    DiffOperator a = rnd.op(r, Block::x, vars, 3, i % 3 == 0), b = rnd.op(r, Block::x, vars, 3),
                 c = rnd.op(r, Block::x, vars, 3, i % 3 == 1);
    if (!((a * b) * c == a * (b * c))) return "associativity: " + a.to_string();
    if (!a.is_zero() && !b.is_zero() && order(a * b) != order(a) + order(b)) return "order additivity: " + a.to_string();
  }
  for (int i = 0; i < kCases; ++i) {
    DiffOperator a = rnd.op(r, Block::x, vars, 2);
    DiffOperator g = fun(RationalFunction(rnd.nonzero_poly(r, vars, 2, 2)));
    unsigned n = static_cast<unsigned>(rnd.integer(1, 3));
    DiffOperator left(r, Block::x);
    for (unsigned j = 0; j <= n; ++j) {
      mpz_class cj;
      mpz_bin_uiui(cj.get_mpz_t(), n, j);
      left += fun(RationalFunction(mpq_class(cj))) * ad_pow(g, a, j) * g.pow(n - j);
    }
    if (!(g.pow(n) * a == left)) return "binomial identity: " + a.to_string();
  }
  for (int i = 0; i < kCases; ++i) {
    DiffOperator k = rnd.op(r, Block::x, vars, 2, i % 2);
    if (k.is_zero()) k = fun(RationalFunction(1));
    DiffOperator a = rnd.op(r, Block::x, vars, 4);
    DivisionResult d = right_divide(a, k, static_cast<std::size_t>(rnd.integer(0, 1)));
    if (!(d.quotient * k + d.remainder == a)) return "division contract: " + a.to_string() + " / " + k.to_string();
  }
  for (int i = 0; i < kCases; ++i) {
    DiffOperator a = rnd.op(r, Block::x, {0, 1, 2, 4}, 3, i % 2);
    RationalFunction f = rnd.rational(r, {0, 1, 2, 3, 4}, 3);
    if (!(op(a.to_string(), r) == a) || !(fn(f.to_string(), r) == f)) return "round trip: " + a.to_string();
  }
  return {};
}

void criterion7() {
  auto t0 = Clock::now();
  std::string f = properties();
  double s = seconds_since(t0);
  line(7, f.empty(), s,
       f.empty() ? "field axioms, associativity, order additivity, binomial identities, division contract, "
                   "round trip: 200 cases each"
                 : f);
}

}  // namespace

int main() {
  int n = 0;
  for (auto c : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7}) {
    ++n;
    try {
      c();
    } catch (const std::exception& e) {
      line(n, false, 0, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
