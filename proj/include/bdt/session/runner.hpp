#pragma once

/**
 * @file runner.hpp
 * @brief Resolves a Session and executes its tasks in declaration order.
 *
 * Task kinds (arguments are `key = value`, separated by ';'):
 *   verify     K, L, Lt                      K o L = Lt o K
 *   divide     K, L, pivot [, expect, store] right division of K o L by K
 *              N, D, pivot                   plain right division N = Q o D + R
 *   commute    ops = A, B, ... | system      pairwise commutators vanish
 *   vanishing  pair, f, g | L, g [, max, expect]
 *   transform  pair, f, g [, side, prefix, dual_prefix, repair, pivot,
 *              expect.NAME, printed_K, printed_Q, printed_power]
 *              side = lowest transforms only f^{n+1}
 *   duality    pair [, count, length]        random words: w psi = b(w) psi
 *   report     pair | op | function          echo canonical forms
 * Every task also accepts `label`.
 */

#include <chrono>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bdt/ore/division.hpp"
#include "bdt/qhs/transform.hpp"
#include "bdt/session/parser.hpp"
#include "bdt/session/report.hpp"
#include "bdt/session/session.hpp"

namespace bdt {

struct RunOptions {
  std::uint64_t seed = 1;
  /// Override the session's limits when set.
  std::optional<int> max_order;
  std::optional<std::size_t> max_terms;
};

namespace detail {

/// Longest operator string copied into a report before it is summarized.
inline constexpr std::size_t kMaxPrintedTerms = 4000;

inline std::string summarize(const DiffOperator& d) {
  if (d.term_count() <= kMaxPrintedTerms) return d.to_string();
  return "<order " + std::to_string(d.order()) + ", " + std::to_string(d.term_count()) + " terms>";
}

class SessionRunner {
 public:
  SessionRunner(const Session& s, RunOptions opt) : session_(s), opt_(opt) { resolve(); }

  Report run() {
    Report r;
    r.session = session_.name;
    r.seed = opt_.seed;
    ResourceLimits lim;
    lim.max_order = opt_.max_order.value_or(session_.max_order.value_or(lim.max_order));
    lim.max_terms = opt_.max_terms.value_or(session_.max_terms.value_or(lim.max_terms));
    ScopedResourceLimits scope(lim);
    for (std::size_t i = 0; i < session_.tasks.size(); ++i) r.tasks.push_back(run_task(session_.tasks[i], i));
    return r;
  }

 private:
  // ---------------------------------------------------------------- resolution

  ParseEnv env(const SourceText& t, const RegistryPtr& reg, bool with_defs = true) const {
    ParseEnv e{reg, with_defs ? &defs_ : nullptr};
    e.line = t.line;
    e.column_offset = t.column - 1;
    return e;
  }

  DiffOperator op(const SourceText& t, Block block = Block::x) const {
    ParsedExpr e = parse_expression(t.text, env(t, reg_));
    if (e.op.is_function()) return DiffOperator::function(reg_, block, e.op.function_part());
    return e.op;
  }

  RationalFunction function(const SourceText& t, const RegistryPtr& reg, bool with_defs = true) const {
    ParsedExpr e = parse_expression(t.text, env(t, reg, with_defs));
    if (!e.op.is_function()) throw ParseError("expected a function, found an operator of positive order", t.line, t.column);
    return e.op.function_part().with_registry(reg);
  }

  Polynomial polynomial(const SourceText& t, const RegistryPtr& reg, bool with_defs = true) const {
    RationalFunction f = function(t, reg, with_defs);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial", t.line, t.column);
    return f.as_polynomial().with_registry(reg);
  }

  void resolve() {
    reg_ = VariableRegistry::create(session_.x_vars, session_.z_vars, session_.params);
    for (const auto& [name, text] : session_.defines) {
      if (reg_->find(name)) throw ValidationError("definition '" + name + "' shadows a variable");
      if (defs_.count(name)) throw ValidationError("'" + name + "' is defined twice");
      defs_.emplace(name, parse_expression(text.text, env(text, reg_)).op);
    }
    for (const auto& k : session_.kernels) resolve_kernel(k);
    for (const auto& s : session_.systems) resolve_system(s);
    for (const auto& p : session_.pairs) resolve_pair(p);
    std::map<std::string, bool> pending;
    for (const auto& [name, p] : pairs_) pending[name] = true;
    for (const auto& t : session_.tasks) check_task_names(t, pending);
  }

  void resolve_kernel(const KernelDecl& k) {
    if (kernels_.count(k.name)) throw ValidationError("kernel '" + k.name + "' is declared twice");
    if (k.symbols.empty()) throw ValidationError("kernel '" + k.name + "' declares no symbols");
    for (const auto& s : k.symbols)
      if (reg_->find(s) || defs_.count(s))
        throw ValidationError("kernel symbol '" + s + "' clashes with a variable or definition");
    RegistryPtr ext = reg_->extended(k.symbols);
    KernelRules rules;
    for (const auto& r : k.rules) {
      RationalFunction rhs = function(r.rhs, ext, false);
      unsigned sym_mask = 0;
      for (std::size_t i = reg_->size(); i < ext->size(); ++i) sym_mask |= 1u << i;
      if (rhs.den().support() & sym_mask)
        throw ParseError("kernel symbols may not appear in a denominator", r.rhs.line, r.rhs.column);
      std::map<std::size_t, std::vector<Term>> parts;
      for (const auto& t : rhs.num().terms()) {
        std::optional<std::size_t> which;
        unsigned degree = 0;
        Monomial rest = t.mono;
        for (std::size_t i = reg_->size(); i < ext->size(); ++i) {
          degree += rest.exp[i];
          if (rest.exp[i]) which = i;
          rest.exp[i] = 0;
        }
        if (degree != 1)
          throw ParseError("kernel rule must be linear in the symbols of '" + k.name + "'", r.rhs.line, r.rhs.column);
        parts[*which].push_back({rest, t.coeff});
      }
      KernelCombination comb;
      Polynomial den = rhs.den().with_registry(reg_);
      for (auto& [i, terms] : parts)
        comb.emplace(k.symbols[i - reg_->size()], RationalFunction::fraction(Polynomial::from_terms(reg_, std::move(terms)), den));
      if (!rules.emplace(std::make_pair(r.symbol, r.variable), std::move(comb)).second)
        throw ValidationError("kernel '" + k.name + "' repeats the rule for D[" + r.variable + "] " + r.symbol);
    }
    kernels_.emplace(k.name, KernelBasis::define(reg_, k.name, k.symbols, rules, k.symmetric));
  }

  void resolve_system(const SystemDecl& d) {
    if (systems_.count(d.name)) throw ValidationError("system '" + d.name + "' is declared twice");
    QuantumSystem s;
    s.name = d.name;
    s.registry = reg_;
    s.block = d.block == "z" ? Block::z : Block::x;
    for (const auto& g : d.generators) {
      if (s.find(g.name)) throw ValidationError("system '" + d.name + "' declares generator '" + g.name + "' twice");
      s.generators.push_back({g.name, polynomial(g.spectral, reg_), op(g.image, s.block)});
    }
    for (const auto& l : d.localizers) s = localize(std::move(s), polynomial(l, reg_));
    systems_.emplace(d.name, std::move(s));
  }

  const QuantumSystem& system(const std::string& name) const {
    auto it = systems_.find(name);
    if (it == systems_.end()) throw ValidationError("unknown system '" + name + "'");
    return it->second;
  }

  void resolve_pair(const PairDecl& d) {
    if (pairs_.count(d.name)) throw ValidationError("pair '" + d.name + "' is declared twice");
    auto k = kernels_.find(d.kernel);
    if (k == kernels_.end()) throw ValidationError("pair '" + d.name + "' uses unknown kernel '" + d.kernel + "'");
    WaveFunction psi = WaveFunction::seed(k->second);
    if (d.psi) psi = apply_operator(op(*d.psi), psi);
    if (d.scale) psi = psi.scaled(function(*d.scale, reg_));
    pairs_.emplace(d.name, make_pair(d.name, system(d.primal), system(d.dual), std::move(psi)));
  }

  /// Every pair or system a task names must exist by the time it runs.
  void check_task_names(const TaskDecl& t, std::map<std::string, bool>& known) const {
    static const char* kinds[] = {"verify", "divide", "commute", "vanishing", "transform", "duality", "report"};
    bool ok = false;
    for (const char* k : kinds) ok = ok || t.kind == k;
    if (!ok) throw ParseError("unknown task kind '" + t.kind + "'", t.line, 1);
    if (const auto* p = t.find("pair"))
      if (!known.count(p->text)) throw ParseError("unknown pair '" + p->text + "'", p->line, p->column);
    if (const auto* s = t.find("system"))
      if (!systems_.count(s->text)) throw ParseError("unknown system '" + s->text + "'", s->line, s->column);
    if (const auto* r = t.find("repair")) known[r->text] = true;
  }

  // --------------------------------------------------------------- execution

  static const SourceText& need(const TaskDecl& t, const std::string& key) {
    if (const auto* a = t.find(key)) return *a;
    throw ParseError("task '" + t.kind + "' needs argument '" + key + "'", t.line, 1);
  }

  static std::string get(const TaskDecl& t, const std::string& key, const std::string& fallback) {
    const auto* a = t.find(key);
    return a ? a->text : fallback;
  }

  static unsigned get_uint(const TaskDecl& t, const std::string& key, unsigned fallback) {
    const auto* a = t.find(key);
    if (!a) return fallback;
    try {
      return static_cast<unsigned>(std::stoul(a->text));
    } catch (const std::logic_error&) {
      throw ParseError("expected a non-negative integer for '" + key + "'", a->line, a->column);
    }
  }

  const BispectralPair& pair(const TaskDecl& t) const {
    const auto& name = need(t, "pair");
    auto it = pairs_.find(name.text);
    if (it == pairs_.end()) throw ValidationError("pair '" + name.text + "' is not available (a repair step failed?)");
    return it->second;
  }

  std::size_t pivot(const TaskDecl& t) const {
    std::string name = get(t, "pivot", reg_->x_count() ? reg_->name(0) : "");
    auto idx = reg_->find(name);
    if (!idx || !reg_->block_of(*idx)) throw ValidationError("pivot '" + name + "' is not an x- or z-variable");
    return reg_->local_index(*idx);
  }

  TaskRecord run_task(const TaskDecl& t, std::size_t index) {
    TaskRecord rec;
    rec.kind = t.kind;
    rec.task = get(t, "label", t.kind + "#" + std::to_string(index + 1));
    auto start = std::chrono::steady_clock::now();
    try {
      if (t.kind == "verify") verify(t, rec);
      else if (t.kind == "divide") divide(t, rec);
      else if (t.kind == "commute") commute(t, rec);
      else if (t.kind == "vanishing") vanishing(t, rec);
      else if (t.kind == "transform") transform(t, rec);
      else if (t.kind == "duality") duality(t, rec, index);
      else report(t, rec);
    } catch (const ResourceLimitExceeded& e) {
      rec.error = e.what();
      rec.error_code = ExitCode::resource_limit;
    } catch (const Error& e) {
      rec.error = e.what();
      rec.error_code = ExitCode::invalid_input;
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
  }

  void verify(const TaskDecl& t, TaskRecord& rec) {
    DiffOperator k = op(need(t, "K")), l = op(need(t, "L")), lt = op(need(t, "Lt"));
    rec.inputs = {{"K", k.to_string()}, {"L", l.to_string()}, {"Lt", lt.to_string()}};
    auto r = verify_intertwining(k, l, lt);
    rec.certificates.push_back(
        {"intertwining", r.ok, r.ok ? "K o L = Lt o K" : "defect K o L - Lt o K = " + summarize(r.defect)});
  }

  void divide(const TaskDecl& t, TaskRecord& rec) {
    const std::size_t pv = pivot(t);
    DiffOperator num, den;
    if (t.find("N")) {
      num = op(need(t, "N"));
      den = op(need(t, "D"));
      rec.inputs = {{"N", num.to_string()}, {"D", den.to_string()}};
    } else {
      den = op(need(t, "K"));
      DiffOperator l = op(need(t, "L"));
      num = den * l;
      rec.inputs = {{"K", den.to_string()}, {"L", l.to_string()}};
    }
    rec.inputs.emplace_back("pivot", get(t, "pivot", reg_->name(reg_->global_index(den.block(), pv))));
    DivisionResult r = right_divide(num, den, pv);
    bool remult = r.quotient * den + r.remainder == num;
    rec.certificates.push_back({"remultiplication", remult, remult ? "Q o D + R reproduces the dividend" : "Q o D + R differs from the dividend"});
    const std::string expect = get(t, "expect", "zero");
    if (expect != "zero" && expect != "remainder") throw ValidationError("expect must be 'zero' or 'remainder'");
    bool zero = r.remainder.is_zero();
    if (expect == "zero") {
      rec.certificates.push_back({"zero remainder", zero, zero ? "R = 0" : "R has order " + std::to_string(r.remainder.order())});
    } else {
      rec.certificates.push_back({"nonzero remainder (expected)", !zero, zero ? "R = 0 although a remainder was expected" : "R has order " + std::to_string(r.remainder.order()) + " and " + std::to_string(r.remainder.term_count()) + " terms"});
      if (!zero) rec.notes.push_back("the divisor does not right-divide the dividend, so it cannot intertwine this operator");
    }
    rec.derived.emplace_back("quotient", summarize(r.quotient));
    if (!zero) rec.derived.emplace_back("remainder", summarize(r.remainder));
    if (const auto* s = t.find("store")) {
      if (reg_->find(s->text) || !is_identifier(s->text)) throw ValidationError("cannot store the quotient as '" + s->text + "'");
      defs_[s->text] = r.quotient;
      rec.notes.push_back("quotient stored as " + s->text);
    }
  }

  void commute(const TaskDecl& t, TaskRecord& rec) {
    QuantumSystem s;
    if (const auto* name = t.find("system")) {
      s = system(name->text);
      rec.inputs = {{"system", name->text}};
    } else {
      const auto& list = need(t, "ops");
      s.registry = reg_;
      std::size_t i = 0;
      for (const auto& part : split_list(list.text)) {
        DiffOperator d = op({part, list.line, list.column});
        rec.inputs.emplace_back("op" + std::to_string(++i), d.to_string());
        s.generators.push_back({"op" + std::to_string(i), Polynomial{}, d});
      }
    }
    auto c = detail::commutativity_certificate(s);
    rec.certificates.push_back({c.name, c.passed, c.detail});
  }

  void vanishing(const TaskDecl& t, TaskRecord& rec) {
    if (t.find("pair")) {
      const auto& p = pair(t);
      Polynomial f = polynomial(need(t, "f"), p.letter_registry, false);
      Polynomial g = polynomial(need(t, "g"), p.letter_registry, false);
      DressingInput in = dressing_input(p, f, g);
      rec.inputs = {{"pair", p.name}, {"f", f.to_string()}, {"g", g.to_string()}};
      auto v = ad_vanishing_order(in.lf, in.g, in.n + 1);
      rec.derived.emplace_back("L_f", in.lf.to_string());
      rec.derived.emplace_back("g", in.g.to_string());
      rec.derived.emplace_back("n = ord L'_g", std::to_string(in.n));
      if (v.terminated) rec.derived.emplace_back("vanishing order", std::to_string(v.order));
      rec.certificates.push_back({"vanishing", v.terminated,
                                  v.terminated ? "ad_{L_f}^" + std::to_string(v.order + 1) + "(g) = 0 with n = " + std::to_string(in.n)
                                               : "ad_{L_f}^" + std::to_string(in.n + 1) + "(g) != 0"});
      return;
    }
    DiffOperator l = op(need(t, "L"));
    DiffOperator g = op(need(t, "g"), l.block());
    unsigned max = get_uint(t, "max", 8);
    std::string expect = get(t, "expect", "terminating");
    if (expect != "terminating" && expect != "nonterminating")
      throw ValidationError("expect must be 'terminating' or 'nonterminating'");
    rec.inputs = {{"L", l.to_string()}, {"g", g.to_string()}, {"max", std::to_string(max)}, {"expect", expect}};
    auto v = ad_vanishing_order(l, g, max);
    std::string detail = v.terminated ? "ad_L^" + std::to_string(v.order + 1) + "(g) = 0"
                                      : "ad_L^j(g) != 0 for j <= " + std::to_string(max);
    rec.certificates.push_back({"vanishing", v.terminated == (expect == "terminating"), detail});
    if (!v.terminated) rec.notes.push_back("no vanishing within " + std::to_string(max) + " iterations: not bispectral data");
  }

  static void add_certificates(TaskRecord& rec, const std::string& side, const TransformResult& r) {
    for (const auto& c : r.certificates) rec.certificates.push_back({side + " " + c.name, c.passed, c.detail});
  }

  static CertificateRecord eigen_certificate(const std::string& side, const QuantumSystem& s, const WaveFunction& psi) {
    for (const auto& g : s.generators)
      if (!check_eigen(g.image, psi, RationalFunction(g.spectral)))
        return {side + " eigenfunction", false, g.name + " does not have the expected eigenvalue " + g.spectral.to_string()};
    return {side + " eigenfunction", true, "every generator h satisfies L~_h psi~ = h psi~"};
  }

  void printed_notes(const TaskDecl& t, TaskRecord& rec, const DressingData& d) {
    const auto& in = d.input;
    const auto& reg = in.lf.registry();
    if (const auto* pk = t.find("printed_K")) {
      DiffOperator k = op(*pk);
      rec.inputs.emplace_back("printed_K", k.to_string());
      if (k == d.K) {
        rec.notes.push_back("printed K agrees with the derived K");
      } else {
        bool holds = in.g.pow(in.m + 1) * in.lf == k * in.g;
        rec.notes.push_back("printed K differs from the derived K: derived - printed = " + summarize(d.K - k) +
                            "; the printed K " + (holds ? "satisfies" : "fails") + " g^" + std::to_string(in.m + 1) +
                            " o L_f = K o g");
      }
    }
    if (const auto* pq = t.find("printed_Q")) {
      DiffOperator q = op(*pq);
      rec.inputs.emplace_back("printed_Q", q.to_string());
      if (q == d.Q) {
        rec.notes.push_back("printed Q agrees with the derived Q");
      } else {
        bool holds = in.lf.pow(in.n + 1) * in.g == q * in.lf;
        rec.notes.push_back("printed Q differs from the derived Q: derived - printed = " + summarize(d.Q - q) +
                            "; the printed Q " + (holds ? "satisfies" : "fails") + " L_f^" + std::to_string(in.n + 1) +
                            " o g = Q o L_f");
      }
    }
    if (t.find("printed_power")) {
      unsigned p = get_uint(t, "printed_power", 0);
      rec.inputs.emplace_back("printed_power", std::to_string(p));
      if (p == in.n + 1) {
        rec.notes.push_back("printed generator power f^" + std::to_string(p) + " agrees with n + 1");
      } else {
        auto r = deduce_transformed(d.K, in.lf.pow(p), pivot(t));
        rec.notes.push_back("printed generators use f^" + std::to_string(p) + " but n + 1 = " + std::to_string(in.n + 1) +
                            " (n = ord L'_g); K o L_f^" + std::to_string(p) +
                            (r.ok ? " is right divisible by K, so f^" + std::to_string(p) + " also lies in A_K"
                                  : " is not right divisible by K (remainder of order " +
                                        std::to_string(r.remainder.order()) + "), so f^" + std::to_string(p) +
                                        " is not in A_K"));
      }
    }
    (void)reg;
  }

  void transform(const TaskDecl& t, TaskRecord& rec) {
    const auto& p = pair(t);
    Polynomial f = polynomial(need(t, "f"), p.letter_registry, false);
    Polynomial g = polynomial(need(t, "g"), p.letter_registry, false);
    const std::string side = get(t, "side", "both");
    if (side != "both" && side != "primal" && side != "dual" && side != "lowest")
      throw ValidationError("side must be both, primal, dual or lowest");
    rec.inputs = {{"pair", p.name}, {"f", f.to_string()}, {"g", g.to_string()}, {"side", side}};

    DressingData d = build_dressing(p, f, g);
    const auto& in = d.input;
    rec.derived.emplace_back("m = ord L_f", std::to_string(in.m));
    rec.derived.emplace_back("n = ord L'_g", std::to_string(in.n));
    rec.derived.emplace_back("vanishing order", std::to_string(d.vanishing.order));
    rec.derived.emplace_back("L_f", in.lf.to_string());
    rec.derived.emplace_back("L'_g", in.lg_dual.to_string());
    rec.derived.emplace_back("K", summarize(d.K));
    rec.derived.emplace_back("K word", d.K_word.to_string());
    rec.derived.emplace_back("R", summarize(d.R));
    rec.derived.emplace_back("Q", summarize(d.Q));
    const std::string m1 = std::to_string(in.m + 1), n1 = std::to_string(in.n + 1);
    rec.certificates.push_back({"K identity", true, "g^" + m1 + " o L_f = K o g"});
    rec.certificates.push_back({"R identity", true, "L_f o g^" + m1 + " = g o R"});
    rec.certificates.push_back({"Q identity", true, "L_f^" + n1 + " o g = Q o L_f"});
    printed_notes(t, rec, d);

    TransformOptions popt{get(t, "prefix", "T"), opt_.seed};
    TransformOptions dopt{get(t, "dual_prefix", "U"), opt_.seed};
    std::optional<TransformResult> primal, dual;
    std::optional<WaveFunction> kpsi, bkpsi;
    if (side == "both" || side == "primal") {
      primal = darboux_transform(p, d, popt);
      add_certificates(rec, "primal", *primal);
      kpsi = apply_operator(d.K, p.psi);
      rec.certificates.push_back(eigen_certificate("primal", primal->system, *kpsi));
      for (const auto& gen : primal->system.generators)
        rec.derived.emplace_back(gen.name, gen.spectral.to_string() + " -> " + summarize(gen.image));
    }
    if (side == "both" || side == "dual") {
      dual = dual_darboux_transform(p, d, dopt);
      add_certificates(rec, "dual", *dual);
      rec.derived.emplace_back("b(K)", summarize(dual->dressing_operator));
      bkpsi = apply_operator(dual->dressing_operator, p.psi);
      rec.certificates.push_back(eigen_certificate("dual", dual->system, *bkpsi));
      for (const auto& gen : dual->system.generators)
        rec.derived.emplace_back(gen.name, gen.spectral.to_string() + " -> " + summarize(gen.image));
    }
    if (side == "lowest") {
      SpectralGenerator t0 = lowest_transformed_generator(p, d, popt.prefix + "0");
      auto r = verify_intertwining(d.K, in.lf.pow(in.n + 1), t0.image);
      rec.certificates.push_back({"lowest intertwining", r.ok,
                                  r.ok ? "K o L_f^" + n1 + " = " + t0.name + " o K" : "defect " + summarize(r.defect)});
      kpsi = apply_operator(d.K, p.psi);
      bool eig = check_eigen(t0.image, *kpsi, RationalFunction(t0.spectral));
      rec.certificates.push_back({"lowest eigenfunction", eig, t0.name + " psi~ = " + t0.spectral.to_string() + " psi~"});
      rec.derived.emplace_back(t0.name, t0.spectral.to_string() + " -> " + summarize(t0.image));
      DiffOperator bk = dual_dressing_operator(p, d);
      rec.derived.emplace_back("b(K)", summarize(bk));
      bkpsi = apply_operator(bk, p.psi);
      rec.notes.push_back("only f^" + n1 + " was transformed; commutativity and dimension certificates need side = both");
    }
    if (kpsi && bkpsi) {
      bool same = *kpsi == *bkpsi;
      rec.certificates.push_back({"shared eigenfunction", same, same ? "K psi = b(K) psi" : "K psi != b(K) psi"});
      if (p.psi.basis()->symmetric()) {
        bool ex = exchange_xz(*kpsi) == *bkpsi;
        rec.notes.push_back(std::string("exchange_xz(K psi) = b(K) psi ") + (ex ? "holds" : "does not hold") +
                            (ex ? "" : "; K psi is not symmetric under x <-> z, while K psi = b(K) psi holds by the definition of b"));
      }
    }
    for (const auto& [key, value] : t.args) {
      if (key.rfind("expect.", 0) != 0) continue;
      std::string name = key.substr(7);
      const SpectralGenerator* gen = nullptr;
      if (primal) gen = primal->system.find(name);
      if (!gen && dual) gen = dual->system.find(name);
      if (!gen) throw ValidationError("expect." + name + ": no transformed generator of that name");
      DiffOperator want = op(value, gen->image.block());
      bool ok = want == gen->image;
      rec.certificates.push_back({"golden " + name, ok, ok ? name + " = " + want.to_string() : name + " - expected = " + summarize(gen->image - want)});
    }
    if (const auto* r = t.find("repair")) {
      if (!primal || !dual) throw ValidationError("repair needs side = both");
      pairs_.erase(r->text);
      pairs_.emplace(r->text, repair(r->text, p, *primal, *dual));
      rec.notes.push_back("transformed pair registered as " + r->text + " with psi~ = K psi");
    }
  }

  void duality(const TaskDecl& t, TaskRecord& rec, std::size_t index) {
    const auto& p = pair(t);
    unsigned count = get_uint(t, "count", 100), length = get_uint(t, "length", 4);
    rec.inputs = {{"pair", p.name}, {"count", std::to_string(count)}, {"length", std::to_string(length)}};
    std::vector<std::string> letters;
    for (const auto& e : p.table.entries()) letters.push_back(e.name);
    std::mt19937_64 rng(opt_.seed * 1000003u + index);
    std::uniform_int_distribution<int> coeff(-5, 5), len(0, static_cast<int>(length)), nterms(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    for (unsigned i = 0; i < count; ++i) {
      WordPoly w;
      int k = nterms(rng);
      for (int j = 0; j < k; ++j) {
        Word word;
        int l = len(rng);
        for (int s = 0; s < l; ++s) word.push_back(letters[pick(rng)]);
        int c = coeff(rng);
        w += WordPoly::word(word, RationalFunction(c == 0 ? 1 : c));
      }
      if (!check_duality(w, p.table, p.psi)) {
        rec.certificates.push_back({"duality", false, "w psi != b(w) psi for w = " + w.to_string()});
        return;
      }
    }
    rec.certificates.push_back({"duality", true, std::to_string(count) + " random words of length <= " + std::to_string(length) + " satisfy w psi = b(w) psi"});
  }

  void report(const TaskDecl& t, TaskRecord& rec) {
    if (t.find("pair")) {
      const auto& p = pair(t);
      rec.inputs = {{"pair", p.name}};
      rec.derived.emplace_back("table", trim_copy(p.table.to_string()));
      rec.derived.emplace_back("psi", p.psi.to_string());
      for (const auto* s : {&p.primal, &p.dual}) {
        std::string loc;
        for (const auto& l : s->localizers) loc += (loc.empty() ? "" : ", ") + l.to_string();
        if (!loc.empty()) rec.derived.emplace_back(s->name + " localizers", loc);
      }
      return;
    }
    if (const auto* o = t.find("op")) {
      DiffOperator d = op(*o);
      rec.inputs = {{"op", o->text}};
      rec.derived.emplace_back("canonical", d.to_string());
      rec.derived.emplace_back("order", std::to_string(d.order()));
      return;
    }
    const auto& fn = need(t, "function");
    rec.inputs = {{"function", fn.text}};
    rec.derived.emplace_back("canonical", function(fn, reg_).to_string());
  }

  const Session& session_;
  RunOptions opt_;
  RegistryPtr reg_;
  std::map<std::string, DiffOperator> defs_;
  std::map<std::string, KernelPtr> kernels_;
  std::map<std::string, QuantumSystem> systems_;
  std::map<std::string, BispectralPair> pairs_;
};

}  // namespace detail

/// Resolves and runs a session.  Resolution failures throw ParseError or
/// ValidationError; failures inside a task are recorded in its record.
inline Report run_session(const Session& s, const RunOptions& opt = {}) {
  return detail::SessionRunner(s, opt).run();
}

}  // namespace bdt
