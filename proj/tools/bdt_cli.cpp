// bdt: run sessions, built-in examples and one-off intertwining checks.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bdt.hpp"

namespace {

struct Output {
  std::string format = "text";
  bool timing = true;
};

int emit(const bdt::Report& r, const Output& out) {
  bdt::ReportFormat fmt{out.timing};
  if (out.format == "json") std::cout << bdt::to_json(r, fmt).dump(2) << "\n";
  else std::cout << bdt::to_text(r, fmt);
  for (const auto& t : r.tasks)
    if (!t.error.empty()) std::cerr << "bdt: task " << t.task << ": " << t.error << "\n";
  return static_cast<int>(r.exit_code());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bdt::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Identifiers in an expression that are not D, used to infer x-variables.
void collect_identifiers(const std::string& s, std::set<std::string>& out) {
  for (std::size_t i = 0; i < s.size();) {
    if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string id = s.substr(i, j - i);
      if (!(id == "D" && j < s.size() && s[j] == '[')) out.insert(id);
      i = j;
    } else {
      ++i;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bispectral Darboux transformation workbench"};
  app.require_subcommand(1);
  Output out;
  bdt::RunOptions opt;
  std::optional<int> max_order;
  std::optional<std::size_t> max_terms;

  auto add_run_flags = [&](CLI::App* c) {
    c->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--seed", opt.seed, "Random seed");
    c->add_option("--max-order", max_order, "Maximum operator order");
    c->add_option("--max-terms", max_terms, "Maximum number of terms");
    c->add_flag("!--no-timing", out.timing, "Report 0 ms for every task");
  };

  std::string file;
  auto* run = app.add_subcommand("run", "Run a session file");
  run->add_option("file", file, "Session file")->required();
  add_run_flags(run);

  auto* examples = app.add_subcommand("examples", "Built-in example sessions");
  examples->require_subcommand(1);
  examples->add_subcommand("list", "List the built-in examples");
  std::string name;
  auto* ex_run = examples->add_subcommand("run", "Run a built-in example");
  ex_run->add_option("name", name, "Example name")->required();
  add_run_flags(ex_run);
  auto* ex_show = examples->add_subcommand("show", "Print a built-in example's session text");
  ex_show->add_option("name", name, "Example name")->required();

  std::string k, l, lt, params;
  auto* verify = app.add_subcommand("verify", "Check K o L = Lt o K");
  verify->add_option("--K", k)->required();
  verify->add_option("--L", l)->required();
  verify->add_option("--Lt", lt)->required();
  verify->add_option("--params", params, "Comma-separated parameter names");
  add_run_flags(verify);

  CLI11_PARSE(app, argc, argv);
  opt.max_order = max_order;
  opt.max_terms = max_terms;

  try {
    if (run->parsed()) return emit(bdt::run_session(bdt::parse_session(read_file(file)), opt), out);
    if (examples->got_subcommand("list")) {
      for (const auto& n : bdt::builtin_names()) std::cout << n << "\n";
      return 0;
    }
    if (ex_show->parsed()) {
      std::cout << bdt::builtin_source(name);
      return 0;
    }
    if (ex_run->parsed()) return emit(bdt::run_session(bdt::builtin_example(name), opt), out);

    bdt::Session s;
    s.name = "verify";
    std::set<std::string> ids;
    for (const auto* e : {&k, &l, &lt}) collect_identifiers(*e, ids);
    s.params = bdt::detail::split_list(params);
    for (const auto& p : s.params) ids.erase(p);
    s.x_vars.assign(ids.begin(), ids.end());
    if (s.x_vars.empty()) s.x_vars.push_back("x");
    bdt::TaskDecl t;
    t.kind = "verify";
    t.line = 1;
    t.args = {{"K", {k, 1, 1}}, {"L", {l, 1, 1}}, {"Lt", {lt, 1, 1}}};
    s.tasks.push_back(std::move(t));
    return emit(bdt::run_session(s, opt), out);
  } catch (const bdt::ResourceLimitExceeded& e) {
    std::cerr << "bdt: " << e.what() << "\n";
    return 3;
  } catch (const bdt::Error& e) {
    std::cerr << "bdt: " << e.what() << "\n";
    return 2;
  }
}
