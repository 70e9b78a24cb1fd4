#pragma once

/**
 * @file report.hpp
 * @brief Task records and their JSON and text renderings.
 */

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bdt {

enum class ExitCode : int { ok = 0, certificate_failure = 1, invalid_input = 2, resource_limit = 3 };

struct CertificateRecord {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TaskRecord {
  std::string task;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CertificateRecord> certificates;
  std::vector<std::pair<std::string, std::string>> derived;
  std::vector<std::string> notes;
  /// Set when the task aborted; the certificates are then incomplete.
  std::string error;
  ExitCode error_code = ExitCode::ok;
  double millis = 0;

  bool passed() const {
    if (!error.empty()) return false;
    for (const auto& c : certificates)
      if (!c.passed) return false;
    return true;
  }

  ExitCode code() const {
    if (!error.empty()) return error_code;
    return passed() ? ExitCode::ok : ExitCode::certificate_failure;
  }
};

struct Report {
  std::string session;
  std::uint64_t seed = 1;
  std::vector<TaskRecord> tasks;

  /// Worst outcome: resource limit > invalid input > failed certificate.
  ExitCode exit_code() const {
    ExitCode worst = ExitCode::ok;
    for (const auto& t : tasks)
      if (static_cast<int>(t.code()) > static_cast<int>(worst)) worst = t.code();
    return worst;
  }
};

struct ReportFormat {
  bool timing = true;
};

inline nlohmann::ordered_json to_json(const Report& r, const ReportFormat& fmt = {}) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["session"] = r.session;
  doc["seed"] = r.seed;
  doc["exit_code"] = static_cast<int>(r.exit_code());
  ordered_json tasks = ordered_json::array();
  for (const auto& t : r.tasks) {
    ordered_json j;
    j["task"] = t.task;
    j["kind"] = t.kind;
    ordered_json inputs = ordered_json::object();
    for (const auto& [k, v] : t.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    ordered_json certs = ordered_json::array();
    for (const auto& c : t.certificates) certs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["certificates"] = certs;
    ordered_json derived = ordered_json::array();
    for (const auto& [k, v] : t.derived) derived.push_back({{"name", k}, {"value", v}});
    j["derived"] = derived;
    j["notes"] = t.notes;
    if (!t.error.empty()) j["error"] = t.error;
    j["passed"] = t.passed();
    j["millis"] = fmt.timing ? static_cast<std::int64_t>(t.millis + 0.5) : 0;
    tasks.push_back(std::move(j));
  }
  doc["tasks"] = tasks;
  return doc;
}

namespace detail {

inline std::string indent_lines(const std::string& v) {
  std::string out;
  for (char c : v) {
    out += c;
    if (c == '\n') out += "      ";
  }
  return out;
}

}  // namespace detail

inline std::string to_text(const Report& r, const ReportFormat& fmt = {}) {
  std::ostringstream os;
  os << "session " << r.session << " (seed " << r.seed << ")\n";
  for (const auto& t : r.tasks) {
    os << "\n[" << t.task << "] " << t.kind << ": " << (t.passed() ? "PASS" : "FAIL");
    if (fmt.timing) os << " (" << static_cast<std::int64_t>(t.millis + 0.5) << " ms)";
    os << "\n";
    for (const auto& [k, v] : t.inputs) os << "  input " << k << " = " << v << "\n";
    for (const auto& c : t.certificates)
      os << "  " << (c.passed ? "pass" : "FAIL") << " " << c.name << ": " << c.detail << "\n";
    for (const auto& [k, v] : t.derived) os << "  " << k << " = " << detail::indent_lines(v) << "\n";
    for (const auto& n : t.notes) os << "  note: " << n << "\n";
    if (!t.error.empty()) os << "  error: " << t.error << "\n";
  }
  os << "\nexit code " << static_cast<int>(r.exit_code()) << "\n";
  return os.str();
}

}  // namespace bdt
