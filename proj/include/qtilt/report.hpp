#ifndef QTILT_REPORT_HPP
#define QTILT_REPORT_HPP

#include <json.hpp>
#include <string>

namespace qtilt {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// FNV-1a over the canonical serialization; reports are deterministic, so the
// digest doubles as a reproducibility check.
inline std::string digest_of(const Json& j) {
  std::string s = j.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline Json base_report(const std::string& command) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = command;
  j["checks"] = Json::array();
  return j;
}

inline void add_check(Json& report, const std::string& name, bool pass, const Json& detail = Json::object()) {
  Json c;
  c["name"] = name;
  c["pass"] = pass;
  if (!detail.empty()) c["detail"] = detail;
  report["checks"].push_back(c);
}

inline bool all_checks_pass(const Json& report) {
  for (const auto& c : report["checks"])
    if (!c["pass"].get<bool>()) return false;
  return true;
}

inline void finalize_report(Json& report) {
  report["all_pass"] = all_checks_pass(report);
  report["digest"] = digest_of(report);
}

}  // namespace qtilt

#endif
