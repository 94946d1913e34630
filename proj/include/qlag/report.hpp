#pragma once

#include <cctype>
#include <string>
#include <utility>

#include <json.hpp>

namespace qlag {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { Pass, Fail, Provisional };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Provisional: return "provisional";
  }
  return "";
}

// Ordered list of check records. Keys inside records are sorted by the json
// type, so the serialized form is canonical.
class Report {
 public:
  using json = nlohmann::json;

  Report(std::string suite, json config) : suite_(std::move(suite)), config_(std::move(config)) {}

  json& add(const std::string& id, Status st, json detail = json::object()) {
    detail["id"] = id;
    detail["status"] = status_name(st);
    checks_.push_back(std::move(detail));
    return checks_.back();
  }
  json& check(const std::string& id, bool ok, json detail = json::object()) {
    return add(id, ok ? Status::Pass : Status::Fail, std::move(detail));
  }

  int count(Status st) const {
    int n = 0;
    for (const auto& c : checks_)
      if (c["status"] == status_name(st)) ++n;
    return n;
  }
  bool ok() const { return count(Status::Fail) == 0; }
  const std::string& suite() const { return suite_; }
  const json& checks() const { return checks_; }

  // Append all checks of another report under a prefix.
  void merge(const Report& o, const std::string& prefix) {
    for (auto c : o.checks_) {
      c["id"] = prefix + c["id"].get<std::string>();
      checks_.push_back(std::move(c));
    }
  }

  json to_json() const {
    json j;
    j["schema"] = 1;
    j["tool"] = "qlag";
    j["version"] = kToolVersion;
    j["suite"] = suite_;
    j["config"] = config_;
    j["checks"] = checks_;
    j["summary"] = {{"pass", count(Status::Pass)},
                    {"fail", count(Status::Fail)},
                    {"provisional", count(Status::Provisional)}};
    return j;
  }

  std::string text() const {
    std::string s = "qlag " + std::string(kToolVersion) + " " + suite_ + "\n";
    for (const auto& c : checks_) {
      std::string st = c["status"].get<std::string>();
      for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      s += st + "  " + c["id"].get<std::string>();
      json rest = c;
      rest.erase("id");
      rest.erase("status");
      if (!rest.empty()) s += "  " + rest.dump();
      s += "\n";
    }
    s += "summary: " + std::to_string(count(Status::Pass)) + " pass, " +
         std::to_string(count(Status::Fail)) + " fail, " + std::to_string(count(Status::Provisional)) +
         " provisional\n";
    return s;
  }

 private:
  std::string suite_;
  json config_;
  json checks_ = json::array();
};

}  // namespace qlag
