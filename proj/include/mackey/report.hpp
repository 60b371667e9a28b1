#pragma once

#include "mackey/serialize.hpp"

#include <iomanip>
#include <ostream>

namespace mackey {

enum class Status { pass, fail, skipped };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

inline Status status_from_name(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw Error("unknown check status: " + s);
}

/// One named check. Ids are stable: "<area>.<check>", documented in the README.
struct ReportCheck {
  std::string id;
  Status status = Status::fail;
  std::string detail;  // witness on failure, short summary otherwise
  Json payload = Json::object();

  friend bool operator==(const ReportCheck& a, const ReportCheck& b) {
    return a.id == b.id && a.status == b.status && a.detail == b.detail && a.payload == b.payload;
  }
};

struct Report {
  Json command = Json::object();  // subcommand and options; the JSON output path is left out
  Json group = Json::object();
  std::vector<ReportCheck> checks;
  Json data = Json::object();
  double seconds = 0;  // wall clock, shown in text output only so JSON stays byte-stable

  void add(std::string id, bool ok, std::string detail = "", Json payload = Json::object()) {
    checks.push_back({std::move(id), ok ? Status::pass : Status::fail, std::move(detail), std::move(payload)});
  }
  void skip(std::string id, std::string why) { checks.push_back({std::move(id), Status::skipped, std::move(why), Json::object()}); }

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.status == Status::fail; });
  }
  const ReportCheck* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }

  Json to_json() const {
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back({{"id", c.id}, {"status", status_name(c.status)}, {"detail", c.detail}, {"payload", c.payload}});
    return Json{{"command", command}, {"group", group}, {"checks", std::move(cs)}, {"data", data}, {"passed", passed()}};
  }

  static Report from_json(const Json& j) {
    Report r;
    r.command = j.at("command");
    r.group = j.at("group");
    r.data = j.at("data");
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("id").get<std::string>(), status_from_name(c.at("status").get<std::string>()), c.at("detail").get<std::string>(),
                          c.at("payload")});
    if (j.contains("passed") && j.at("passed").get<bool>() != r.passed()) throw Error("report: stored verdict disagrees with its checks");
    return r;
  }

  void print(std::ostream& os) const {
    os << "mackey " << command.value("subcommand", std::string("?"));
    if (group.contains("label")) os << " --group " << group["label"].get<std::string>() << " (order " << group["order"] << ")";
    os << "\n";
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.id.size());
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& c : checks) {
      ++counts[static_cast<int>(c.status)];
      std::string tag = c.status == Status::pass ? "PASS" : c.status == Status::fail ? "FAIL" : "SKIP";
      os << tag << "  ";
      if (c.detail.empty())
        os << c.id;
      else
        os << std::left << std::setw(static_cast<int>(width)) << c.id << "  " << c.detail;
      os << "\n";
    }
    os << checks.size() << " checks: " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " skipped ("
       << std::fixed << std::setprecision(2) << seconds << " s)\n";
  }
};

}  // namespace mackey
