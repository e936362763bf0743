#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cdg {

enum class Status { pass, fail, skip, info };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    case Status::info: return "info";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

/// Ordered list of named checks.
struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
  }
  void skip(std::string name, std::string detail = {}) {
    checks.push_back({std::move(name), Status::skip, std::move(detail)});
  }
  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.status, c.detail});
  }
  /// Appends checks whose failures are informational only.
  void append_info(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) {
      const bool agreed = c.status == Status::pass;
      checks.push_back({prefix + c.name, agreed ? Status::pass : Status::info,
                        c.detail + (agreed ? "" : " (mismatch)")});
    }
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == Status::fail;
    return n;
  }
  bool all_ok() const { return failures() == 0; }
};

}  // namespace cdg
