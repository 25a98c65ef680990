#pragma once

// Verification report: a list of named findings, an optional proof trace and
// a machine-readable payload. Text and JSON renderings share one status.

#include <string>
#include <vector>

#include "json.hpp"

namespace pearl {

enum class Outcome { Pass, Fail, Inconclusive, Info };

std::string to_string(Outcome o);

struct Finding {
  std::string check;
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  const std::string& title() const noexcept { return title_; }

  void add(Finding f) { findings_.push_back(std::move(f)); }
  /// Records a pass or a fail.
  void check(std::string name, bool ok, std::string detail = "") {
    add({std::move(name), ok ? Outcome::Pass : Outcome::Fail, std::move(detail)});
  }
  void note(std::string name, std::string detail) {
    add({std::move(name), Outcome::Info, std::move(detail)});
  }
  void inconclusive(std::string name, std::string detail) {
    add({std::move(name), Outcome::Inconclusive, std::move(detail)});
  }
  void trace(std::string line) { trace_.push_back(std::move(line)); }
  /// Appends the findings and trace of `other`, prefixing check names.
  void merge(const Report& other, const std::string& prefix = "");

  /// Fail if any finding failed, else Inconclusive if any was, else Pass.
  Outcome status() const;
  bool ok() const { return status() == Outcome::Pass; }
  const Finding* first_failure() const;
  const Finding* find(const std::string& check) const;
  bool passed(const std::string& check) const;

  const std::vector<Finding>& findings() const noexcept { return findings_; }
  const std::vector<std::string>& trace_lines() const noexcept { return trace_; }

  nlohmann::json& data() noexcept { return data_; }
  const nlohmann::json& data() const noexcept { return data_; }

  std::string to_text() const;
  nlohmann::json to_json() const;

 private:
  std::string title_;
  std::vector<Finding> findings_;
  std::vector<std::string> trace_;
  nlohmann::json data_ = nlohmann::json::object();
};

}  // namespace pearl
