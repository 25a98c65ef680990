#include "pearl/report.hpp"

#include <algorithm>
#include <sstream>

namespace pearl {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      return "inconclusive";
    case Outcome::Info:
      return "info";
  }
  return "unknown";
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& f : other.findings_) add({prefix + f.check, f.outcome, f.detail});
  for (const auto& t : other.trace_) trace_.push_back(t);
}

Outcome Report::status() const {
  bool inconclusive = false;
  for (const auto& f : findings_) {
    if (f.outcome == Outcome::Fail) return Outcome::Fail;
    if (f.outcome == Outcome::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Outcome::Inconclusive : Outcome::Pass;
}

const Finding* Report::first_failure() const {
  auto it = std::find_if(findings_.begin(), findings_.end(),
                         [](const Finding& f) { return f.outcome == Outcome::Fail; });
  return it == findings_.end() ? nullptr : &*it;
}

const Finding* Report::find(const std::string& check) const {
  auto it = std::find_if(findings_.begin(), findings_.end(),
                         [&](const Finding& f) { return f.check == check; });
  return it == findings_.end() ? nullptr : &*it;
}

bool Report::passed(const std::string& check) const {
  const auto* f = find(check);
  return f && f->outcome == Outcome::Pass;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << (title_.empty() ? std::string("report") : title_) << ": " << to_string(status()) << "\n";
  for (const auto& f : findings_) {
    out << "  [" << to_string(f.outcome) << "] " << f.check;
    if (!f.detail.empty()) out << ": " << f.detail;
    out << "\n";
  }
  if (!trace_.empty()) {
    out << "trace:\n";
    for (std::size_t i = 0; i < trace_.size(); ++i) out << "  " << (i + 1) << ". " << trace_[i] << "\n";
  }
  if (const auto* f = first_failure()) out << "first failure: " << f->check << "\n";
  return out.str();
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["title"] = title_;
  j["status"] = to_string(status());
  j["findings"] = nlohmann::json::array();
  for (const auto& f : findings_) {
    j["findings"].push_back({{"check", f.check}, {"outcome", to_string(f.outcome)}, {"detail", f.detail}});
  }
  j["trace"] = trace_;
  j["data"] = data_;
  return j;
}

}  // namespace pearl
