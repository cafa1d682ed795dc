#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coarsepw {

/// Outcome of a checker: ok iff no violations were recorded.
struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string message) { violations.push_back(std::move(message)); }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) violations.push_back(prefix + v);
  }
};

}  // namespace coarsepw
