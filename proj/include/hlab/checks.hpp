#pragma once

#include <string>
#include <vector>

namespace hlab {

/// One inequality lhs <= rhs (+ slack) evaluated on measured data.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::string ref;
  bool asserted = true;

  double margin() const { return rhs - lhs; }
  bool passed() const { return !asserted || lhs <= rhs + slack; }
};

class CheckList {
 public:
  Check& add(std::string name, double lhs, double rhs, std::string ref, double slack = 1e-8, bool asserted = true) {
    items_.push_back(Check{std::move(name), lhs, rhs, slack, std::move(ref), asserted});
    return items_.back();
  }
  /// Recorded for reporting only.
  Check& note(std::string name, double lhs, double rhs, std::string ref) {
    return add(std::move(name), lhs, rhs, std::move(ref), 0.0, false);
  }
  void append(const CheckList& other) { items_.insert(items_.end(), other.items_.begin(), other.items_.end()); }

  const std::vector<Check>& items() const { return items_; }
  const Check* find(const std::string& name) const {
    for (const Check& c : items_)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool all_passed() const {
    for (const Check& c : items_)
      if (!c.passed()) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const Check& c : items_)
      if (!c.passed()) out.push_back(c.name);
    return out;
  }

 private:
  std::vector<Check> items_;
};

}  // namespace hlab
