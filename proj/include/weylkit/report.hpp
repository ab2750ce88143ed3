#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weylkit {

struct CheckItem {
  std::string label;
  double residual;
  double tolerance;
  bool pass;
};

/// Pass/fail record of a named scenario: a list of residual checks whose
/// conjunction is the verdict, plus free-form notes.
class ScenarioReport {
 public:
  explicit ScenarioReport(std::string name) : name_(std::move(name)) {}

  void add(const std::string& label, double residual, double tolerance);
  void add_note(const std::string& text);

  bool pass() const;
  const std::string& name() const { return name_; }
  const std::vector<CheckItem>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }

  double residual(const std::string& label) const;  // throws if unknown

  /// Deterministic fixed-order key/value rendering; residuals printed in
  /// scientific notation with 17 significant digits.
  void write(std::ostream& os) const;
  std::string to_string() const;

 private:
  std::string name_;
  std::vector<CheckItem> checks_;
  std::vector<std::string> notes_;
};

}  // namespace weylkit
