#include "weylkit/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace weylkit {

namespace {
std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}
}  // namespace

void ScenarioReport::add(const std::string& label, double residual, double tolerance) {
  checks_.push_back({label, residual, tolerance, residual <= tolerance});
}

void ScenarioReport::add_note(const std::string& text) { notes_.push_back(text); }

bool ScenarioReport::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

double ScenarioReport::residual(const std::string& label) const {
  for (const auto& c : checks_)
    if (c.label == label) return c.residual;
  throw std::invalid_argument("no check labelled '" + label + "' in report " + name_);
}

void ScenarioReport::write(std::ostream& os) const {
  os << "name: " << name_ << "\n";
  for (const auto& c : checks_) {
    os << "check: " << c.label << " residual= " << sci(c.residual)
       << " tol= " << sci(c.tolerance) << " " << (c.pass ? "pass" : "fail") << "\n";
  }
  for (const auto& n : notes_) os << "note: " << n << "\n";
  os << "verdict: " << (pass() ? "pass" : "fail") << "\n";
}

std::string ScenarioReport::to_string() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace weylkit
