#include "seqamp/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace seqamp {

bool RunReport::all_passed() const {
  for (const CheckResult& c : checks_)
    if (!c.passed) return false;
  return true;
}

void RunReport::render_text(std::ostream& os) const {
  os << "== " << title_ << " ==\n";
  for (const CheckResult& c : checks_) {
    os << (c.passed ? "  pass  " : "  FAIL  ") << c.name;
    if (c.residual > 0) os << "  (residual " << format_real(c.residual) << ")";
    if (c.elapsed_ms > 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", c.elapsed_ms);
      os << "  [" << buf << " ms]";
    }
    os << "\n";
    if (!c.detail.empty()) os << "          " << c.detail << "\n";
  }
  os << (all_passed() ? "verdict: pass" : "verdict: FAIL") << "\n";
}

void RunReport::render_jsonl(std::ostream& os) const {
  for (const CheckResult& c : checks_) {
    nlohmann::ordered_json record{{"check", c.name},
                                  {"status", c.passed ? "pass" : "fail"},
                                  {"residual", c.residual},
                                  {"detail", c.detail}};
    os << record.dump() << "\n";
  }
  nlohmann::ordered_json verdict{
      {"verdict", all_passed() ? "pass" : "fail"},
      {"checks", checks_.size()}};
  os << verdict.dump() << "\n";
}

std::string RunReport::jsonl() const {
  std::ostringstream os;
  render_jsonl(os);
  return os.str();
}

std::string format_real(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  out += (z.imag() < 0 ? " - " : " + ");
  out += format_real(std::abs(z.imag()));
  out += "i";
  return out;
}

}  // namespace seqamp
