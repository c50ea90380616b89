#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqamp/linalg.hpp"

namespace seqamp {

// One named check with its outcome. `residual` is the check's worst numeric
// deviation (zero for purely structural checks); `detail` carries witnesses
// or context. `elapsed_ms` appears in human-readable output only, never in
// machine-readable records, which must be byte-identical across reruns.
struct CheckResult {
  std::string name;
  bool passed = false;
  Real residual = 0;
  std::string detail;
  double elapsed_ms = 0;
};

// Collected results of one command run.
class RunReport {
 public:
  explicit RunReport(std::string title) : title_(std::move(title)) {}

  void add(CheckResult result) { checks_.push_back(std::move(result)); }
  void add(std::string name, bool passed, Real residual = 0,
           std::string detail = "") {
    checks_.push_back(
        {std::move(name), passed, residual, std::move(detail), 0});
  }

  const std::string& title() const { return title_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  bool all_passed() const;
  int exit_code() const { return all_passed() ? 0 : 1; }

  // Human-readable rendering, including elapsed times where recorded.
  void render_text(std::ostream& os) const;
  // Machine-readable rendering: one JSON record per line, stable field
  // order, no timing fields; byte-identical for identical inputs and seeds.
  void render_jsonl(std::ostream& os) const;
  std::string jsonl() const;

 private:
  std::string title_;
  std::vector<CheckResult> checks_;
};

// Fixed-format float rendering used in human-readable tables.
std::string format_real(Real x);
std::string format_complex(Complex z);

}  // namespace seqamp
