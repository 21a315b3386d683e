#pragma once

// The acceptance suite, shared by `rpd-lab verify` and the test binary.

#include <optional>
#include <string>
#include <vector>

#include "rpd/quadrature.hpp"

namespace rpd::verify {

struct CriterionInfo {
  int id;
  std::string title;
  std::vector<std::string> tags;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double observed = 0.0;  // worst error, or the quantity being bounded
  double limit = 0.0;     // the threshold it is compared against
  std::string detail;
};

const std::vector<CriterionInfo>& criteria();

// Exceptions inside a criterion are reported as a failure with the message in detail.
CriterionResult run_criterion(int id, const quad::QuadratureSpec& spec);

// Criteria whose tags (or "C<id>") include `only`; all of them when empty.
std::vector<CriterionResult> run_suite(const std::optional<std::string>& only, const quad::QuadratureSpec& spec);

std::string format_line(const CriterionResult& r);

}  // namespace rpd::verify
