#pragma once

#include <string>
#include <vector>

#include "qh/hallfq.hpp"

namespace qh {

struct CheckResult {
  int id = 0;
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  Exec exec = Exec::Parallel;
  unsigned seed = 20240611;
  std::string golden_dir;  // defaults to <source>/golden
};

std::vector<int> check_ids();  // 1..11
std::string check_name(int id);
CheckResult run_check(int id, const VerifyOptions& opt = {});
// sorted by id
std::vector<CheckResult> run_checks(const std::vector<int>& ids, const VerifyOptions& opt = {});
std::string checks_json(const std::vector<CheckResult>& rs);

// Worked-example coefficients recomputed from scratch, as JSON (the frozen golden format).
std::string worked_examples_json();

}  // namespace qh
