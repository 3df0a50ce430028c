#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace flatknot {

struct CriterionResult {
  int id = 0;
  std::string group;  // pendulum, cycles, energy, flow
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Empty: every group.
  std::string only;
  // Empty: every criterion.
  std::vector<int> ids;
  // Holds trefoil.json; the built-in fixture is used when empty.
  std::filesystem::path data_dir;
  std::function<void(const CriterionResult&)> on_result;
};

const std::vector<std::string>& verify_groups();

// Throws Error(kDomain) for an unknown group in options.only.
std::vector<CriterionResult> run_verification(const VerifyOptions& options = {});

// One line: "[PASS] 3 cycles    trefoil census ... (0.01 s)".
std::string format_result(const CriterionResult& r);

}  // namespace flatknot
