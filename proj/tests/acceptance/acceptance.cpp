// One test per acceptance criterion; each prints a single PASS/FAIL line.
// Usage: flatknot_acceptance [--data DIR] [gtest flags]

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <iostream>

#include "flatknot/verify.hpp"

namespace {

std::filesystem::path g_data_dir;

class Criterion : public ::testing::TestWithParam<int> {};

TEST_P(Criterion, Holds) {
  flatknot::VerifyOptions opt;
  opt.ids = {GetParam()};
  opt.data_dir = g_data_dir;
  const auto results = flatknot::run_verification(opt);
  ASSERT_EQ(results.size(), 1u);
  std::cout << flatknot::format_result(results.front()) << std::endl;
  EXPECT_TRUE(results.front().passed) << results.front().detail;
}

INSTANTIATE_TEST_SUITE_P(Acceptance, Criterion, ::testing::Range(1, 14),
                         [](const ::testing::TestParamInfo<int>& p) { return "C" + std::to_string(p.param); });

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--data") == 0) g_data_dir = argv[i + 1];
  }
  return RUN_ALL_TESTS();
}
