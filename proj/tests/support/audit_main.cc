#include <gtest/gtest.h>

#include "support/audit.h"

namespace {

class AuditEnvironment : public ::testing::Environment {
 public:
  void TearDown() override {
    const auto& log = contain_test::Log();
    std::cout << "[ audit    ] " << log.verdicts << " verdicts, " << log.certificates
              << " certificates, " << log.witnesses << " witnesses, "
              << log.violations.size() << " violations\n";
    contain_test::PrintViolations(std::cout);
    EXPECT_TRUE(log.violations.empty());
  }
};

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::AddGlobalTestEnvironment(new AuditEnvironment);
  return RUN_ALL_TESTS();
}
