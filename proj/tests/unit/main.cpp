#include <gtest/gtest.h>

#include "probegen/common/log.hpp"

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    probegen::set_log_level("off");
    return RUN_ALL_TESTS();
}
