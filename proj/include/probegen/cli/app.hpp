#pragma once

namespace probegen::cli {

// Process exit status: 0 ok, 1 stage error (including a paused stage),
// 2 configuration or usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitStage = 1;
inline constexpr int kExitConfig = 2;

int run_app(int argc, char** argv);

}  // namespace probegen::cli
