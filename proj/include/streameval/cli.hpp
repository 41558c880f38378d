#pragma once

namespace streameval {

// Exit codes, one class per failure family so callers can dispatch on them.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInput = 3,
    kExitJudgeConfig = 4,
    kExitJudgeUnavailable = 5,
    kExitJudgeProtocol = 6,
    kExitInternal = 10,
};

int run_cli(int argc, const char* const* argv);

}  // namespace streameval
