#pragma once

namespace gkpwalk {

// Exit codes: 0 success, 2 validation failure, 3 IO failure, 4 schema failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSchema = 4;

// Full command-line surface (subcommands walk, target, fidelity, wigner,
// density, envelope, equiv, trace-dump). Exposed as a function so the test
// suite can drive it in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace gkpwalk
