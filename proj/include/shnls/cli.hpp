#pragma once

namespace shnls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `shnls` executable: run, sweep, townes, validate.
int main(int argc, char** argv);

}  // namespace shnls::cli
