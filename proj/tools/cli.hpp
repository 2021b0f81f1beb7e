#pragma once

namespace thermonet::cli {

/// Runs one CLI invocation and returns its exit status: 0 success,
/// 2 usage or contract error, 3 data error, 4 internal invariant failure.
int run(int argc, char** argv);

}  // namespace thermonet::cli
