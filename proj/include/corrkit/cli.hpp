#pragma once

namespace corrkit {

/// Entry point of the corrkit command-line tool. Exit codes: 0 success,
/// 1 a verify check failed, 2 usage error, 3 malformed input, 4 parameter
/// out of range, 5 oracle budget exceeded.
int run_cli(int argc, char** argv);

}  // namespace corrkit
