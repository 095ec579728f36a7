#pragma once

namespace floodsim {

// Entry point behind the floodsim binary. Subcommands: run, sod,
// lake-at-rest, validate. Exit codes: 0 success, 1 usage, 2 configuration,
// 3 numerical failure, 4 I/O failure.
int cli_main(int argc, const char* const* argv);

} // namespace floodsim
