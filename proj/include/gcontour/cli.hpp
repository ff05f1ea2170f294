#pragma once

namespace gc {

// The command-line entry point, callable from tests. Returns the process
// exit code: 0 success, 1 usage error, 2 runtime or input error.
int cli_main(int argc, const char* const* argv);

}  // namespace gc
