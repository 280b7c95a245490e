// cli.hpp — command-line front end (solve / sweep / validate / convergence),
// factored out of main() so the commands are testable.

#pragma once

namespace pumpprobe {

int run_cli(int argc, const char* const* argv);

}  // namespace pumpprobe
