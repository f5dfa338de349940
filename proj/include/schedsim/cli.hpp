#ifndef SCHEDSIM_CLI_HPP
#define SCHEDSIM_CLI_HPP

namespace schedsim {

// Full command-line front end: parses flags, loads the config folder,
// resolves precedence, runs the requested simulation or training loop and
// writes the Results/Debug outputs.
//
// Exit codes: 0 success (Results and summary fully written), 1 runtime
// failure, 2 usage or configuration error. Diagnostics go to stderr as a
// single line.
int run_cli(int argc, const char* const* argv);

}  // namespace schedsim

#endif
