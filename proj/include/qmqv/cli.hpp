#pragma once

namespace qmqv {

// Entry point for the command line tool; returns a process exit code.
int run_cli(int argc, char** argv);

}  // namespace qmqv
