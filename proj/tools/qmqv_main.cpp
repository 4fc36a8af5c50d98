#include "qmqv/cli.hpp"

int main(int argc, char** argv) { return qmqv::run_cli(argc, argv); }
