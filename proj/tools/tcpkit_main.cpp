#include "tcpkit/cli.hpp"

int main(int argc, char** argv) { return tcpkit::run_cli(argc, argv); }
