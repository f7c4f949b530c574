#include "corrkit/cli.hpp"

int main(int argc, char** argv) { return corrkit::run_cli(argc, argv); }
