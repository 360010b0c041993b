#include "gkpwalk/cli.hpp"

int main(int argc, char** argv) { return gkpwalk::run_cli(argc, argv); }
