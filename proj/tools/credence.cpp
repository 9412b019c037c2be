#include "credence/cli.hpp"

int main(int argc, char** argv) { return credence::run_main(argc, argv); }
