#include "dice/runner.hpp"

int main(int argc, char** argv) { return dice::run_cli(argc, argv); }
