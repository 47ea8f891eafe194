#include "msmono/cli.hpp"

int main(int argc, char** argv) { return msmono::run_cli(argc, argv); }
