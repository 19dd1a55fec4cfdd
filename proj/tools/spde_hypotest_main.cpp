#include "spdeht/cli.hpp"

int main(int argc, char** argv) {
  return spdeht::cli::run_cli(argc, argv);
}
