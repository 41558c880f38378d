#include "streameval/cli.hpp"

int main(int argc, char** argv) {
    return streameval::run_cli(argc, argv);
}
