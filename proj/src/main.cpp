#include <qtrank/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return qtrank::run_cli(argc, argv, std::cout, std::cerr);
}
