#include <string>
#include <vector>

#include "qrmark/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qrmark::cli::run(args);
}
