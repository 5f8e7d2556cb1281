#include "ntlab/cli.hpp"
#include "ntlab/errors.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    ntlab::cli::RunConfig config;
    try {
        config = ntlab::cli::parse_args(args);
    } catch (const ntlab::UsageError& e) {
        std::cerr << "ntlab: " << e.what() << "\n";
        return ntlab::cli::kExitUsage;
    }
    return ntlab::cli::run(config, std::cout, std::cerr);
}
