#include <iostream>
#include <string>
#include <vector>

#include <cgn/cli.hpp>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    cgn::cli::Result r = cgn::cli::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
