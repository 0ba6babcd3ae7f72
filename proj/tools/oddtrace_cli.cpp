#include <oddtrace/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return oddtrace::cli::main(argc, argv, std::cout, std::cerr);
}
