#include <cvl/cli.hpp>

int main(int argc, char** argv) { return cvl::cli::run(argc, argv); }
