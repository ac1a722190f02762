#include "probegen/cli/app.hpp"

int main(int argc, char** argv) { return probegen::cli::run_app(argc, argv); }
