#include "grt/driver.hpp"

int main(int argc, char** argv) { return grt::run_cli(argc, argv); }
