#include "qoper/report.hpp"

int main(int argc, char** argv) { return qoper::cli_main(argc, argv); }
