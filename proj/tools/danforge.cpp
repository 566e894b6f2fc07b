#include "danforge/workbench.hpp"

int main(int argc, char** argv) { return danforge::cli(argc, argv); }
