// gapcross command-line front end (subcommands wired up as modules land).

#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::fprintf(stderr, "gapcross: not wired up yet\n");
    return 2;
}
