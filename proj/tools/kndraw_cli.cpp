// kndraw command-line tool (subcommands filled in as the library lands).
#include <cstdio>

int main() {
    std::puts("kndraw: not yet wired");
    return 2;
}
