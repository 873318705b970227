#include <cstdio>

int main() {
    std::puts("biphoton: not wired up yet");
    return 1;
}
