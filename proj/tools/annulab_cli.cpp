#include <cstdio>

int main() {
    std::puts("annulab: placeholder");
    return 0;
}
