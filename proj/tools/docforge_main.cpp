#include <cstdio>

int main() {
  std::puts("docforge: not wired up yet");
  return 1;
}
