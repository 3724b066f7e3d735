#include "timm/log.hpp"

#include <cstdio>
#include <cstdlib>

namespace timm {

int log_level() {
  static const int level = [] {
    const char* raw = std::getenv("IMMERSION_LOG");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || value < 0) return 0;
    return value > 2 ? 2 : static_cast<int>(value);
  }();
  return level;
}

void log_line(int level, const std::string& text) {
  if (log_level() >= level) std::fprintf(stderr, "%s\n", text.c_str());
}

}  // namespace timm
