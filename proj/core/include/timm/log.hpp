#pragma once

#include <string>

namespace timm {

// Verbosity from the IMMERSION_LOG environment variable (0 = silent,
// 1 = per-command progress, 2 = engine internals). Read once.
int log_level();

void log_line(int level, const std::string& text);  // to stderr

}  // namespace timm
