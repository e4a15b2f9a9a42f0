#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chow {

// Collects non-fatal warnings (e.g. a degree query off the top degree).
// Callers that do not care pass nullptr; the CLI routes these to stderr so
// result output stays clean.
struct Diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

inline void warn_into(Diagnostics* diag, std::string msg) {
    if (diag) diag->warn(std::move(msg));
}

} // namespace chow
