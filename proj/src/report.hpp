#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lgp {

// Result bundle handed across the C boundary: a JSON verdict, a
// human-readable table, and zero or more named tabular artifacts (CSV).
struct Report {
    bool passed = false;
    std::string json;
    std::string text;
    std::vector<std::pair<std::string, std::string>> artifacts;
};

}  // namespace lgp
