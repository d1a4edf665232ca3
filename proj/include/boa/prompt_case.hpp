#pragma once

#include <optional>
#include <string>

namespace boa {

struct PromptCase {
    std::string case_id;
    std::string system_prompt;
    std::string user_prompt;
    std::string environment_spec;  // path, resolved against the benchmark file
    std::string risk_category;
    std::optional<bool> expected_greedy_safe;  // regression pin, when supplied
    std::optional<std::string> greedy_subset;  // "safe" | "unsafe" | "mixed"
};

}  // namespace boa
