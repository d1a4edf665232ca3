#pragma once

#include "boa/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace boa {

// Tool-call grammar, fixed byte-for-byte:
//
//   <<call>> NAME KEY=VALUE ... <<end>>
//
// All elements are whitespace-separated words. NAME must not contain '='.
// Each argument word is split at its first '='; keys and values carry no
// whitespace and there is no escaping. A turn's first <<call>> marker opens
// the call; any later markers are ignored. A call missing its <<end>>
// marker, missing a name, or containing a non KEY=VALUE word is malformed.
inline constexpr const char* kCallOpenMarker = "<<call>>";
inline constexpr const char* kCallCloseMarker = "<<end>>";

using ToolArg = std::pair<std::string, std::string>;

struct ToolCall {
    std::string tool_name;
    std::vector<ToolArg> arguments;  // in emission order
    std::size_t span_begin = 0;      // word range within the turn, [begin, end)
    std::size_t span_end = 0;
    bool malformed = false;

    bool operator==(const ToolCall& other) const {
        return tool_name == other.tool_name && arguments == other.arguments &&
               malformed == other.malformed;
    }
};

// First call in the turn, or nullopt for plain conversation. Broken call
// markers come back flagged malformed rather than as errors.
std::optional<ToolCall> parse_tool_call(const std::vector<std::string>& turn_words);
std::optional<ToolCall> parse_tool_call(const std::string& turn_text);

// Number of <<call>> markers beyond the first; noted in trajectory records.
int count_extra_call_markers(const std::vector<std::string>& turn_words);

// Inverse of parse for well-formed calls: parse(render(c)) == c.
std::string render_tool_call(const ToolCall& call);

struct ResponseRule {
    std::vector<ToolArg> args;  // canonicalized at load
    std::string response;
};

struct ToolSpec {
    std::string name;
    std::vector<std::string> required_args;
    std::vector<std::string> optional_args;
    std::string default_response;
    std::vector<ResponseRule> rules;
};

struct InjectedPayload {
    std::string tool;
    std::vector<ToolArg> trigger;  // fires when every pair appears in the call
    std::string payload;
};

struct EnvironmentSpec {
    std::vector<ToolSpec> tools;
    std::vector<InjectedPayload> injected_payloads;

    static EnvironmentSpec load(const std::string& path);
    static EnvironmentSpec from_json_text(const std::string& text);

    const ToolSpec* find_tool(const std::string& name) const;
};

struct ValidationResult {
    enum class Kind { valid, malformed, unknown_tool, schema };
    Kind kind = Kind::valid;
    std::string detail;

    bool valid() const { return kind == Kind::valid; }
};

ValidationResult validate(const ToolCall& call, const EnvironmentSpec& spec);

// Keys sorted lexicographically (values break key ties) so argument order
// never changes rule lookup.
std::vector<ToolArg> canonicalize_args(std::vector<ToolArg> args);

// Deterministic response lookup: exact rule match on canonical args, else the
// tool default; a matching injected payload is appended. Throws
// ExecuteOnInvalidError when the call does not validate.
std::string execute(const ToolCall& call, const EnvironmentSpec& spec);

}  // namespace boa
