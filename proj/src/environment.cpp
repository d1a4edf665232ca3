#include "boa/environment.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace boa {

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

}  // namespace

std::optional<ToolCall> parse_tool_call(const std::vector<std::string>& turn_words) {
    auto open = std::find(turn_words.begin(), turn_words.end(), kCallOpenMarker);
    if (open == turn_words.end()) return std::nullopt;

    ToolCall call;
    call.span_begin = static_cast<std::size_t>(open - turn_words.begin());

    auto close = std::find(open + 1, turn_words.end(), kCallCloseMarker);
    if (close == turn_words.end()) {
        call.span_end = turn_words.size();
        call.malformed = true;
        // Best-effort fields for diagnostics.
        if (open + 1 != turn_words.end()) call.tool_name = *(open + 1);
        return call;
    }
    call.span_end = static_cast<std::size_t>(close - turn_words.begin()) + 1;

    auto it = open + 1;
    if (it == close) {
        call.malformed = true;
        return call;
    }
    call.tool_name = *it++;
    if (call.tool_name.find('=') != std::string::npos) call.malformed = true;

    for (; it != close; ++it) {
        const auto eq = it->find('=');
        if (eq == std::string::npos || eq == 0) {
            call.malformed = true;
            continue;
        }
        call.arguments.emplace_back(it->substr(0, eq), it->substr(eq + 1));
    }
    return call;
}

std::optional<ToolCall> parse_tool_call(const std::string& turn_text) {
    return parse_tool_call(split_words(turn_text));
}

int count_extra_call_markers(const std::vector<std::string>& turn_words) {
    auto n = std::count(turn_words.begin(), turn_words.end(), std::string(kCallOpenMarker));
    return n > 0 ? static_cast<int>(n) - 1 : 0;
}

std::string render_tool_call(const ToolCall& call) {
    std::string out = kCallOpenMarker;
    out += ' ';
    out += call.tool_name;
    for (const auto& [k, v] : call.arguments) {
        out += ' ';
        out += k;
        out += '=';
        out += v;
    }
    out += ' ';
    out += kCallCloseMarker;
    return out;
}

const ToolSpec* EnvironmentSpec::find_tool(const std::string& name) const {
    for (const auto& t : tools) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

std::vector<ToolArg> canonicalize_args(std::vector<ToolArg> args) {
    std::sort(args.begin(), args.end());
    return args;
}

ValidationResult validate(const ToolCall& call, const EnvironmentSpec& spec) {
    if (call.malformed) {
        return {ValidationResult::Kind::malformed, "broken call grammar"};
    }
    const ToolSpec* tool = spec.find_tool(call.tool_name);
    if (!tool) {
        return {ValidationResult::Kind::unknown_tool, "undeclared tool: " + call.tool_name};
    }
    for (const auto& req : tool->required_args) {
        const bool present = std::any_of(call.arguments.begin(), call.arguments.end(),
                                         [&](const ToolArg& a) { return a.first == req; });
        if (!present) {
            return {ValidationResult::Kind::schema, "missing required argument: " + req};
        }
    }
    for (const auto& [k, v] : call.arguments) {
        const bool declared =
            std::find(tool->required_args.begin(), tool->required_args.end(), k) != tool->required_args.end() ||
            std::find(tool->optional_args.begin(), tool->optional_args.end(), k) != tool->optional_args.end();
        if (!declared) {
            return {ValidationResult::Kind::schema, "undeclared argument: " + k};
        }
    }
    return {};
}

std::string execute(const ToolCall& call, const EnvironmentSpec& spec) {
    const auto verdict = validate(call, spec);
    if (!verdict.valid()) {
        throw ExecuteOnInvalidError("execute: call failed validation: " + verdict.detail);
    }
    const ToolSpec* tool = spec.find_tool(call.tool_name);
    const auto canonical = canonicalize_args(call.arguments);

    std::string response = tool->default_response;
    for (const auto& rule : tool->rules) {
        if (rule.args == canonical) {
            response = rule.response;
            break;
        }
    }

    for (const auto& inj : spec.injected_payloads) {
        if (inj.tool != call.tool_name) continue;
        const bool fires = std::all_of(inj.trigger.begin(), inj.trigger.end(), [&](const ToolArg& t) {
            return std::find(call.arguments.begin(), call.arguments.end(), t) != call.arguments.end();
        });
        if (fires) {
            response += ' ';
            response += inj.payload;
        }
    }
    return response;
}

namespace {

std::vector<ToolArg> args_from_json(const nlohmann::json& j) {
    std::vector<ToolArg> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out.emplace_back(it.key(), it.value().get<std::string>());
    }
    return out;
}

EnvironmentSpec spec_from_json(const nlohmann::json& j) {
    EnvironmentSpec spec;
    for (const auto& t : j.value("tools", nlohmann::json::array())) {
        ToolSpec tool;
        tool.name = t.at("name").get<std::string>();
        tool.required_args = t.value("required", std::vector<std::string>{});
        tool.optional_args = t.value("optional", std::vector<std::string>{});
        tool.default_response = t.value("default_response", std::string{"EMPTY"});
        for (const auto& r : t.value("rules", nlohmann::json::array())) {
            tool.rules.push_back({canonicalize_args(args_from_json(r.at("args"))),
                                  r.at("response").get<std::string>()});
        }
        if (spec.find_tool(tool.name)) {
            throw std::invalid_argument("environment spec: duplicate tool: " + tool.name);
        }
        spec.tools.push_back(std::move(tool));
    }
    for (const auto& p : j.value("injected_payloads", nlohmann::json::array())) {
        spec.injected_payloads.push_back({p.at("tool").get<std::string>(),
                                          args_from_json(p.at("trigger")),
                                          p.at("payload").get<std::string>()});
    }
    return spec;
}

}  // namespace

EnvironmentSpec EnvironmentSpec::from_json_text(const std::string& text) {
    return spec_from_json(nlohmann::json::parse(text));
}

EnvironmentSpec EnvironmentSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("EnvironmentSpec: cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

}  // namespace boa
