#pragma once

#include "boa/model.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace boa {

// One transition rule: fires when the flattened prefix ends with `context`
// (compared token-wise). The longest matching context wins; an empty context
// matches everything and acts as a tabled fallback.
struct ToyTransition {
    TokenSeq context;
    RawDistribution dist;
};

struct ToyModelSpec {
    std::vector<std::string> vocab;
    TokenId eos_token = 0;
    int max_length = 32;       // per-turn forcing depth: eos prob 1 at this depth
    int context_limit = 4096;  // flat prefix tokens beyond this overflow
    std::uint64_t default_seed = 0;
    std::vector<ToyTransition> transitions;
};

// Deterministic table-driven backend. next_distribution is a pure function
// of (spec, prefix): transition lookup by longest context suffix, procedural
// hash fallback otherwise, eos forced once a turn reaches max_length tokens.
class ToyModel : public ModelBackend {
public:
    explicit ToyModel(ToyModelSpec spec);

    static ToyModel load(const std::string& path);
    static ToyModel from_json_text(const std::string& text);

    const ModelHandle& handle() const override { return handle_; }
    RawDistribution next_distribution(const ModelPrefix& prefix) override;
    std::string surface(TokenId token) const override;

    // Whitespace-word tokenization over the vocab surfaces. Throws
    // std::invalid_argument on a word with no matching surface.
    TokenSeq tokenize(const std::string& text) const;

    const ToyModelSpec& spec() const { return spec_; }

private:
    RawDistribution default_rule(const TokenSeq& flat) const;

    ToyModelSpec spec_;
    ModelHandle handle_;
    std::unordered_map<std::string, TokenId> surface_to_id_;
};

}  // namespace boa
