#pragma once

#include "boa/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace boa {

enum class BackendKind { toy, remote };
enum class TokenizerMode { identity_integer, byte_level };

struct ModelHandle {
    BackendKind backend_kind = BackendKind::toy;
    int vocab_size = 0;
    TokenId eos_token = 0;
    TokenizerMode tokenizer_mode = TokenizerMode::identity_integer;
};

// What a backend scores: the rendered conversation up to the current turn
// plus the decoder-drawn tokens of the turn in progress.
struct ModelPrefix {
    std::string text;
    TokenSeq turn_tokens;
};

class ModelBackend {
public:
    virtual ~ModelBackend() = default;

    virtual const ModelHandle& handle() const = 0;

    // Candidate tokens with raw (pre-decoder) logprobs for the next position.
    // Throws ContextOverflowError / BackendUnavailableError.
    virtual RawDistribution next_distribution(const ModelPrefix& prefix) = 0;

    // Element-wise equal to mapping next_distribution; backends may collapse
    // the list into one transport round trip.
    virtual std::vector<RawDistribution> next_distribution_batch(const std::vector<ModelPrefix>& prefixes);

    // Display text for a token id.
    virtual std::string surface(TokenId token) const = 0;

    TokenId eos() const { return handle().eos_token; }
};

}  // namespace boa
