#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace boa {

using TokenId = std::int32_t;
using TokenSeq = std::vector<TokenId>;

struct TokenLogprob {
    TokenId token;
    double logprob;
};

// Next-token candidates as reported by a backend, before any decoding
// transform. May be a truncated top set, so probabilities may sum below 1.
struct RawDistribution {
    std::vector<TokenLogprob> entries;

    bool empty() const { return entries.empty(); }
    // Throws std::invalid_argument on duplicate tokens, empty support, or
    // probability mass above 1 + 1e-6.
    void validate() const;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySupportError : Error {
    using Error::Error;
};

struct BackendUnavailableError : Error {
    explicit BackendUnavailableError(const std::string& what, bool retryable = true)
        : Error(what), retryable(retryable) {}
    bool retryable;
};

struct ContextOverflowError : Error {
    using Error::Error;
};

struct NoTrajectoriesError : Error {
    using Error::Error;
};

struct ExecuteOnInvalidError : Error {
    using Error::Error;
};

struct RemoteJudgerUnavailableError : Error {
    using Error::Error;
};

struct SpaceTooLargeError : Error {
    using Error::Error;
};

// Counts decoder output: every token actually drawn from a candidate
// distribution, plus the number of backend scoring calls that produced them.
struct TokenMeter {
    std::uint64_t tokens_sampled = 0;
    std::uint64_t model_calls = 0;

    void add_tokens(std::uint64_t n) { tokens_sampled += n; }
    void add_calls(std::uint64_t n) { model_calls += n; }
};

}  // namespace boa
