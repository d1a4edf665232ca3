#pragma once

#include "boa/types.hpp"

#include <optional>
#include <random>
#include <span>

namespace boa {

// Which truncation runs first when both top-k and top-p are set.
enum class TruncationOrder { top_k_then_top_p, top_p_then_top_k };

struct DecodingStrategy {
    double temperature = 1.0;
    std::optional<int> top_k;
    std::optional<double> top_p;
    int candidate_pool = 512;  // approximate top-p sorts only this many tokens
    TruncationOrder order = TruncationOrder::top_k_then_top_p;

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;

    static DecodingStrategy greedy() {
        DecodingStrategy s;
        s.top_k = 1;
        return s;
    }
};

struct CandidateEntry {
    TokenId token;
    double prob;
};

// The decoder-selected support after truncation and renormalization: sorted
// by prob descending (token id ascending on ties), probabilities sum to 1.
struct CandidateDistribution {
    std::vector<CandidateEntry> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
};

// Temperature scaling, then truncation (pool cutoff, top-k, top-p nucleus),
// then renormalization. Tokens past the candidate_pool cutoff are dropped.
// Throws EmptySupportError when no entry has finite probability mass.
CandidateDistribution apply_decoder(const RawDistribution& raw, const DecodingStrategy& strategy);

// Cumulative log-probability of a chunk appended to a prefix. Environment
// tokens never appear here; only decoder-drawn token probabilities do.
double chunk_logprob(double prefix_logprob, std::span<const double> token_probs);

// Inverse-CDF draw; `unit` in [0, 1). Returns the entry index.
std::size_t sample_index(const CandidateDistribution& dist, double unit);

std::size_t sample_index(const CandidateDistribution& dist, std::mt19937_64& rng);

}  // namespace boa
