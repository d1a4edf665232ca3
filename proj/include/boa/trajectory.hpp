#pragma once

#include "boa/prompt_case.hpp"
#include "boa/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boa {

enum class VerdictSource { fast_path, rule, remote, rollout_average, cache };

std::string to_string(VerdictSource source);
VerdictSource verdict_source_from_string(const std::string& s);

// safety in [0,1]: 1 = certainly safe, 0 = certainly unsafe.
struct JudgeVerdict {
    double safety = 1.0;
    VerdictSource source = VerdictSource::rule;
};

enum class SegmentKind { model, environment };

struct Segment {
    SegmentKind kind = SegmentKind::model;
    TokenSeq tokens;                    // model segments
    std::vector<std::string> surfaces;  // model segments, display text per token
    std::string text;                   // environment segments

    static Segment model_segment(TokenSeq tokens, std::vector<std::string> surfaces);
    static Segment environment_segment(std::string text);

    bool content_equal(const Segment& other) const;
};

// One root-to-leaf path: alternating model turns and environment responses
// after the prompt. The cache and witness unit.
struct TrajectoryRecord {
    std::string case_id;
    std::vector<Segment> segments;
    double total_model_logprob = 0.0;
    std::optional<JudgeVerdict> verdict;
    int extra_calls_ignored = 0;

    int model_token_count() const;
    bool content_equal(const TrajectoryRecord& other) const;
    // True when this record's content is a (token-level) prefix of `other`:
    // fully matching leading segments, with the last model segment allowed to
    // stop mid-turn. Environment segments only match whole.
    bool content_prefix_of(const TrajectoryRecord& other) const;
};

// Plain concatenation consumed by model backends: prompt words, then each
// segment's words (model token surfaces include the eos marker).
std::string render_for_model(const PromptCase& kase, const std::vector<Segment>& segments);

// Role-labelled rendering consumed by judgers and reports. Trailing eos
// surfaces are stripped from assistant lines.
std::string render_for_judger(const PromptCase& kase, const TrajectoryRecord& record);

// Words of a model segment with the trailing eos surface removed.
std::vector<std::string> turn_words(const Segment& segment, const std::string& eos_surface);

}  // namespace boa
