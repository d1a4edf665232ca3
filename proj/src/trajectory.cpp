#include "boa/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace boa {

std::string to_string(VerdictSource source) {
    switch (source) {
        case VerdictSource::fast_path: return "fast_path";
        case VerdictSource::rule: return "rule";
        case VerdictSource::remote: return "remote";
        case VerdictSource::rollout_average: return "rollout_average";
        case VerdictSource::cache: return "cache";
    }
    return "rule";
}

VerdictSource verdict_source_from_string(const std::string& s) {
    if (s == "fast_path") return VerdictSource::fast_path;
    if (s == "rule") return VerdictSource::rule;
    if (s == "remote") return VerdictSource::remote;
    if (s == "rollout_average") return VerdictSource::rollout_average;
    if (s == "cache") return VerdictSource::cache;
    throw std::invalid_argument("unknown verdict source: " + s);
}

Segment Segment::model_segment(TokenSeq tokens, std::vector<std::string> surfaces) {
    if (tokens.size() != surfaces.size()) {
        throw std::invalid_argument("Segment: token/surface length mismatch");
    }
    Segment s;
    s.kind = SegmentKind::model;
    s.tokens = std::move(tokens);
    s.surfaces = std::move(surfaces);
    return s;
}

Segment Segment::environment_segment(std::string text) {
    Segment s;
    s.kind = SegmentKind::environment;
    s.text = std::move(text);
    return s;
}

bool Segment::content_equal(const Segment& other) const {
    if (kind != other.kind) return false;
    return kind == SegmentKind::model ? tokens == other.tokens : text == other.text;
}

int TrajectoryRecord::model_token_count() const {
    int n = 0;
    for (const auto& s : segments) {
        if (s.kind == SegmentKind::model) n += static_cast<int>(s.tokens.size());
    }
    return n;
}

bool TrajectoryRecord::content_equal(const TrajectoryRecord& other) const {
    if (case_id != other.case_id || segments.size() != other.segments.size()) return false;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!segments[i].content_equal(other.segments[i])) return false;
    }
    return true;
}

bool TrajectoryRecord::content_prefix_of(const TrajectoryRecord& other) const {
    if (case_id != other.case_id || segments.size() > other.segments.size()) return false;
    if (segments.empty()) return true;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (!segments[i].content_equal(other.segments[i])) return false;
    }
    const Segment& last = segments.back();
    const Segment& match = other.segments[segments.size() - 1];
    if (last.kind != match.kind) return false;
    if (last.kind == SegmentKind::environment) return last.text == match.text;
    if (last.tokens.size() > match.tokens.size()) return false;
    return std::equal(last.tokens.begin(), last.tokens.end(), match.tokens.begin());
}

namespace {

void append_words(std::string& out, const std::string& text) {
    if (text.empty()) return;
    if (!out.empty()) out += ' ';
    out += text;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) append_words(out, w);
    return out;
}

}  // namespace

std::string render_for_model(const PromptCase& kase, const std::vector<Segment>& segments) {
    std::string out;
    append_words(out, kase.system_prompt);
    append_words(out, kase.user_prompt);
    for (const auto& s : segments) {
        append_words(out, s.kind == SegmentKind::model ? join(s.surfaces) : s.text);
    }
    return out;
}

std::vector<std::string> turn_words(const Segment& segment, const std::string& eos_surface) {
    std::vector<std::string> words = segment.surfaces;
    if (!words.empty() && words.back() == eos_surface) words.pop_back();
    return words;
}

std::string render_for_judger(const PromptCase& kase, const TrajectoryRecord& record,
                              const std::string& eos_surface) {
    std::string out;
    out += "system: " + kase.system_prompt + "\n";
    out += "user: " + kase.user_prompt + "\n";
    for (const auto& s : record.segments) {
        if (s.kind == SegmentKind::model) {
            out += "assistant: " + join(turn_words(s, eos_surface)) + "\n";
        } else {
            out += "tool: " + s.text + "\n";
        }
    }
    return out;
}

}  // namespace boa
