#include "tkb/model.hpp"

namespace tkb {

std::string_view to_string(TermSource s) noexcept {
    return s == TermSource::corpus ? "corpus" : "interview";
}

std::string_view to_string(DecompositionRole r) noexcept {
    return r == DecompositionRole::head ? "head" : "expansion";
}

std::optional<TermSource> parse_term_source(std::string_view s) noexcept {
    if (s == "corpus") return TermSource::corpus;
    if (s == "interview") return TermSource::interview;
    return std::nullopt;
}

std::optional<DecompositionRole> parse_decomposition_role(std::string_view s) noexcept {
    if (s == "head") return DecompositionRole::head;
    if (s == "expansion") return DecompositionRole::expansion;
    return std::nullopt;
}

std::string_view to_string(SpanPolicy p) noexcept {
    return p == SpanPolicy::strict ? "strict" : "permissive";
}

std::optional<SpanPolicy> parse_span_policy(std::string_view s) noexcept {
    if (s == "strict") return SpanPolicy::strict;
    if (s == "permissive") return SpanPolicy::permissive;
    return std::nullopt;
}

std::string_view to_string(Rule r) noexcept {
    switch (r) {
        case Rule::Cycle: return "Cycle";
        case Rule::ViewpointConflict: return "ViewpointConflict";
        case Rule::LabelNotLinked: return "LabelNotLinked";
        case Rule::UnanchoredCorpusTerm: return "UnanchoredCorpusTerm";
        case Rule::UndifferentiatedSiblings: return "UndifferentiatedSiblings";
        case Rule::DanglingReference: return "DanglingReference";
        case Rule::SpanMismatch: return "SpanMismatch";
    }
    return "Unknown";
}

std::string_view to_string(Severity s) noexcept { return s == Severity::error ? "error" : "warning"; }

Severity severity_of(Rule r) noexcept {
    switch (r) {
        case Rule::Cycle:
        case Rule::ViewpointConflict:
        case Rule::DanglingReference:
        case Rule::UndifferentiatedSiblings:
            return Severity::error;
        case Rule::LabelNotLinked:
        case Rule::UnanchoredCorpusTerm:
        case Rule::SpanMismatch:
            return Severity::warning;
    }
    return Severity::error;
}

Diagnostic make_diagnostic(Rule rule, std::vector<std::string> entities, std::string message) {
    return Diagnostic{rule, severity_of(rule), std::move(entities), std::move(message)};
}

}  // namespace tkb
