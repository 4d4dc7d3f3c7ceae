#pragma once

// Entity records of a terminological knowledge base: terms (linguistic signs),
// concepts (frames), viewpoints (speaker communities), the reified
// term-concept link, and the corpus (documents cut into textual units).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tkb/ids.hpp"
#include "tkb/text.hpp"

namespace tkb {

using text::Span;

enum class TermSource { corpus, interview };
enum class DecompositionRole { head, expansion };

std::string_view to_string(TermSource s) noexcept;
std::string_view to_string(DecompositionRole r) noexcept;
std::optional<TermSource> parse_term_source(std::string_view s) noexcept;
std::optional<DecompositionRole> parse_decomposition_role(std::string_view s) noexcept;

struct DecompositionPart {
    TermId term;
    DecompositionRole role = DecompositionRole::head;

    friend bool operator==(const DecompositionPart&, const DecompositionPart&) = default;
};

// Linguistic data only. A term never carries attributes, descriptions or
// conceptual relations; its meaning comes from the links it takes part in.
struct Term {
    TermId id;
    std::string surface;  // as entered, trimmed and whitespace-collapsed
    std::string language;
    std::string grammatical_category;
    std::optional<std::string> gender;
    std::optional<std::string> number;
    std::set<std::string> form_variants;
    std::vector<DecompositionPart> decomposition;
    TermSource source = TermSource::corpus;

    friend bool operator==(const Term&, const Term&) = default;
};

// Everything needed to create a term; the id is assigned by the knowledge base.
struct TermSpec {
    std::string surface;
    std::string language;
    std::string grammatical_category;
    std::optional<std::string> gender;
    std::optional<std::string> number;
    std::set<std::string> form_variants;
    std::vector<DecompositionPart> decomposition;
    TermSource source = TermSource::corpus;
};

struct AssertionalRelation {
    std::string type;
    ConceptId target;
    std::string definition;

    friend auto operator<=>(const AssertionalRelation&, const AssertionalRelation&) = default;
};

struct Concept {
    ConceptId id;
    TermId label;  // the terme-vedette
    std::string description;
    std::map<std::string, std::string> attributes;
    std::vector<AssertionalRelation> relations;  // insertion order, no duplicate triples
    std::set<ConceptId> parents;                 // est-un

    friend bool operator==(const Concept&, const Concept&) = default;
};

struct Viewpoint {
    ViewpointId id;
    std::string name;
    std::optional<std::string> description;

    friend bool operator==(const Viewpoint&, const Viewpoint&) = default;
};

struct UsageAnchor {
    UnitId unit;
    Span span;

    friend auto operator<=>(const UsageAnchor&, const UsageAnchor&) = default;
};

struct TermConceptLink {
    LinkId id;
    TermId term_id;
    ConceptId concept_id;
    std::set<ViewpointId> viewpoints;
    std::set<UsageAnchor> usages;

    friend bool operator==(const TermConceptLink&, const TermConceptLink&) = default;
};

struct TextUnit {
    UnitId id;
    DocumentId document;
    std::size_t ordinal = 0;
    std::string content;

    friend bool operator==(const TextUnit&, const TextUnit&) = default;
};

struct Document {
    DocumentId id;
    std::string title;
    std::string source_note;
    std::vector<UnitId> units;  // by ordinal

    friend bool operator==(const Document&, const Document&) = default;
};

struct RelationType {
    std::string name;
    std::string definition;

    friend bool operator==(const RelationType&, const RelationType&) = default;
};

// How add_usage treats a span whose text is not an occurrence of the term.
enum class SpanPolicy { strict, permissive };

std::string_view to_string(SpanPolicy p) noexcept;
std::optional<SpanPolicy> parse_span_policy(std::string_view s) noexcept;

// ---------------------------------------------------------------------------
// Diagnostics

// Declaration order is the reporting order of check_consistency.
enum class Rule {
    Cycle,
    ViewpointConflict,
    LabelNotLinked,
    UnanchoredCorpusTerm,
    UndifferentiatedSiblings,
    DanglingReference,
    SpanMismatch,
};

enum class Severity { error, warning };

std::string_view to_string(Rule r) noexcept;
std::string_view to_string(Severity s) noexcept;
Severity severity_of(Rule r) noexcept;

struct Diagnostic {
    Rule rule = Rule::Cycle;
    Severity severity = Severity::error;
    std::vector<std::string> entities;  // never empty
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

Diagnostic make_diagnostic(Rule rule, std::vector<std::string> entities, std::string message);

}  // namespace tkb
