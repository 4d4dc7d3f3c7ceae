#pragma once

// Everything the knowledge base leaves implicit: inherited frames, the est-un
// closure, lexical relations derived from term-concept links, and the
// consistency diagnostics. All functions are pure reads of a knowledge base.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tkb/knowledge_base.hpp"

namespace tkb {

struct FrameAttribute {
    std::string key;
    std::string value;
    ConceptId origin;
    std::size_t distance = 0;  // shortest est-un path from the frame's concept to origin
    bool shadowed = false;

    friend bool operator==(const FrameAttribute&, const FrameAttribute&) = default;
};

struct FrameRelation {
    std::string type;
    ConceptId target;
    std::string definition;
    ConceptId origin;

    friend bool operator==(const FrameRelation&, const FrameRelation&) = default;
};

// A concept's frame after inheritance. For each attribute key exactly one
// entry is unshadowed: a local entry if present, otherwise the entry whose
// origin is closest, ties broken by the smaller origin id. Relations are never
// shadowed; they accumulate over all subsumers with duplicate triples merged.
struct EffectiveFrame {
    ConceptId concept_id;
    std::vector<FrameAttribute> attributes;  // by subsumer order, then key
    std::vector<FrameRelation> relations;    // by subsumer order, then insertion
    std::vector<ConceptId> subsumers;        // topological, the concept itself first

    std::map<std::string, std::string> effective_attributes() const;

    friend bool operator==(const EffectiveFrame&, const EffectiveFrame&) = default;
};

EffectiveFrame effective_frame(const KnowledgeBase& kb, const ConceptId& concept_id);

// Reflexive-transitive est-un closure. Every concept precedes all of its own
// subsumers; among concepts ready at the same time, the closer one (then the
// smaller id) comes first.
std::vector<ConceptId> subsumers(const KnowledgeBase& kb, const ConceptId& concept_id);

// Shortest est-un distance to each subsumer (0 for the concept itself).
std::map<ConceptId, std::size_t> subsumer_distances(const KnowledgeBase& kb, const ConceptId& concept_id);

// Other terms designating, under `viewpoint`, the concept `term` designates
// under that viewpoint. Never contains `term` itself.
std::set<TermId> synonyms(const KnowledgeBase& kb, const TermId& term, const ViewpointId& viewpoint);

struct Meaning {
    ViewpointId viewpoint;
    ConceptId concept_id;

    friend auto operator<=>(const Meaning&, const Meaning&) = default;
};

// One entry per (viewpoint, concept) over the term's links, sorted.
std::vector<Meaning> meanings(const KnowledgeBase& kb, const TermId& term);
bool is_polysemous(const KnowledgeBase& kb, const TermId& term);

struct Designator {
    TermId term;
    std::set<ViewpointId> viewpoints;

    friend bool operator==(const Designator&, const Designator&) = default;
};

// Terms designating the concept, grouped by term (term id order).
std::vector<Designator> designators(const KnowledgeBase& kb, const ConceptId& concept_id);

inline constexpr std::string_view kHeadOf = "est-en-tête-de";
inline constexpr std::string_view kExpansionOf = "est-en-expansion-de";

struct GrammaticalRelation {
    std::string type;
    TermId term;

    friend auto operator<=>(const GrammaticalRelation&, const GrammaticalRelation&) = default;
};

// Relations read off the decompositions of other terms: a head component
// est-en-tête-de each compound it heads (likewise for expansions).
std::vector<GrammaticalRelation> grammatical_relations(const KnowledgeBase& kb, const TermId& term);

// All findings, ordered by rule, then entity ids, then message. Works on any
// stored state, including tables accepted without validation.
std::vector<Diagnostic> check_consistency(const KnowledgeBase& kb);

std::size_t count_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace tkb
