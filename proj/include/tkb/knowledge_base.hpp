#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tkb/error.hpp"
#include "tkb/model.hpp"

namespace tkb {

// Raw entity tables. This is the persisted shape of a knowledge base and the
// input of the integrity validator; it carries no derived indices.
struct Tables {
    std::map<TermId, Term> terms;
    std::map<ConceptId, Concept> concepts;
    std::map<ViewpointId, Viewpoint> viewpoints;
    std::map<LinkId, TermConceptLink> links;
    std::map<DocumentId, Document> documents;
    std::map<UnitId, TextUnit> units;
    std::map<std::string, RelationType> relation_types;  // keyed by name
    SpanPolicy span_policy = SpanPolicy::strict;

    friend bool operator==(const Tables&, const Tables&) = default;
};

// First structural invariant the tables violate, if any. The rule names are
// the IntegrityError sub-codes reported by load.
struct IntegrityViolation {
    std::string rule;
    std::vector<std::string> entities;
    std::string message;
};
std::optional<IntegrityViolation> find_integrity_violation(const Tables& tables);

// Search forms of a term: its surface first, then each form variant.
std::vector<text::Form> forms_of(const Term& term);

// Kind of record an id names, looked up in the tables.
enum class EntityKind { term, concept_, viewpoint, link, document, unit };
std::string_view to_string(EntityKind k) noexcept;

// A terminological knowledge base. All mutations validate completely before
// touching state, so a rejected call leaves the base unchanged. Const member
// functions never mutate, which makes a shared const instance safe to read
// from several threads while no writer is active.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    // Validates every structural invariant; throws IntegrityError naming the
    // violated rule.
    static KnowledgeBase from_tables(Tables tables);
    // Accepts anything. Used to run the consistency checker over files that
    // would not load.
    static KnowledgeBase from_tables_unchecked(Tables tables);

    const Tables& tables() const noexcept { return tables_; }
    SpanPolicy span_policy() const noexcept { return tables_.span_policy; }
    void set_span_policy(SpanPolicy policy) noexcept { tables_.span_policy = policy; }

    // -- lookups (nullptr when absent)
    const Term* find_term(const TermId& id) const;
    const Concept* find_concept(const ConceptId& id) const;
    const Viewpoint* find_viewpoint(const ViewpointId& id) const;
    const TermConceptLink* find_link(const LinkId& id) const;
    const Document* find_document(const DocumentId& id) const;
    const TextUnit* find_unit(const UnitId& id) const;

    std::optional<TermId> find_term_by_surface(std::string_view surface, std::string_view language) const;
    std::vector<TermId> find_terms_by_surface(std::string_view surface) const;
    std::optional<ViewpointId> find_viewpoint_by_name(std::string_view name) const;
    std::optional<EntityKind> kind_of(std::string_view id) const;

    // Links grouped by their term / concept, in link-id order.
    std::vector<LinkId> links_of_term(const TermId& term) const;
    std::vector<LinkId> links_of_concept(const ConceptId& concept_id) const;
    std::optional<LinkId> find_link(const TermId& term, const ConceptId& concept_id) const;

    // Display text for an id: term surface, concept label surface, viewpoint name.
    std::string display_name(std::string_view id) const;

    // -- mutations
    TermId create_term(const TermSpec& spec);
    ViewpointId create_viewpoint(std::string_view name, std::optional<std::string> description = {});
    ConceptId create_concept(const TermId& label, std::string description,
                             std::map<std::string, std::string> attributes = {},
                             std::set<ConceptId> parents = {});
    void set_attribute(const ConceptId& concept_id, std::string_view key, std::string value);
    void add_parent(const ConceptId& child, const ConceptId& parent);
    void register_relation_type(std::string_view name, std::string definition);
    void add_assertional_relation(const ConceptId& source, std::string_view type,
                                  const ConceptId& target, std::string definition);
    LinkId link(const TermId& term, const ConceptId& concept_id, const ViewpointId& viewpoint);
    // Returns a SpanMismatch diagnostic when the anchor was stored under the
    // permissive policy although its text is not an occurrence of the term.
    std::optional<Diagnostic> add_usage(const LinkId& link, const UnitId& unit, Span span,
                                        std::optional<SpanPolicy> policy = {});
    DocumentId add_document(std::string title, std::string source_note,
                            const std::vector<std::string>& unit_contents);
    void delete_entity(std::string_view id);

    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
        return a.tables_ == b.tables_;
    }

private:
    std::string next_id(std::string_view prefix);
    void rebuild_indices();
    void index_link(const TermConceptLink& link);
    bool reaches(const ConceptId& from, const ConceptId& to) const;

    Tables tables_;

    std::map<std::pair<std::string, std::string>, TermId> surface_index_;  // (normalized surface, language)
    std::map<std::string, ViewpointId> viewpoint_names_;                    // normalized name
    std::map<std::pair<TermId, ViewpointId>, LinkId> designation_;         // one concept per viewpoint
    std::map<std::pair<TermId, ConceptId>, LinkId> pair_links_;
    std::map<TermId, std::set<LinkId>> links_by_term_;
    std::map<ConceptId, std::set<LinkId>> links_by_concept_;
    std::map<std::string, std::uint64_t, std::less<>> counters_;
};

}  // namespace tkb
