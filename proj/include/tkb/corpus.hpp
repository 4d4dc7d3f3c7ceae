#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tkb/knowledge_base.hpp"

namespace tkb {

// Units are separated by exactly this string. Longer blank-line runs are
// kept inside the units so that joining always reproduces the input.
inline constexpr std::string_view kUnitSeparator = "\n\n";

std::vector<std::string> segment(std::string_view text);
std::string join_units(const std::vector<std::string>& units);

// Segments `text` into paragraph units and stores the document.
DocumentId ingest_document(KnowledgeBase& kb, std::string title, std::string source_note, std::string_view text);

// The document text rebuilt from its units.
std::string document_text(const KnowledgeBase& kb, const DocumentId& document);

struct Occurrence {
    TermId term;
    UnitId unit;
    Span span;
    std::string matched_form;  // the surface or variant that matched

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Whole-word, case-insensitive, longest-form-first occurrences of the term's
// surface and variants, ordered by document id, unit ordinal, span start.
std::vector<Occurrence> index_occurrences(const KnowledgeBase& kb, const TermId& term);
std::vector<Occurrence> occurrences_in_unit(const KnowledgeBase& kb, const TermId& term, const UnitId& unit);

// Units in corpus order: document id, then ordinal.
std::vector<UnitId> corpus_order(const KnowledgeBase& kb);

struct Context {
    LinkId link;
    UnitId unit;
    Span span;
    std::string left;
    std::string match;
    std::string right;

    friend bool operator==(const Context&, const Context&) = default;
};

// Keyword-in-context view of each usage anchored on the link; windows count
// characters and are clipped at the unit boundaries.
std::vector<Context> contexts_of(const KnowledgeBase& kb, const LinkId& link, std::size_t window);

struct SearchHit {
    UnitId unit;
    Span span;

    friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// Case-insensitive substring hits of the normalized query, in corpus order.
std::vector<SearchHit> keyword_search(const KnowledgeBase& kb, std::string_view query);

struct Annotation {
    Span span;
    TermId term;
    std::string matched_form;
    std::vector<LinkId> links;  // links of `term` with a usage covering the span

    friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct HighlightedUnit {
    UnitId unit;
    std::string content;
    std::vector<Annotation> annotations;  // disjoint, by span start

    friend bool operator==(const HighlightedUnit&, const HighlightedUnit&) = default;
};

// Occurrences of every linked term in the unit. Overlaps are resolved by
// taking the longest candidate first (ties: earlier start, then smaller term id).
HighlightedUnit highlighted_unit(const KnowledgeBase& kb, const UnitId& unit);

}  // namespace tkb
