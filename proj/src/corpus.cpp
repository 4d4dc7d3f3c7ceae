#include "tkb/corpus.hpp"

#include <algorithm>
#include <tuple>

namespace tkb {

namespace {

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

const TextUnit& require_unit(const KnowledgeBase& kb, const UnitId& id) {
    auto* u = kb.find_unit(id);
    if (!u) throw Error(ErrorCode::UnknownEntity, "unknown text unit " + id.str(), {id.str()});
    return *u;
}

}  // namespace

std::vector<std::string> segment(std::string_view text) {
    std::vector<std::string> pieces;
    std::size_t from = 0;
    for (;;) {
        auto at = text.find(kUnitSeparator, from);
        if (at == std::string_view::npos) {
            pieces.emplace_back(text.substr(from));
            break;
        }
        pieces.emplace_back(text.substr(from, at - from));
        from = at + kUnitSeparator.size();
    }

    // Blank pieces come from runs of three or more newlines; fold them into a
    // neighbouring unit instead of emitting empty paragraphs.
    std::vector<std::string> units;
    std::string leading;
    for (auto& piece : pieces) {
        if (blank(piece)) {
            if (units.empty()) {
                leading += piece;
                leading += kUnitSeparator;
            } else {
                units.back() += kUnitSeparator;
                units.back() += piece;
            }
            continue;
        }
        units.push_back(leading + piece);
        leading.clear();
    }
    if (units.empty()) units.emplace_back(text);
    return units;
}

std::string join_units(const std::vector<std::string>& units) {
    std::string out;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (i) out += kUnitSeparator;
        out += units[i];
    }
    return out;
}

DocumentId ingest_document(KnowledgeBase& kb, std::string title, std::string source_note, std::string_view text) {
    if (blank(text)) throw Error(ErrorCode::EmptyDocument, "document text is empty");
    return kb.add_document(std::move(title), std::move(source_note), segment(text));
}

std::string document_text(const KnowledgeBase& kb, const DocumentId& document) {
    auto* doc = kb.find_document(document);
    if (!doc) throw Error(ErrorCode::UnknownEntity, "unknown document " + document.str(), {document.str()});
    std::vector<std::string> contents;
    for (const auto& u : doc->units) contents.push_back(require_unit(kb, u).content);
    return join_units(contents);
}

std::vector<UnitId> corpus_order(const KnowledgeBase& kb) {
    std::vector<UnitId> out;
    for (const auto& [id, doc] : kb.tables().documents)
        for (const auto& u : doc.units)
            if (kb.find_unit(u)) out.push_back(u);
    return out;
}

std::vector<Occurrence> occurrences_in_unit(const KnowledgeBase& kb, const TermId& term, const UnitId& unit) {
    auto* t = kb.find_term(term);
    if (!t) throw Error(ErrorCode::UnknownEntity, "unknown term " + term.str(), {term.str()});
    const auto forms = forms_of(*t);
    const auto chars = text::decode(require_unit(kb, unit).content);
    std::vector<Occurrence> out;
    for (const auto& m : text::match_forms(chars, forms)) out.push_back({term, unit, m.span, forms[m.form].original});
    return out;
}

std::vector<Occurrence> index_occurrences(const KnowledgeBase& kb, const TermId& term) {
    if (!kb.find_term(term)) throw Error(ErrorCode::UnknownEntity, "unknown term " + term.str(), {term.str()});
    std::vector<Occurrence> out;
    for (const auto& u : corpus_order(kb)) {
        auto found = occurrences_in_unit(kb, term, u);
        out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    return out;
}

std::vector<Context> contexts_of(const KnowledgeBase& kb, const LinkId& link, std::size_t window) {
    auto* l = kb.find_link(link);
    if (!l) throw Error(ErrorCode::UnknownEntity, "unknown link " + link.str(), {link.str()});
    std::vector<Context> out;
    for (const auto& usage : l->usages) {
        auto* unit = kb.find_unit(usage.unit);
        if (!unit) continue;
        const text::Decoded decoded(unit->content);
        const auto span = usage.span;
        if (span.start > span.end || span.end > decoded.size()) continue;
        const std::size_t left_from = span.start > window ? span.start - window : 0;
        const std::size_t right_to = std::min(decoded.size(), span.end + window);
        out.push_back({link, usage.unit, span, std::string(decoded.slice({left_from, span.start})),
                       std::string(decoded.slice(span)), std::string(decoded.slice({span.end, right_to}))});
    }
    return out;
}

std::vector<SearchHit> keyword_search(const KnowledgeBase& kb, std::string_view query) {
    const auto needle = text::normalize32(query);
    if (needle.empty()) throw Error(ErrorCode::EmptyQuery, "search query is empty");
    std::vector<SearchHit> out;
    for (const auto& u : corpus_order(kb)) {
        const auto chars = text::decode(kb.find_unit(u)->content);
        for (const auto& span : text::find_all(chars, needle)) out.push_back({u, span});
    }
    return out;
}

HighlightedUnit highlighted_unit(const KnowledgeBase& kb, const UnitId& unit) {
    const auto& u = require_unit(kb, unit);

    std::vector<Occurrence> candidates;
    for (const auto& [id, term] : kb.tables().terms) {
        if (kb.links_of_term(id).empty()) continue;
        auto found = occurrences_in_unit(kb, id, unit);
        candidates.insert(candidates.end(), found.begin(), found.end());
    }
    std::sort(candidates.begin(), candidates.end(), [](const Occurrence& a, const Occurrence& b) {
        if (a.span.length() != b.span.length()) return a.span.length() > b.span.length();
        return std::tie(a.span.start, a.term) < std::tie(b.span.start, b.term);
    });

    HighlightedUnit out{unit, u.content, {}};
    for (auto& c : candidates) {
        const bool clash = std::any_of(out.annotations.begin(), out.annotations.end(),
                                       [&](const Annotation& a) { return a.span.overlaps(c.span); });
        if (clash) continue;
        Annotation a{c.span, c.term, std::move(c.matched_form), {}};
        for (const auto& lid : kb.links_of_term(c.term)) {
            const auto& usages = kb.find_link(lid)->usages;
            const bool covers = std::any_of(usages.begin(), usages.end(), [&](const UsageAnchor& anchor) {
                return anchor.unit == unit && anchor.span.contains(a.span);
            });
            if (covers) a.links.push_back(lid);
        }
        out.annotations.push_back(std::move(a));
    }
    std::sort(out.annotations.begin(), out.annotations.end(),
              [](const Annotation& a, const Annotation& b) { return a.span.start < b.span.start; });
    return out;
}

}  // namespace tkb
