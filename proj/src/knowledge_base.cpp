#include "tkb/knowledge_base.hpp"

#include <algorithm>
#include <charconv>

namespace tkb {

namespace {

std::pair<std::string, std::string> surface_key(std::string_view surface, std::string_view language) {
    return {text::normalize(surface), text::normalize(language)};
}

// Numeric suffix of an id with the given prefix ("c12" -> 12).
std::optional<std::uint64_t> id_number(std::string_view id, std::string_view prefix) {
    if (id.size() <= prefix.size() || id.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::uint64_t n = 0;
    const char* first = id.data() + prefix.size();
    const char* last = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return n;
}

}  // namespace

std::vector<text::Form> forms_of(const Term& term) {
    std::vector<text::Form> forms;
    forms.push_back({text::normalize32(term.surface), term.surface});
    for (const auto& variant : term.form_variants) forms.push_back({text::normalize32(variant), variant});
    return forms;
}

std::string_view to_string(EntityKind k) noexcept {
    switch (k) {
        case EntityKind::term: return "term";
        case EntityKind::concept_: return "concept";
        case EntityKind::viewpoint: return "viewpoint";
        case EntityKind::link: return "link";
        case EntityKind::document: return "document";
        case EntityKind::unit: return "unit";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Integrity validation

std::optional<IntegrityViolation> find_integrity_violation(const Tables& t) {
    using V = IntegrityViolation;

    std::map<std::string, int> seen;
    auto note_ids = [&](const auto& table) {
        for (const auto& [id, rec] : table) ++seen[id.str()];
    };
    note_ids(t.terms), note_ids(t.concepts), note_ids(t.viewpoints);
    note_ids(t.links), note_ids(t.documents), note_ids(t.units);
    for (const auto& [id, count] : seen) {
        if (count > 1) return V{"DuplicateId", {id}, "id used by more than one record: " + id};
        if (id.empty()) return V{"DuplicateId", {"<empty>"}, "empty id"};
    }
    auto keyed = [](const auto& table) -> std::optional<std::string> {
        for (const auto& [id, rec] : table)
            if (!(rec.id == id)) return id.str();
        return std::nullopt;
    };
    for (auto bad : {keyed(t.terms), keyed(t.concepts), keyed(t.viewpoints), keyed(t.links),
                     keyed(t.documents), keyed(t.units)}) {
        if (bad) return V{"IdMismatch", {*bad}, "record stored under a different id: " + *bad};
    }

    std::map<std::pair<std::string, std::string>, TermId> surfaces;
    for (const auto& [id, term] : t.terms) {
        if (text::normalize(term.surface).empty())
            return V{"EmptySurface", {id.str()}, "term with empty surface"};
        auto [it, fresh] = surfaces.emplace(surface_key(term.surface, term.language), id);
        if (!fresh)
            return V{"DuplicateSurface", {it->second.str(), id.str()},
                     "surface '" + term.surface + "' defined twice for language '" + term.language + "'"};
    }

    std::map<std::string, ViewpointId> names;
    for (const auto& [id, vp] : t.viewpoints) {
        auto [it, fresh] = names.emplace(text::normalize(vp.name), id);
        if (text::normalize(vp.name).empty())
            return V{"EmptyName", {id.str()}, "viewpoint with empty name"};
        if (!fresh)
            return V{"DuplicateName", {it->second.str(), id.str()}, "viewpoint name '" + vp.name + "' defined twice"};
    }

    auto dangling = [](const std::string& owner, const std::string& missing) {
        return V{"DanglingReference", {owner, missing}, owner + " references missing " + missing};
    };
    for (const auto& [id, term] : t.terms) {
        for (const auto& part : term.decomposition) {
            if (!t.terms.contains(part.term)) return dangling(id.str(), part.term.str());
            if (part.term == id)
                return V{"SelfDecomposition", {id.str()}, "term decomposes into itself"};
        }
    }
    for (const auto& [id, c] : t.concepts) {
        if (!t.terms.contains(c.label)) return dangling(id.str(), c.label.str());
        for (const auto& p : c.parents)
            if (!t.concepts.contains(p)) return dangling(id.str(), p.str());
        for (const auto& r : c.relations) {
            if (!t.concepts.contains(r.target)) return dangling(id.str(), r.target.str());
            if (text::normalize(r.type).empty())
                return V{"EmptyRelationType", {id.str()}, "assertional relation without a type"};
        }
        for (const auto& [key, value] : c.attributes)
            if (text::normalize(key).empty())
                return V{"EmptyAttributeKey", {id.str()}, "attribute with an empty key"};
    }
    for (const auto& [id, link] : t.links) {
        if (!t.terms.contains(link.term_id)) return dangling(id.str(), link.term_id.str());
        if (!t.concepts.contains(link.concept_id)) return dangling(id.str(), link.concept_id.str());
        for (const auto& vp : link.viewpoints)
            if (!t.viewpoints.contains(vp)) return dangling(id.str(), vp.str());
        for (const auto& u : link.usages)
            if (!t.units.contains(u.unit)) return dangling(id.str(), u.unit.str());
    }
    for (const auto& [id, unit] : t.units)
        if (!t.documents.contains(unit.document)) return dangling(id.str(), unit.document.str());
    for (const auto& [id, doc] : t.documents)
        for (const auto& u : doc.units)
            if (!t.units.contains(u)) return dangling(id.str(), u.str());

    // Units: each belongs to exactly the document listing it, ordinals 0..n-1.
    std::map<UnitId, int> listed;
    for (const auto& [id, doc] : t.documents) {
        if (doc.units.empty()) return V{"UnitOrdinals", {id.str()}, "document without units"};
        for (std::size_t i = 0; i < doc.units.size(); ++i) {
            const auto& unit = t.units.at(doc.units[i]);
            if (unit.document != id || unit.ordinal != i)
                return V{"UnitOrdinals", {id.str(), unit.id.str()},
                         "unit " + unit.id.str() + " is not at ordinal " + std::to_string(i) + " of " + id.str()};
            ++listed[unit.id];
        }
    }
    for (const auto& [id, unit] : t.units)
        if (listed[id] != 1)
            return V{"UnitOrdinals", {unit.document.str(), id.str()}, "unit not listed exactly once by its document"};

    std::map<std::pair<TermId, ConceptId>, LinkId> pairs;
    std::map<std::pair<TermId, ViewpointId>, LinkId> designation;
    for (const auto& [id, link] : t.links) {
        if (link.viewpoints.empty()) return V{"EmptyViewpointSet", {id.str()}, "link without viewpoint"};
        auto [pit, fresh] = pairs.emplace(std::pair{link.term_id, link.concept_id}, id);
        if (!fresh)
            return V{"DuplicateLink", {pit->second.str(), id.str()},
                     "two links join " + link.term_id.str() + " and " + link.concept_id.str()};
        for (const auto& vp : link.viewpoints) {
            auto [dit, first] = designation.emplace(std::pair{link.term_id, vp}, id);
            if (!first)
                return V{"ViewpointConflict",
                         {link.term_id.str(), vp.str(), t.links.at(dit->second).concept_id.str(), link.concept_id.str()},
                         "term " + link.term_id.str() + " designates two concepts under " + vp.str()};
        }
    }

    // est-un acyclicity, iterative DFS with colouring.
    enum Colour { white, grey, black };
    std::map<ConceptId, Colour> colour;
    for (const auto& [root, c] : t.concepts) {
        if (colour[root] != white) continue;
        std::vector<std::pair<ConceptId, std::vector<ConceptId>>> stack;
        auto push = [&](const ConceptId& id) {
            colour[id] = grey;
            const auto& ps = t.concepts.at(id).parents;
            stack.emplace_back(id, std::vector<ConceptId>(ps.rbegin(), ps.rend()));
        };
        push(root);
        while (!stack.empty()) {
            auto& [node, pending] = stack.back();
            if (pending.empty()) {
                colour[node] = black;
                stack.pop_back();
                continue;
            }
            ConceptId next = pending.back();
            pending.pop_back();
            if (colour[next] == grey) {
                std::vector<std::string> members;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == next; });
                for (; it != stack.end(); ++it) members.push_back(it->first.str());
                std::sort(members.begin(), members.end());
                return V{"Cycle", members, "est-un cycle through " + next.str()};
            }
            if (colour[next] == white) push(next);
        }
    }

    for (const auto& [id, link] : t.links) {
        for (const auto& u : link.usages) {
            const auto len = text::length(t.units.at(u.unit).content);
            if (u.span.start >= u.span.end || u.span.end > len)
                return V{"SpanOutOfBounds", {id.str(), u.unit.str()}, "usage span outside unit " + u.unit.str()};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Construction

KnowledgeBase KnowledgeBase::from_tables(Tables tables) {
    if (auto v = find_integrity_violation(tables))
        throw Error(ErrorCode::IntegrityError, v->message, v->entities, v->rule);
    return from_tables_unchecked(std::move(tables));
}

KnowledgeBase KnowledgeBase::from_tables_unchecked(Tables tables) {
    KnowledgeBase kb;
    kb.tables_ = std::move(tables);
    kb.rebuild_indices();
    auto bump = [&kb](const auto& table, std::string_view prefix) {
        auto& counter = kb.counters_[std::string(prefix)];
        for (const auto& [id, rec] : table)
            if (auto n = id_number(id.str(), prefix)) counter = std::max(counter, *n);
    };
    bump(kb.tables_.terms, TermTag::prefix);
    bump(kb.tables_.concepts, ConceptTag::prefix);
    bump(kb.tables_.viewpoints, ViewpointTag::prefix);
    bump(kb.tables_.links, LinkTag::prefix);
    bump(kb.tables_.documents, DocumentTag::prefix);
    bump(kb.tables_.units, UnitTag::prefix);
    return kb;
}

void KnowledgeBase::rebuild_indices() {
    surface_index_.clear();
    viewpoint_names_.clear();
    designation_.clear();
    pair_links_.clear();
    links_by_term_.clear();
    links_by_concept_.clear();
    for (const auto& [id, term] : tables_.terms) surface_index_.emplace(surface_key(term.surface, term.language), id);
    for (const auto& [id, vp] : tables_.viewpoints) viewpoint_names_.emplace(text::normalize(vp.name), id);
    for (const auto& [id, link] : tables_.links) index_link(link);
}

void KnowledgeBase::index_link(const TermConceptLink& link) {
    pair_links_.emplace(std::pair{link.term_id, link.concept_id}, link.id);
    for (const auto& vp : link.viewpoints) designation_.emplace(std::pair{link.term_id, vp}, link.id);
    links_by_term_[link.term_id].insert(link.id);
    links_by_concept_[link.concept_id].insert(link.id);
}

std::string KnowledgeBase::next_id(std::string_view prefix) {
    auto& counter = counters_[std::string(prefix)];
    std::string id;
    do {
        id = std::string(prefix) + std::to_string(++counter);
    } while (kind_of(id));
    return id;
}

// ---------------------------------------------------------------------------
// Lookups

namespace {

template <class Map, class Key>
auto* lookup(const Map& map, const Key& key) {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
}

}  // namespace

const Term* KnowledgeBase::find_term(const TermId& id) const { return lookup(tables_.terms, id); }
const Concept* KnowledgeBase::find_concept(const ConceptId& id) const { return lookup(tables_.concepts, id); }
const Viewpoint* KnowledgeBase::find_viewpoint(const ViewpointId& id) const { return lookup(tables_.viewpoints, id); }
const TermConceptLink* KnowledgeBase::find_link(const LinkId& id) const { return lookup(tables_.links, id); }
const Document* KnowledgeBase::find_document(const DocumentId& id) const { return lookup(tables_.documents, id); }
const TextUnit* KnowledgeBase::find_unit(const UnitId& id) const { return lookup(tables_.units, id); }

std::optional<TermId> KnowledgeBase::find_term_by_surface(std::string_view surface,
                                                          std::string_view language) const {
    auto it = surface_index_.find(surface_key(surface, language));
    if (it == surface_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<TermId> KnowledgeBase::find_terms_by_surface(std::string_view surface) const {
    const auto key = text::normalize(surface);
    std::vector<TermId> out;
    for (auto it = surface_index_.lower_bound({key, std::string{}});
         it != surface_index_.end() && it->first.first == key; ++it)
        out.push_back(it->second);
    return out;
}

std::optional<ViewpointId> KnowledgeBase::find_viewpoint_by_name(std::string_view name) const {
    auto it = viewpoint_names_.find(text::normalize(name));
    if (it == viewpoint_names_.end()) return std::nullopt;
    return it->second;
}

std::optional<EntityKind> KnowledgeBase::kind_of(std::string_view id) const {
    const std::string key(id);
    if (tables_.terms.contains(TermId(key))) return EntityKind::term;
    if (tables_.concepts.contains(ConceptId(key))) return EntityKind::concept_;
    if (tables_.viewpoints.contains(ViewpointId(key))) return EntityKind::viewpoint;
    if (tables_.links.contains(LinkId(key))) return EntityKind::link;
    if (tables_.documents.contains(DocumentId(key))) return EntityKind::document;
    if (tables_.units.contains(UnitId(key))) return EntityKind::unit;
    return std::nullopt;
}

std::vector<LinkId> KnowledgeBase::links_of_term(const TermId& term) const {
    auto it = links_by_term_.find(term);
    if (it == links_by_term_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::vector<LinkId> KnowledgeBase::links_of_concept(const ConceptId& concept_id) const {
    auto it = links_by_concept_.find(concept_id);
    if (it == links_by_concept_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::optional<LinkId> KnowledgeBase::find_link(const TermId& term, const ConceptId& concept_id) const {
    auto it = pair_links_.find({term, concept_id});
    if (it == pair_links_.end()) return std::nullopt;
    return it->second;
}

std::string KnowledgeBase::display_name(std::string_view id) const {
    const std::string key(id);
    if (auto* t = find_term(TermId(key))) return t->surface;
    if (auto* c = find_concept(ConceptId(key))) {
        if (auto* label = find_term(c->label)) return label->surface;
        return key;
    }
    if (auto* v = find_viewpoint(ViewpointId(key))) return v->name;
    if (auto* d = find_document(DocumentId(key))) return d->title;
    return key;
}

bool KnowledgeBase::reaches(const ConceptId& from, const ConceptId& to) const {
    std::set<ConceptId> seen{from};
    std::vector<ConceptId> stack{from};
    while (!stack.empty()) {
        ConceptId cur = stack.back();
        stack.pop_back();
        if (cur == to) return true;
        auto* c = find_concept(cur);
        if (!c) continue;
        for (const auto& p : c->parents)
            if (seen.insert(p).second) stack.push_back(p);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Mutations

TermId KnowledgeBase::create_term(const TermSpec& spec) {
    Term term;
    term.surface = text::tidy(spec.surface);
    if (term.surface.empty()) throw Error(ErrorCode::EmptySurface, "term surface is empty after normalization");
    term.language = text::tidy(spec.language);
    if (auto existing = find_term_by_surface(term.surface, term.language))
        throw Error(ErrorCode::DuplicateSurface,
                    "term '" + term.surface + "' already exists for language '" + term.language + "'",
                    {existing->str()});
    for (const auto& part : spec.decomposition)
        if (!find_term(part.term))
            throw Error(ErrorCode::UnknownTerm, "decomposition references unknown term " + part.term.str(),
                        {part.term.str()});
    for (const auto& v : spec.form_variants) {
        auto tidy = text::tidy(v);
        if (!tidy.empty()) term.form_variants.insert(std::move(tidy));
    }
    term.grammatical_category = text::tidy(spec.grammatical_category);
    term.gender = spec.gender;
    term.number = spec.number;
    term.decomposition = spec.decomposition;
    term.source = spec.source;
    term.id = TermId(next_id(TermTag::prefix));

    surface_index_.emplace(surface_key(term.surface, term.language), term.id);
    auto id = term.id;
    tables_.terms.emplace(id, std::move(term));
    return id;
}

ViewpointId KnowledgeBase::create_viewpoint(std::string_view name, std::optional<std::string> description) {
    auto tidy = text::tidy(name);
    if (tidy.empty()) throw Error(ErrorCode::InvalidArgument, "viewpoint name is empty");
    if (auto existing = find_viewpoint_by_name(tidy))
        throw Error(ErrorCode::DuplicateName, "viewpoint '" + tidy + "' already exists", {existing->str()});
    Viewpoint vp{ViewpointId(next_id(ViewpointTag::prefix)), std::move(tidy), std::move(description)};
    viewpoint_names_.emplace(text::normalize(vp.name), vp.id);
    auto id = vp.id;
    tables_.viewpoints.emplace(id, std::move(vp));
    return id;
}

ConceptId KnowledgeBase::create_concept(const TermId& label, std::string description,
                                        std::map<std::string, std::string> attributes,
                                        std::set<ConceptId> parents) {
    if (!find_term(label)) throw Error(ErrorCode::UnknownTerm, "unknown label term " + label.str(), {label.str()});
    for (const auto& p : parents)
        if (!find_concept(p)) throw Error(ErrorCode::UnknownParent, "unknown parent concept " + p.str(), {p.str()});
    std::map<std::string, std::string> attrs;
    for (auto& [key, value] : attributes) {
        auto k = text::tidy(key);
        if (k.empty()) throw Error(ErrorCode::InvalidArgument, "attribute key is empty");
        if (!attrs.emplace(k, value).second)
            throw Error(ErrorCode::InvalidArgument, "attribute key '" + k + "' given twice");
    }
    // A fresh node has no children, so no parent set can close a cycle here.
    Concept c;
    c.id = ConceptId(next_id(ConceptTag::prefix));
    c.label = label;
    c.description = std::move(description);
    c.attributes = std::move(attrs);
    c.parents = std::move(parents);
    auto id = c.id;
    tables_.concepts.emplace(id, std::move(c));
    return id;
}

void KnowledgeBase::set_attribute(const ConceptId& concept_id, std::string_view key, std::string value) {
    if (!find_concept(concept_id))
        throw Error(ErrorCode::UnknownConcept, "unknown concept " + concept_id.str(), {concept_id.str()});
    auto k = text::tidy(key);
    if (k.empty()) throw Error(ErrorCode::InvalidArgument, "attribute key is empty");
    tables_.concepts.at(concept_id).attributes[k] = std::move(value);
}

void KnowledgeBase::add_parent(const ConceptId& child, const ConceptId& parent) {
    for (const auto* id : {&child, &parent})
        if (!find_concept(*id)) throw Error(ErrorCode::UnknownConcept, "unknown concept " + id->str(), {id->str()});
    if (tables_.concepts.at(child).parents.contains(parent)) return;
    if (child == parent || reaches(parent, child))
        throw Error(ErrorCode::CycleWouldForm,
                    "'" + display_name(child.str()) + "' est-un '" + display_name(parent.str()) + "' would close a cycle",
                    {child.str(), parent.str()});
    tables_.concepts.at(child).parents.insert(parent);
}

void KnowledgeBase::register_relation_type(std::string_view name, std::string definition) {
    auto tidy = text::tidy(name);
    if (tidy.empty()) throw Error(ErrorCode::InvalidArgument, "relation type name is empty");
    if (definition.empty()) throw Error(ErrorCode::InvalidArgument, "relation type needs a definition");
    auto it = tables_.relation_types.find(tidy);
    if (it != tables_.relation_types.end()) {
        if (it->second.definition == definition) return;
        throw Error(ErrorCode::DuplicateName, "relation type '" + tidy + "' already registered", {tidy});
    }
    tables_.relation_types.emplace(tidy, RelationType{tidy, std::move(definition)});
}

void KnowledgeBase::add_assertional_relation(const ConceptId& source, std::string_view type,
                                             const ConceptId& target, std::string definition) {
    for (const auto* id : {&source, &target})
        if (!find_concept(*id)) throw Error(ErrorCode::UnknownConcept, "unknown concept " + id->str(), {id->str()});
    auto name = text::tidy(type);
    if (name.empty()) throw Error(ErrorCode::InvalidArgument, "relation type is empty");
    if (definition.empty()) {
        auto it = tables_.relation_types.find(name);
        if (it == tables_.relation_types.end())
            throw Error(ErrorCode::UnregisteredTypeWithoutDefinition,
                        "relation type '" + name + "' is not registered and no definition was given", {name});
        definition = it->second.definition;
    }
    AssertionalRelation rel{std::move(name), target, std::move(definition)};
    auto& rels = tables_.concepts.at(source).relations;
    if (std::find(rels.begin(), rels.end(), rel) == rels.end()) rels.push_back(std::move(rel));
}

LinkId KnowledgeBase::link(const TermId& term, const ConceptId& concept_id, const ViewpointId& viewpoint) {
    if (!find_term(term)) throw Error(ErrorCode::UnknownTerm, "unknown term " + term.str(), {term.str()});
    if (!find_concept(concept_id))
        throw Error(ErrorCode::UnknownConcept, "unknown concept " + concept_id.str(), {concept_id.str()});
    if (!find_viewpoint(viewpoint))
        throw Error(ErrorCode::UnknownEntity, "unknown viewpoint " + viewpoint.str(), {viewpoint.str()});

    if (auto it = designation_.find({term, viewpoint}); it != designation_.end()) {
        const auto& existing = tables_.links.at(it->second);
        if (existing.concept_id == concept_id) return existing.id;
        throw Error(ErrorCode::ViewpointConflict,
                    "term '" + display_name(term.str()) + "' already designates '" +
                        display_name(existing.concept_id.str()) + "' (" + existing.concept_id.str() +
                        ") under viewpoint '" + display_name(viewpoint.str()) + "'",
                    {existing.concept_id.str(), existing.id.str()});
    }

    if (auto pair = find_link(term, concept_id)) {
        tables_.links.at(*pair).viewpoints.insert(viewpoint);
        designation_.emplace(std::pair{term, viewpoint}, *pair);
        return *pair;
    }
    TermConceptLink l{LinkId(next_id(LinkTag::prefix)), term, concept_id, {viewpoint}, {}};
    index_link(l);
    auto id = l.id;
    tables_.links.emplace(id, std::move(l));
    return id;
}

std::optional<Diagnostic> KnowledgeBase::add_usage(const LinkId& link, const UnitId& unit, Span span,
                                                   std::optional<SpanPolicy> policy) {
    auto* l = find_link(link);
    if (!l) throw Error(ErrorCode::UnknownEntity, "unknown link " + link.str(), {link.str()});
    auto* u = find_unit(unit);
    if (!u) throw Error(ErrorCode::UnknownEntity, "unknown text unit " + unit.str(), {unit.str()});
    const text::Decoded decoded(u->content);
    if (span.start >= span.end || span.end > decoded.size())
        throw Error(ErrorCode::SpanOutOfBounds,
                    "span [" + std::to_string(span.start) + ", " + std::to_string(span.end) + ") outside unit " +
                        unit.str() + " of length " + std::to_string(decoded.size()),
                    {unit.str()});

    const auto& term = tables_.terms.at(l->term_id);
    const auto forms = forms_of(term);
    const auto matches = text::match_forms(decoded.chars(), forms);
    const bool occurrence =
        std::any_of(matches.begin(), matches.end(), [&](const auto& m) { return m.span == span; });

    std::optional<Diagnostic> warning;
    if (!occurrence) {
        std::string message = "text '" + std::string(decoded.slice(span)) + "' is not an occurrence of '" +
                              term.surface + "' or its variants";
        if (policy.value_or(tables_.span_policy) == SpanPolicy::strict)
            throw Error(ErrorCode::SpanMismatch, message, {link.str(), unit.str()});
        warning = make_diagnostic(Rule::SpanMismatch, {link.str(), unit.str()}, std::move(message));
    }
    tables_.links.at(link).usages.insert(UsageAnchor{unit, span});
    return warning;
}

DocumentId KnowledgeBase::add_document(std::string title, std::string source_note,
                                       const std::vector<std::string>& unit_contents) {
    if (unit_contents.empty()) throw Error(ErrorCode::EmptyDocument, "document has no textual unit");
    Document doc{DocumentId(next_id(DocumentTag::prefix)), std::move(title), std::move(source_note), {}};
    for (std::size_t i = 0; i < unit_contents.size(); ++i) {
        TextUnit unit{UnitId(next_id(UnitTag::prefix)), doc.id, i, unit_contents[i]};
        doc.units.push_back(unit.id);
        tables_.units.emplace(unit.id, std::move(unit));
    }
    auto id = doc.id;
    tables_.documents.emplace(id, std::move(doc));
    return id;
}

void KnowledgeBase::delete_entity(std::string_view raw) {
    const std::string id(raw);
    auto kind = kind_of(id);
    if (!kind) throw Error(ErrorCode::UnknownEntity, "unknown id " + id, {id});

    auto& t = tables_;
    switch (*kind) {
        case EntityKind::term: {
            const TermId term(id);
            for (const auto& [cid, c] : t.concepts)
                if (c.label == term)
                    throw Error(ErrorCode::LabelInUse,
                                "term '" + display_name(id) + "' labels concept " + cid.str(), {cid.str()});
            std::erase_if(t.links, [&](const auto& kv) { return kv.second.term_id == term; });
            for (auto& [tid, other] : t.terms)
                std::erase_if(other.decomposition, [&](const auto& part) { return part.term == term; });
            t.terms.erase(term);
            break;
        }
        case EntityKind::concept_: {
            const ConceptId c(id);
            std::erase_if(t.links, [&](const auto& kv) { return kv.second.concept_id == c; });
            for (auto& [cid, other] : t.concepts) {
                other.parents.erase(c);
                std::erase_if(other.relations, [&](const auto& r) { return r.target == c; });
            }
            t.concepts.erase(c);
            break;
        }
        case EntityKind::viewpoint: {
            const ViewpointId vp(id);
            for (auto& [lid, l] : t.links) l.viewpoints.erase(vp);
            std::erase_if(t.links, [](const auto& kv) { return kv.second.viewpoints.empty(); });
            t.viewpoints.erase(vp);
            break;
        }
        case EntityKind::link:
            t.links.erase(LinkId(id));
            break;
        case EntityKind::document: {
            const DocumentId d(id);
            const auto units = t.documents.at(d).units;
            const std::set<UnitId> doomed(units.begin(), units.end());
            for (auto& [lid, l] : t.links)
                std::erase_if(l.usages, [&](const auto& u) { return doomed.contains(u.unit); });
            for (const auto& u : units) t.units.erase(u);
            t.documents.erase(d);
            break;
        }
        case EntityKind::unit:
            throw Error(ErrorCode::InvalidArgument,
                        "text units are removed with their document (" + t.units.at(UnitId(id)).document.str() + ")",
                        {id});
    }
    rebuild_indices();
}

}  // namespace tkb
