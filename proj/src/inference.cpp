#include "tkb/inference.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <tuple>

namespace tkb {

namespace {

const Concept& require_concept(const KnowledgeBase& kb, const ConceptId& id) {
    auto* c = kb.find_concept(id);
    if (!c) throw Error(ErrorCode::UnknownConcept, "unknown concept " + id.str(), {id.str()});
    return *c;
}

const Term& require_term(const KnowledgeBase& kb, const TermId& id) {
    auto* t = kb.find_term(id);
    if (!t) throw Error(ErrorCode::UnknownEntity, "unknown term " + id.str(), {id.str()});
    return *t;
}

}  // namespace

std::map<ConceptId, std::size_t> subsumer_distances(const KnowledgeBase& kb, const ConceptId& concept_id) {
    require_concept(kb, concept_id);
    std::map<ConceptId, std::size_t> dist{{concept_id, 0}};
    std::deque<ConceptId> queue{concept_id};
    while (!queue.empty()) {
        ConceptId cur = queue.front();
        queue.pop_front();
        for (const auto& p : kb.find_concept(cur)->parents) {
            if (!kb.find_concept(p) || dist.contains(p)) continue;
            dist.emplace(p, dist.at(cur) + 1);
            queue.push_back(p);
        }
    }
    return dist;
}

std::vector<ConceptId> subsumers(const KnowledgeBase& kb, const ConceptId& concept_id) {
    const auto dist = subsumer_distances(kb, concept_id);

    // Kahn's algorithm on the closure, edges child -> parent.
    std::map<ConceptId, std::size_t> pending_children;
    for (const auto& [id, d] : dist) pending_children.emplace(id, 0);
    for (const auto& [id, d] : dist)
        for (const auto& p : kb.find_concept(id)->parents)
            if (dist.contains(p)) ++pending_children[p];

    using Key = std::tuple<std::size_t, ConceptId>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (const auto& [id, n] : pending_children)
        if (n == 0) ready.emplace(dist.at(id), id);

    std::vector<ConceptId> order;
    std::set<ConceptId> emitted;
    while (!ready.empty()) {
        auto [d, id] = ready.top();
        ready.pop();
        order.push_back(id);
        emitted.insert(id);
        for (const auto& p : kb.find_concept(id)->parents)
            if (dist.contains(p) && --pending_children[p] == 0) ready.emplace(dist.at(p), p);
    }
    if (order.size() < dist.size()) {
        // Only reachable on unvalidated data containing a cycle.
        std::vector<Key> rest;
        for (const auto& [id, d] : dist)
            if (!emitted.contains(id)) rest.emplace_back(d, id);
        std::sort(rest.begin(), rest.end());
        for (auto& [d, id] : rest) order.push_back(id);
    }
    return order;
}

std::map<std::string, std::string> EffectiveFrame::effective_attributes() const {
    std::map<std::string, std::string> out;
    for (const auto& a : attributes)
        if (!a.shadowed) out.emplace(a.key, a.value);
    return out;
}

EffectiveFrame effective_frame(const KnowledgeBase& kb, const ConceptId& concept_id) {
    require_concept(kb, concept_id);
    EffectiveFrame frame;
    frame.concept_id = concept_id;
    frame.subsumers = subsumers(kb, concept_id);
    const auto dist = subsumer_distances(kb, concept_id);

    // Winner per key: smallest (distance, origin id).
    std::map<std::string, std::pair<std::size_t, ConceptId>> winner;
    for (const auto& s : frame.subsumers) {
        const auto& c = *kb.find_concept(s);
        const auto d = dist.at(s);
        for (const auto& [key, value] : c.attributes) {
            frame.attributes.push_back({key, value, s, d, true});
            auto candidate = std::pair{d, s};
            auto [it, fresh] = winner.emplace(key, candidate);
            if (!fresh && candidate < it->second) it->second = candidate;
        }
    }
    for (auto& a : frame.attributes) {
        const auto& w = winner.at(a.key);
        a.shadowed = !(w.first == a.distance && w.second == a.origin);
    }

    std::set<std::tuple<std::string, ConceptId, std::string>> seen;
    for (const auto& s : frame.subsumers) {
        for (const auto& r : kb.find_concept(s)->relations) {
            if (seen.emplace(r.type, r.target, r.definition).second)
                frame.relations.push_back({r.type, r.target, r.definition, s});
        }
    }
    return frame;
}

std::set<TermId> synonyms(const KnowledgeBase& kb, const TermId& term, const ViewpointId& viewpoint) {
    require_term(kb, term);
    if (!kb.find_viewpoint(viewpoint))
        throw Error(ErrorCode::UnknownEntity, "unknown viewpoint " + viewpoint.str(), {viewpoint.str()});

    std::optional<ConceptId> designated;
    for (const auto& lid : kb.links_of_term(term)) {
        const auto& l = *kb.find_link(lid);
        if (l.viewpoints.contains(viewpoint)) designated = l.concept_id;
    }
    std::set<TermId> out;
    if (!designated) return out;
    for (const auto& lid : kb.links_of_concept(*designated)) {
        const auto& l = *kb.find_link(lid);
        if (l.term_id != term && l.viewpoints.contains(viewpoint)) out.insert(l.term_id);
    }
    return out;
}

std::vector<Meaning> meanings(const KnowledgeBase& kb, const TermId& term) {
    require_term(kb, term);
    std::vector<Meaning> out;
    for (const auto& lid : kb.links_of_term(term)) {
        const auto& l = *kb.find_link(lid);
        for (const auto& vp : l.viewpoints) out.push_back({vp, l.concept_id});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_polysemous(const KnowledgeBase& kb, const TermId& term) {
    std::set<ConceptId> distinct;
    for (const auto& m : meanings(kb, term)) distinct.insert(m.concept_id);
    return distinct.size() > 1;
}

std::vector<Designator> designators(const KnowledgeBase& kb, const ConceptId& concept_id) {
    require_concept(kb, concept_id);
    std::map<TermId, std::set<ViewpointId>> grouped;
    for (const auto& lid : kb.links_of_concept(concept_id)) {
        const auto& l = *kb.find_link(lid);
        grouped[l.term_id].insert(l.viewpoints.begin(), l.viewpoints.end());
    }
    std::vector<Designator> out;
    for (auto& [t, vps] : grouped) out.push_back({t, std::move(vps)});
    return out;
}

std::vector<GrammaticalRelation> grammatical_relations(const KnowledgeBase& kb, const TermId& term) {
    require_term(kb, term);
    std::vector<GrammaticalRelation> out;
    for (const auto& [id, compound] : kb.tables().terms) {
        for (const auto& part : compound.decomposition) {
            if (part.term != term) continue;
            const auto type = part.role == DecompositionRole::head ? kHeadOf : kExpansionOf;
            out.push_back({std::string(type), id});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Consistency checking

namespace {

void check_cycles(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    // Tarjan's strongly connected components over est-un.
    const auto& concepts = kb.tables().concepts;
    std::map<ConceptId, int> index, low;
    std::set<ConceptId> on_stack;
    std::vector<ConceptId> stack;
    int counter = 0;

    std::function<void(const ConceptId&)> visit = [&](const ConceptId& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const auto& p : concepts.at(v).parents) {
            if (!concepts.contains(p)) continue;
            if (!index.contains(p)) {
                visit(p);
                low[v] = std::min(low[v], low[p]);
            } else if (on_stack.contains(p)) {
                low[v] = std::min(low[v], index[p]);
            }
        }
        if (low[v] != index[v]) return;
        std::vector<std::string> members;
        ConceptId w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            members.push_back(w.str());
        } while (!(w == v));
        const bool self_loop = concepts.at(v).parents.contains(v);
        if (members.size() > 1 || self_loop) {
            std::sort(members.begin(), members.end());
            std::string names;
            for (const auto& m : members) names += (names.empty() ? "" : ", ") + kb.display_name(m);
            out.push_back(make_diagnostic(Rule::Cycle, members, "est-un cycle among: " + names));
        }
    };
    for (const auto& [id, c] : concepts)
        if (!index.contains(id)) visit(id);
}

void check_viewpoint_conflicts(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    std::map<std::pair<TermId, ViewpointId>, std::set<ConceptId>> designated;
    for (const auto& [id, l] : kb.tables().links)
        for (const auto& vp : l.viewpoints) designated[{l.term_id, vp}].insert(l.concept_id);
    for (const auto& [key, concepts] : designated) {
        if (concepts.size() < 2) continue;
        std::vector<std::string> entities{key.first.str(), key.second.str()};
        for (const auto& c : concepts) entities.push_back(c.str());
        out.push_back(make_diagnostic(Rule::ViewpointConflict, entities,
                                      "term '" + kb.display_name(key.first.str()) + "' designates " +
                                          std::to_string(concepts.size()) + " concepts under viewpoint '" +
                                          kb.display_name(key.second.str()) + "'"));
    }
}

void check_labels(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    for (const auto& [id, c] : kb.tables().concepts) {
        if (!kb.find_term(c.label)) continue;  // reported as a dangling reference
        if (kb.find_link(c.label, id)) continue;
        out.push_back(make_diagnostic(Rule::LabelNotLinked, {id.str(), c.label.str()},
                                      "label '" + kb.display_name(c.label.str()) +
                                          "' does not designate the concept it labels"));
    }
}

void check_unanchored(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    for (const auto& [id, term] : kb.tables().terms) {
        if (term.source != TermSource::corpus) continue;
        bool anchored = false;
        for (const auto& lid : kb.links_of_term(id)) anchored = anchored || !kb.find_link(lid)->usages.empty();
        if (!anchored)
            out.push_back(make_diagnostic(Rule::UnanchoredCorpusTerm, {id.str()},
                                          "corpus term '" + term.surface + "' has no usage anchored in the corpus"));
    }
}

bool structurally_sound(const std::vector<Diagnostic>& found) {
    return std::none_of(found.begin(), found.end(), [](const Diagnostic& d) { return d.rule == Rule::Cycle; });
}

void check_siblings(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    using Signature = std::pair<std::map<std::string, std::string>,
                                std::set<std::tuple<std::string, ConceptId, std::string>>>;
    const auto& concepts = kb.tables().concepts;

    std::map<ConceptId, Signature> signatures;
    auto signature_of = [&](const ConceptId& id) -> const Signature& {
        auto it = signatures.find(id);
        if (it != signatures.end()) return it->second;
        const auto frame = effective_frame(kb, id);
        Signature sig{frame.effective_attributes(), {}};
        for (const auto& r : frame.relations) sig.second.emplace(r.type, r.target, r.definition);
        return signatures.emplace(id, std::move(sig)).first->second;
    };

    std::map<ConceptId, std::vector<ConceptId>> children;
    for (const auto& [id, c] : concepts)
        for (const auto& p : c.parents)
            if (concepts.contains(p)) children[p].push_back(id);

    std::set<std::vector<std::string>> reported;
    for (const auto& [parent, kids] : children) {
        std::map<Signature, std::vector<std::string>> groups;
        for (const auto& k : kids) groups[signature_of(k)].push_back(k.str());
        for (auto& [sig, members] : groups) {
            if (members.size() < 2) continue;
            std::sort(members.begin(), members.end());
            if (!reported.insert(members).second) continue;
            std::string names;
            for (const auto& m : members) names += (names.empty() ? "" : ", ") + kb.display_name(m);
            out.push_back(make_diagnostic(Rule::UndifferentiatedSiblings, members,
                                          "children of '" + kb.display_name(parent.str()) +
                                              "' share identical attributes and relations: " + names));
        }
    }
}

void check_references(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    const auto& t = kb.tables();
    auto dangling = [&](const std::string& owner, const std::string& missing) {
        out.push_back(make_diagnostic(Rule::DanglingReference, {owner, missing},
                                      owner + " references missing " + missing));
    };
    for (const auto& [id, term] : t.terms)
        for (const auto& part : term.decomposition)
            if (!t.terms.contains(part.term)) dangling(id.str(), part.term.str());
    for (const auto& [id, c] : t.concepts) {
        if (!t.terms.contains(c.label)) dangling(id.str(), c.label.str());
        for (const auto& p : c.parents)
            if (!t.concepts.contains(p)) dangling(id.str(), p.str());
        for (const auto& r : c.relations)
            if (!t.concepts.contains(r.target)) dangling(id.str(), r.target.str());
    }
    for (const auto& [id, l] : t.links) {
        if (!t.terms.contains(l.term_id)) dangling(id.str(), l.term_id.str());
        if (!t.concepts.contains(l.concept_id)) dangling(id.str(), l.concept_id.str());
        for (const auto& vp : l.viewpoints)
            if (!t.viewpoints.contains(vp)) dangling(id.str(), vp.str());
        for (const auto& u : l.usages)
            if (!t.units.contains(u.unit)) dangling(id.str(), u.unit.str());
    }
    for (const auto& [id, u] : t.units)
        if (!t.documents.contains(u.document)) dangling(id.str(), u.document.str());
    for (const auto& [id, d] : t.documents)
        for (const auto& u : d.units)
            if (!t.units.contains(u)) dangling(id.str(), u.str());
}

void check_spans(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    for (const auto& [id, l] : kb.tables().links) {
        const auto* term = kb.find_term(l.term_id);
        if (!term || l.usages.empty()) continue;
        const auto forms = forms_of(*term);
        std::map<UnitId, std::vector<text::FormMatch>> matches;
        for (const auto& usage : l.usages) {
            const auto* unit = kb.find_unit(usage.unit);
            if (!unit) continue;
            const text::Decoded decoded(unit->content);
            std::string message;
            if (usage.span.start >= usage.span.end || usage.span.end > decoded.size()) {
                message = "usage span lies outside unit " + usage.unit.str();
            } else {
                auto [it, fresh] = matches.try_emplace(usage.unit);
                if (fresh) it->second = text::match_forms(decoded.chars(), forms);
                const bool hit = std::any_of(it->second.begin(), it->second.end(),
                                             [&](const auto& m) { return m.span == usage.span; });
                if (hit) continue;
                message = "anchored text '" + std::string(decoded.slice(usage.span)) +
                          "' is not an occurrence of '" + term->surface + "'";
            }
            out.push_back(make_diagnostic(Rule::SpanMismatch, {id.str(), usage.unit.str()}, message));
        }
    }
}

}  // namespace

std::vector<Diagnostic> check_consistency(const KnowledgeBase& kb) {
    std::vector<Diagnostic> out;
    check_cycles(kb, out);
    check_viewpoint_conflicts(kb, out);
    check_labels(kb, out);
    check_unanchored(kb, out);
    if (structurally_sound(out)) check_siblings(kb, out);
    check_references(kb, out);
    check_spans(kb, out);

    std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.rule, a.entities, a.message) < std::tie(b.rule, b.entities, b.message);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t count_errors(const std::vector<Diagnostic>& diagnostics) {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                  [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

}  // namespace tkb
