#include "properties.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tkb/error.hpp"
#include "tkb/json.hpp"
#include "tkb/store.hpp"

namespace tkb::testing {

namespace {

std::size_t below(std::mt19937& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

TermSpec plain_term(std::size_t i) {
    TermSpec spec;
    spec.surface = "terme " + std::to_string(i);
    spec.language = "fr";
    spec.source = TermSource::interview;
    return spec;
}

void check_designation_invariants(const KnowledgeBase& kb, PropertyResult& r, const std::string& where) {
    const auto& t = kb.tables();
    for (const auto& [tid, term] : t.terms)
        for (const auto& [vid, vp] : t.viewpoints)
            if (designated_by_scan(kb, tid, vid).size() > 1)
                return r.fail(where + ": " + tid.str() + " designates several concepts under " + vid.str());
    std::set<std::pair<TermId, ConceptId>> pairs;
    for (const auto& [lid, l] : t.links)
        if (!pairs.emplace(l.term_id, l.concept_id).second) return r.fail(where + ": duplicate link " + lid.str());
    if (auto v = find_integrity_violation(t)) r.fail(where + ": integrity " + v->rule + " " + v->message);
}

}  // namespace

PropertyResult check_viewpoint_functionality(std::uint32_t seed, std::size_t sequences, std::size_t max_ops) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t s = 0; s < sequences; ++s) {
        KnowledgeBase kb;
        std::vector<TermId> terms;
        std::vector<ConceptId> concepts;
        std::vector<ViewpointId> viewpoints;
        std::size_t made = 0;
        for (std::size_t i = 0, n = 2 + below(rng, 5); i < n; ++i) terms.push_back(kb.create_term(plain_term(made++)));
        for (std::size_t i = 0, n = 2 + below(rng, 4); i < n; ++i)
            concepts.push_back(kb.create_concept(terms[below(rng, terms.size())], ""));
        std::size_t vp_names = 0;
        for (std::size_t i = 0, n = 1 + below(rng, 3); i < n; ++i)
            viewpoints.push_back(kb.create_viewpoint("vp" + std::to_string(vp_names++)));

        const std::size_t ops = 1 + below(rng, max_ops);
        for (std::size_t op = 0; op < ops; ++op) {
            ++result.cases;
            const std::string where = "seq " + std::to_string(s) + " op " + std::to_string(op);
            const auto roll = below(rng, 100);
            if (roll < 65) {
                const auto t = terms[below(rng, terms.size())];
                const auto c = concepts[below(rng, concepts.size())];
                const auto v = viewpoints[below(rng, viewpoints.size())];
                auto designated = designated_by_scan(kb, t, v);
                designated.erase(c);
                const bool conflict = !designated.empty();
                const auto before = kb;
                try {
                    kb.link(t, c, v);
                    if (conflict) result.fail(where + ": conflicting link accepted");
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::ViewpointConflict)
                        result.fail(where + ": unexpected " + std::string(e.what()));
                    else if (!conflict)
                        result.fail(where + ": rejected a link with no conflict");
                    else if (e.entities().empty() || e.entities().front() != designated.begin()->str())
                        result.fail(where + ": conflict names the wrong concept");
                    if (!(kb == before)) result.fail(where + ": rejected link changed the base");
                }
            } else if (roll < 85) {
                if (kb.tables().links.empty()) continue;
                const auto& [lid, l] = *std::next(kb.tables().links.begin(), below(rng, kb.tables().links.size()));
                kb.delete_entity(LinkId(lid).str());
            } else if (roll < 93) {
                const auto i = below(rng, viewpoints.size());
                kb.delete_entity(viewpoints[i].str());
                viewpoints[i] = kb.create_viewpoint("vp" + std::to_string(vp_names++));
            } else {
                const auto i = below(rng, concepts.size());
                kb.delete_entity(concepts[i].str());
                concepts[i] = kb.create_concept(terms[below(rng, terms.size())], "");
            }
            check_designation_invariants(kb, result, where);
        }
    }
    return result;
}

namespace {

// Builds concepts for `n` nodes; node k gets the id at position ids_order[k]
// of creation. parents[k] lists node indices.
KnowledgeBase build_dag(std::size_t n, const std::vector<std::size_t>& ids_order,
                        const std::vector<std::vector<std::size_t>>& parents,
                        const std::vector<std::map<std::string, std::string>>& attrs,
                        const std::vector<bool>& shared_relation, std::vector<ConceptId>& node_ids) {
    KnowledgeBase kb;
    std::vector<ConceptId> created;
    for (std::size_t i = 0; i < n; ++i) created.push_back(kb.create_concept(kb.create_term(plain_term(i)), ""));
    node_ids.assign(n, ConceptId{});
    for (std::size_t k = 0; k < n; ++k) node_ids[k] = created[ids_order[k]];
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [key, value] : attrs[k]) kb.set_attribute(node_ids[k], key, value);
        for (auto p : parents[k]) kb.add_parent(node_ids[k], node_ids[p]);
        if (shared_relation[k]) kb.add_assertional_relation(node_ids[k], "r", node_ids[0], "relation commune");
    }
    return kb;
}

void compare_all_frames(const KnowledgeBase& kb, PropertyResult& r, const std::string& where) {
    for (const auto& [id, c] : kb.tables().concepts) {
        ++r.cases;
        const auto msg = frame_mismatch(kb, id, effective_frame(kb, id));
        if (!msg.empty()) return r.fail(where + " at " + id.str() + ": " + msg);
    }
}

}  // namespace

PropertyResult check_inheritance_exhaustive(std::size_t max_nodes) {
    PropertyResult result;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;  // (child, parent), parent < child
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t p = 0; p < c; ++p) slots.emplace_back(c, p);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});

        for (std::uint64_t shape = 0; shape < (std::uint64_t{1} << slots.size()); ++shape) {
            std::vector<std::vector<std::size_t>> parents(n);
            for (std::size_t b = 0; b < slots.size(); ++b)
                if (shape >> b & 1) parents[slots[b].first].push_back(slots[b].second);
            // vary which ids the nodes receive so tie-breaks do not follow topology
            std::next_permutation(perm.begin(), perm.end());

            const std::uint64_t masks = std::uint64_t{1} << n;
            // all assignments of two keys on small graphs; a spread of them on the largest
            const bool all = n < max_nodes;
            for (std::uint64_t a = 0; a < masks; ++a) {
                const std::uint64_t b_first = all ? 0 : (a * 7 + 3) % masks;
                const std::uint64_t b_last = all ? masks : b_first + 1;
                for (std::uint64_t b = b_first; b < b_last; ++b) {
                    std::vector<std::map<std::string, std::string>> attrs(n);
                    std::vector<bool> shared(n);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (a >> k & 1) attrs[k]["a"] = "a@" + std::to_string(k);
                        if (b >> k & 1) attrs[k]["b"] = "b@" + std::to_string(k);
                        shared[k] = (a ^ b) >> k & 1;
                    }
                    std::vector<ConceptId> ids;
                    const auto kb = build_dag(n, perm, parents, attrs, shared, ids);
                    compare_all_frames(kb, result, "n=" + std::to_string(n) + " shape=" + std::to_string(shape));
                }
            }
        }
    }
    return result;
}

PropertyResult check_inheritance_random(std::uint32_t seed, std::size_t dags, std::size_t max_nodes) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t d = 0; d < dags; ++d) {
        const std::size_t n = 1 + below(rng, max_nodes);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        const double p = std::min(1.0, 2.5 / static_cast<double>(n));
        std::vector<std::vector<std::size_t>> parents(n);
        std::vector<std::map<std::string, std::string>> attrs(n);
        std::vector<bool> shared(n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t q = 0; q < k; ++q)
                if (chance(rng, p)) parents[k].push_back(q);
            for (const char* key : {"a", "b", "c", "d"})
                if (chance(rng, 0.2)) attrs[k][key] = std::string(key) + "@" + std::to_string(below(rng, 4));
            shared[k] = chance(rng, 0.2);
        }
        std::vector<ConceptId> ids;
        const auto kb = build_dag(n, order, parents, attrs, shared, ids);
        compare_all_frames(kb, result, "dag " + std::to_string(d));
    }
    return result;
}

PropertyResult check_acyclicity(std::uint32_t seed, std::size_t sequences, std::size_t max_nodes) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t s = 0; s < sequences; ++s) {
        KnowledgeBase kb;
        const std::size_t n = 2 + below(rng, max_nodes - 1);
        std::vector<ConceptId> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(kb.create_concept(kb.create_term(plain_term(i)), ""));
        for (std::size_t attempt = 0; attempt < 3 * n; ++attempt) {
            ++result.cases;
            const auto child = ids[below(rng, n)], parent = ids[below(rng, n)];
            auto probe = kb.tables();
            probe.concepts.at(child).parents.insert(parent);
            const bool cycle = has_cycle(probe);
            const std::string where = "seq " + std::to_string(s) + " " + child.str() + "->" + parent.str();
            try {
                kb.add_parent(child, parent);
                if (cycle) result.fail(where + ": accepted a cycle");
            } catch (const Error& e) {
                if (e.code() != ErrorCode::CycleWouldForm) result.fail(where + ": unexpected " + e.what());
                if (!cycle) result.fail(where + ": rejected an acyclic edge");
            }
            if (has_cycle(kb.tables())) result.fail(where + ": stored graph has a cycle");
        }
    }
    return result;
}

PropertyResult check_segmentation(std::uint32_t seed, std::size_t documents) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t d = 0; d < documents; ++d) {
        ++result.cases;
        const auto text = random_text(rng, 1 + below(rng, 80));
        const auto units = segment(text);
        if (join_units(units) != text) result.fail("document " + std::to_string(d) + " does not reconstruct");
        for (const auto& u : units)
            if (text::normalize(u).empty()) result.fail("document " + std::to_string(d) + " has a blank unit");
        KnowledgeBase kb;
        const auto id = ingest_document(kb, "d", "", text);
        if (document_text(kb, id) != text) result.fail("document " + std::to_string(d) + " stored text differs");
        if (kb.find_document(id)->units.size() != units.size()) result.fail("unit count differs");
    }
    return result;
}

PropertyResult check_occurrence_index(std::uint32_t seed, std::size_t bases) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t b = 0; b < bases; ++b) {
        const auto kb = random_kb(rng);
        for (const auto& [tid, t] : kb.tables().terms) {
            ++result.cases;
            if (index_occurrences(kb, tid) != naive_occurrences(kb, tid))
                result.fail("base " + std::to_string(b) + " term '" + t.surface + "'");
        }
    }
    return result;
}

PropertyResult check_context_windows(std::uint32_t seed, std::size_t bases) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t b = 0; b < bases; ++b) {
        const auto kb = random_kb(rng);
        for (const auto& [lid, l] : kb.tables().links) {
            for (std::size_t window : {0u, 1u, 3u, 12u, 10000u}) {
                const auto got = contexts_of(kb, lid, window);
                if (got.size() != l.usages.size()) {
                    result.fail("context count differs for " + lid.str());
                    continue;
                }
                std::size_t i = 0;
                for (const auto& usage : l.usages) {
                    ++result.cases;
                    const auto chars = text::decode(kb.find_unit(usage.unit)->content);
                    const auto s = usage.span.start, e = usage.span.end;
                    const auto from = s >= window ? s - window : 0;
                    const auto to = std::min(chars.size(), e + window);
                    const auto& c = got[i++];
                    if (c.left != text::encode(chars.substr(from, s - from)) ||
                        c.match != text::encode(chars.substr(s, e - s)) ||
                        c.right != text::encode(chars.substr(e, to - e)) || c.unit != usage.unit)
                        result.fail("window " + std::to_string(window) + " on " + lid.str());
                }
            }
        }
    }
    return result;
}

namespace {

std::string queries_fingerprint(const KnowledgeBase& kb) {
    Json j;
    for (const auto& [tid, t] : kb.tables().terms) {
        j["meanings"][tid.str()] = meanings(kb, tid);
        j["occurrences"][tid.str()] = index_occurrences(kb, tid);
        j["grammar"][tid.str()] = grammatical_relations(kb, tid);
        for (const auto& [vid, v] : kb.tables().viewpoints) j["synonyms"][tid.str()][vid.str()] = synonyms(kb, tid, vid);
    }
    for (const auto& [cid, c] : kb.tables().concepts) {
        j["frames"][cid.str()] = effective_frame(kb, cid);
        j["designators"][cid.str()] = designators(kb, cid);
    }
    for (const auto& [lid, l] : kb.tables().links) j["contexts"][lid.str()] = contexts_of(kb, lid, 20);
    j["diagnostics"] = check_consistency(kb);
    j["graph"] = store::export_graph(kb, store::GraphMode::full);
    return j.dump();
}

}  // namespace

PropertyResult check_persistence(std::uint32_t seed, std::size_t bases) {
    PropertyResult result;
    std::mt19937 rng(seed), twin(seed);
    for (std::size_t b = 0; b < bases; ++b) {
        ++result.cases;
        const auto kb = random_kb(rng);
        const auto bytes = store::serialize(kb);
        const auto where = "base " + std::to_string(b);
        if (store::serialize(random_kb(twin)) != bytes) result.fail(where + ": identical builds serialize differently");
        try {
            const auto loaded = store::parse(bytes);
            if (!(loaded == kb)) result.fail(where + ": loaded tables differ");
            if (store::serialize(loaded) != bytes) result.fail(where + ": re-serialization differs");
            if (queries_fingerprint(loaded) != queries_fingerprint(kb)) result.fail(where + ": query answers differ");
        } catch (const Error& e) {
            result.fail(where + ": load failed: " + e.what());
        }
    }
    return result;
}

PropertyResult check_lexical_relations(std::uint32_t seed, std::size_t bases) {
    PropertyResult result;
    std::mt19937 rng(seed);
    for (std::size_t b = 0; b < bases; ++b) {
        const auto kb = random_kb(rng);
        const auto& t = kb.tables();
        const auto where = "base " + std::to_string(b);
        std::set<std::tuple<TermId, ViewpointId, ConceptId>> from_meanings, from_designators, from_scan;
        for (const auto& [tid, term] : t.terms)
            for (const auto& m : meanings(kb, tid)) from_meanings.emplace(tid, m.viewpoint, m.concept_id);
        for (const auto& [cid, c] : t.concepts)
            for (const auto& d : designators(kb, cid))
                for (const auto& v : d.viewpoints) from_designators.emplace(d.term, v, cid);
        for (const auto& [lid, l] : t.links)
            for (const auto& v : l.viewpoints) from_scan.emplace(l.term_id, v, l.concept_id);
        ++result.cases;
        if (from_meanings != from_designators) result.fail(where + ": meanings and designators disagree");
        if (from_meanings != from_scan) result.fail(where + ": meanings disagree with the link table");

        for (const auto& [tid, term] : t.terms) {
            for (const auto& [vid, vp] : t.viewpoints) {
                ++result.cases;
                const auto got = synonyms(kb, tid, vid);
                std::set<TermId> want;
                for (const auto& c : designated_by_scan(kb, tid, vid))
                    for (const auto& [lid, l] : t.links)
                        if (l.concept_id == c && l.viewpoints.contains(vid) && l.term_id != tid) want.insert(l.term_id);
                if (got != want) result.fail(where + ": synonyms of " + tid.str() + " differ from the scan");
                for (const auto& other : got)
                    if (!synonyms(kb, other, vid).contains(tid)) result.fail(where + ": synonymy not symmetric");
            }
        }
    }
    return result;
}

}  // namespace tkb::testing
