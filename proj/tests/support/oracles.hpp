#pragma once
// Reference implementations used to cross-check the engine. Each one is
// written the slow, obvious way and shares no algorithm with the library.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tkb/corpus.hpp"
#include "tkb/inference.hpp"
#include "tkb/knowledge_base.hpp"

namespace tkb::testing {

// Shortest est-un distances from `c` by repeated edge relaxation.
std::map<ConceptId, std::size_t> relaxed_distances(const KnowledgeBase& kb, const ConceptId& c);

// Empty when the frame matches the oracle, otherwise a description of the
// first difference.
std::string frame_mismatch(const KnowledgeBase& kb, const ConceptId& c, const EffectiveFrame& frame);

// Peels parentless concepts until none remain; true if some never peel.
bool has_cycle(const Tables& tables);

// Leftmost-longest whole-word matches found by trying every (position, form).
std::vector<Occurrence> naive_occurrences(const KnowledgeBase& kb, const TermId& term);

// Every link whose viewpoint set contains `vp`, for `term`; flat scan.
std::set<ConceptId> designated_by_scan(const KnowledgeBase& kb, const TermId& term, const ViewpointId& vp);

// Random text over a small vocabulary so that multiword terms recur.
std::string random_text(std::mt19937& rng, std::size_t words);

// A random knowledge base: terms with variants, viewpoints, a concept DAG with
// attributes and relations, links, a corpus and anchors.
KnowledgeBase random_kb(std::mt19937& rng);

}  // namespace tkb::testing
