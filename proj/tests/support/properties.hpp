#pragma once
// Randomized and exhaustive property checks shared by the unit tests (small
// budgets) and the acceptance runner (full budgets).

#include <cstdint>
#include <string>

namespace tkb::testing {

struct PropertyResult {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string first_failure;

    void fail(std::string what) {
        if (violations++ == 0) first_failure = std::move(what);
    }
    bool ok() const { return violations == 0; }
};

// Random link/delete sequences; every state keeps one concept per
// (term, viewpoint) and every rejection is a real conflict.
PropertyResult check_viewpoint_functionality(std::uint32_t seed, std::size_t sequences, std::size_t max_ops);

// effective_frame against the oracle on every labelled DAG of up to
// `max_exhaustive` nodes (two attribute keys), then on random DAGs.
PropertyResult check_inheritance_exhaustive(std::size_t max_nodes);
PropertyResult check_inheritance_random(std::uint32_t seed, std::size_t dags, std::size_t max_nodes);

// Random edge insertions; accepted graphs stay acyclic, rejections are cycles.
PropertyResult check_acyclicity(std::uint32_t seed, std::size_t sequences, std::size_t max_nodes);

PropertyResult check_segmentation(std::uint32_t seed, std::size_t documents);
PropertyResult check_occurrence_index(std::uint32_t seed, std::size_t bases);
PropertyResult check_context_windows(std::uint32_t seed, std::size_t bases);

// Save/load round trip with query-by-query comparison and byte determinism.
PropertyResult check_persistence(std::uint32_t seed, std::size_t bases);

// meanings/designators inverse, synonymy symmetric and matching a flat scan.
PropertyResult check_lexical_relations(std::uint32_t seed, std::size_t bases);

}  // namespace tkb::testing
