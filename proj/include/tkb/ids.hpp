#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace tkb {

// Strongly typed opaque identifier. The wrapped string is what appears in
// files and on the wire; the tag only keeps a term id from being passed
// where a concept id is expected.
template <class Tag>
class Id {
public:
    Id() = default;
    explicit Id(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const Id&, const Id&) = default;
    friend bool operator==(const Id&, const Id&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value_; }

private:
    std::string value_;
};

struct TermTag { static constexpr std::string_view prefix = "t"; };
struct ConceptTag { static constexpr std::string_view prefix = "c"; };
struct ViewpointTag { static constexpr std::string_view prefix = "v"; };
struct LinkTag { static constexpr std::string_view prefix = "l"; };
struct DocumentTag { static constexpr std::string_view prefix = "d"; };
struct UnitTag { static constexpr std::string_view prefix = "u"; };

using TermId = Id<TermTag>;
using ConceptId = Id<ConceptTag>;
using ViewpointId = Id<ViewpointTag>;
using LinkId = Id<LinkTag>;
using DocumentId = Id<DocumentTag>;
using UnitId = Id<UnitTag>;

}  // namespace tkb

template <class Tag>
struct std::hash<tkb::Id<Tag>> {
    std::size_t operator()(const tkb::Id<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
