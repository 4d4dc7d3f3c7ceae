#pragma once

// Unicode-aware text primitives shared by the model and the corpus index.
// Character positions everywhere in the engine are counted in Unicode scalar
// values, never in bytes.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tkb::text {

// Half-open range [start, end) of scalar positions.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    bool contains(const Span& other) const noexcept {
        return start <= other.start && other.end <= end;
    }
    bool overlaps(const Span& other) const noexcept {
        return start < other.end && other.start < end;
    }
    friend auto operator<=>(const Span&, const Span&) = default;
};

// A UTF-8 string decoded to scalar values, keeping the byte offset of every
// scalar so spans can be mapped back onto the original bytes. Malformed
// bytes decode to U+FFFD one byte at a time, so slicing always round-trips.
class Decoded {
public:
    explicit Decoded(std::string_view utf8);

    std::size_t size() const noexcept { return chars_.size(); }
    const std::u32string& chars() const noexcept { return chars_; }

    // Original bytes covering the span. Requires span.end <= size().
    std::string_view slice(Span span) const noexcept;

private:
    std::string_view bytes_;
    std::u32string chars_;
    std::vector<std::size_t> offsets_;  // size() + 1 entries
};

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view chars);
std::size_t length(std::string_view utf8);

// Simple one-to-one case folding (Latin, Greek, Cyrillic). Never changes the
// number of scalars, so folded text keeps the positions of the original.
char32_t fold(char32_t c) noexcept;
bool is_space(char32_t c) noexcept;
bool is_word_char(char32_t c) noexcept;

// Trim and collapse internal whitespace runs to one ASCII space, keeping case.
std::string tidy(std::string_view utf8);
// tidy + case fold: the identity key for surfaces, names and queries.
std::string normalize(std::string_view utf8);
std::u32string normalize32(std::string_view utf8);

// A normalized search form plus the text it was derived from.
struct Form {
    std::u32string pattern;  // normalize32(original)
    std::string original;
};

struct FormMatch {
    Span span;
    std::size_t form = 0;  // index into the forms passed to match_forms
};

// Non-overlapping, whole-word, case-insensitive matches of any form, scanning
// left to right and preferring the longest form at each position. A space in
// a pattern matches any single whitespace scalar of the text.
std::vector<FormMatch> match_forms(const std::u32string& text, std::span<const Form> forms);

// Every start position (overlaps allowed) where the normalized needle occurs,
// case-insensitively, with no word-boundary requirement.
std::vector<Span> find_all(const std::u32string& text, const std::u32string& needle);

// True if `pattern` (normalized) matches text at position `at`.
bool matches_at(const std::u32string& text, std::size_t at, const std::u32string& pattern) noexcept;

}  // namespace tkb::text
