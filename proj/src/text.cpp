#include "tkb/text.hpp"

#include <algorithm>
#include <numeric>

namespace tkb::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one scalar starting at bytes[i]; returns the scalar and its byte length.
std::pair<char32_t, std::size_t> decode_one(std::string_view bytes, std::size_t i) noexcept {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) return {b0, 1};

    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
        return {kReplacement, 1};
    }
    if (i + len > bytes.size()) return {kReplacement, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(bytes[i + k]);
        if ((b & 0xC0) != 0x80) return {kReplacement, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {kReplacement, 1};
    return {cp, len};
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::u32string collapse(std::u32string_view chars, bool fold_case) {
    std::u32string out;
    out.reserve(chars.size());
    bool pending_space = false;
    for (char32_t c : chars) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(U' ');
        pending_space = false;
        out.push_back(fold_case ? fold(c) : c);
    }
    return out;
}

}  // namespace

Decoded::Decoded(std::string_view utf8) : bytes_(utf8) {
    chars_.reserve(utf8.size());
    offsets_.reserve(utf8.size() + 1);
    std::size_t i = 0;
    while (i < utf8.size()) {
        auto [cp, len] = decode_one(utf8, i);
        chars_.push_back(cp);
        offsets_.push_back(i);
        i += len;
    }
    offsets_.push_back(utf8.size());
}

std::string_view Decoded::slice(Span span) const noexcept {
    const auto from = offsets_[span.start];
    const auto to = offsets_[span.end];
    return bytes_.substr(from, to - from);
}

std::u32string decode(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        auto [cp, len] = decode_one(utf8, i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode(std::u32string_view chars) {
    std::string out;
    out.reserve(chars.size());
    for (char32_t c : chars) append_utf8(out, c);
    return out;
}

std::size_t length(std::string_view utf8) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < utf8.size(); ++n) i += decode_one(utf8, i).second;
    return n;
}

char32_t fold(char32_t c) noexcept {
    if (c < 0x80) return (c >= U'A' && c <= U'Z') ? c + 0x20 : c;
    // Latin-1 supplement, minus the multiplication sign.
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    // Latin Extended-A: mostly upper/lower pairs on even/odd code points.
    if (c >= 0x100 && c <= 0x17F) {
        if (c == 0x130) return U'i';
        if (c == 0x178) return 0xFF;
        if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) return (c % 2 == 1) ? c + 1 : c;
        if (c == 0x138 || c == 0x149 || c == 0x17F) return c;
        return (c % 2 == 0) ? c + 1 : c;
    }
    if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 0x20;
    if (c >= 0x400 && c <= 0x40F) return c + 0x50;
    if (c >= 0x410 && c <= 0x42F) return c + 0x20;
    return c;
}

bool is_space(char32_t c) noexcept {
    switch (c) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return c >= 0x2000 && c <= 0x200A;
    }
}

bool is_word_char(char32_t c) noexcept {
    if (c < 0x80) {
        return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') ||
               c == U'_';
    }
    if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
    if (c == 0xD7 || c == 0xF7) return false;
    if (is_space(c)) return false;
    // General punctuation, symbols, arrows, CJK punctuation.
    if (c >= 0x2000 && c <= 0x2BFF) return false;
    if (c >= 0x3000 && c <= 0x303F) return false;
    if (c == kReplacement) return false;
    return true;
}

std::string tidy(std::string_view utf8) { return encode(collapse(decode(utf8), false)); }

std::string normalize(std::string_view utf8) { return encode(normalize32(utf8)); }

std::u32string normalize32(std::string_view utf8) { return collapse(decode(utf8), true); }

bool matches_at(const std::u32string& text, std::size_t at, const std::u32string& pattern) noexcept {
    if (pattern.empty() || at + pattern.size() > text.size()) return false;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        const char32_t t = text[at + k];
        if (pattern[k] == U' ') {
            if (!is_space(t)) return false;
        } else if (fold(t) != pattern[k]) {
            return false;
        }
    }
    return true;
}

std::vector<FormMatch> match_forms(const std::u32string& text, std::span<const Form> forms) {
    // Longest first; equal lengths keep their given order.
    std::vector<std::size_t> order(forms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return forms[a].pattern.size() > forms[b].pattern.size();
    });

    std::vector<FormMatch> out;
    std::size_t i = 0;
    while (i < text.size()) {
        bool hit = false;
        for (std::size_t f : order) {
            const auto& p = forms[f].pattern;
            if (p.empty() || !matches_at(text, i, p)) continue;
            const std::size_t end = i + p.size();
            if (is_word_char(p.front()) && i > 0 && is_word_char(text[i - 1])) continue;
            if (is_word_char(p.back()) && end < text.size() && is_word_char(text[end])) continue;
            out.push_back({{i, end}, f});
            i = end;
            hit = true;
            break;
        }
        if (!hit) ++i;
    }
    return out;
}

std::vector<Span> find_all(const std::u32string& text, const std::u32string& needle) {
    std::vector<Span> out;
    if (needle.empty() || needle.size() > text.size()) return out;
    for (std::size_t i = 0; i + needle.size() <= text.size(); ++i) {
        if (matches_at(text, i, needle)) out.push_back({i, i + needle.size()});
    }
    return out;
}

}  // namespace tkb::text
