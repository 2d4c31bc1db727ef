#pragma once

// Name normalization used by the disambiguation heuristics. Everything here
// operates on UTF-8 input and produces lowercase ASCII output; characters
// outside the handled Latin ranges pass through unchanged.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fieldrank {

namespace detail {

// Latin-1 Supplement and Latin Extended-A accented letters -> ASCII base.
// Returns empty string_view when the codepoint has no mapping.
inline std::string_view strip_diacritic(char32_t cp) {
    switch (cp) {
        case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å':
        case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å':
        case U'ā': case U'ă': case U'ą': case U'Ā': case U'Ă': case U'Ą':
            return "a";
        case U'è': case U'é': case U'ê': case U'ë':
        case U'È': case U'É': case U'Ê': case U'Ë':
        case U'ē': case U'ĕ': case U'ė': case U'ę': case U'ě':
        case U'Ē': case U'Ĕ': case U'Ė': case U'Ę': case U'Ě':
            return "e";
        case U'ì': case U'í': case U'î': case U'ï':
        case U'Ì': case U'Í': case U'Î': case U'Ï':
        case U'ĩ': case U'ī': case U'ĭ': case U'į': case U'ı':
            return "i";
        case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': case U'ø':
        case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': case U'Ø':
        case U'ō': case U'ŏ': case U'ő':
            return "o";
        case U'ù': case U'ú': case U'û': case U'ü':
        case U'Ù': case U'Ú': case U'Û': case U'Ü':
        case U'ũ': case U'ū': case U'ŭ': case U'ů': case U'ű': case U'ų':
            return "u";
        case U'ý': case U'ÿ': case U'Ý': return "y";
        case U'ñ': case U'Ñ': case U'ń': case U'ņ': case U'ň': return "n";
        case U'ç': case U'Ç': case U'ć': case U'ĉ': case U'č': case U'Ć': case U'Č': return "c";
        case U'š': case U'ś': case U'ş': case U'Š': case U'Ś': case U'Ş': return "s";
        case U'ž': case U'ź': case U'ż': case U'Ž': case U'Ź': case U'Ż': return "z";
        case U'ď': case U'đ': case U'Ď': case U'Đ': return "d";
        case U'ť': case U'ţ': case U'Ť': case U'Ţ': return "t";
        case U'ĺ': case U'ļ': case U'ľ': case U'ł': case U'Ł': return "l";
        case U'ŕ': case U'ř': case U'Ř': return "r";
        case U'ğ': case U'Ğ': return "g";
        case U'æ': case U'Æ': return "ae";
        case U'œ': case U'Œ': return "oe";
        case U'ß': return "ss";
        default: return {};
    }
}

inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) { ++i; return b0; }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (b0 & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
        i += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (b0 & 0x0Fu) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
        i += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (b0 & 0x07u) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
        i += 4;
        return cp;
    }
    ++i;  // invalid byte, skip
    return b0;
}

inline void append_codepoint(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

}  // namespace detail

// Case-fold + strip diacritics. ASCII fast path; accented Latin letters are
// reduced to their lowercase base form.
inline std::string fold_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        if (b < 0x80) {
            out += static_cast<char>(std::tolower(b));
            ++i;
            continue;
        }
        char32_t cp = detail::decode_utf8(s, i);
        std::string_view mapped = detail::strip_diacritic(cp);
        if (!mapped.empty()) {
            out.append(mapped);
        } else if (cp >= U'A' && cp <= U'Z') {
            out += static_cast<char>(cp - U'A' + 'a');
        } else {
            detail::append_codepoint(out, cp);
        }
    }
    return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Parsed byline: folded surname plus the folded initial letters of the given
// part. "De Rossi, M.A.", "Rossi, Mario" and "Rossi M." all parse.
struct BylineName {
    std::string surname;         // folded, tokens joined by single spaces
    std::string initials;        // folded initial letters, in byline order
    bool valid = false;
};

inline BylineName parse_byline(std::string_view raw) {
    BylineName out;
    std::string folded = fold_name(raw);
    std::string surname_part, given_part;
    if (auto comma = folded.find(','); comma != std::string::npos) {
        surname_part = folded.substr(0, comma);
        given_part = folded.substr(comma + 1);
    } else {
        // No comma: trailing tokens that look like initials ("m." / "m.a." /
        // bare single letters) form the given part.
        auto tokens = split_ws(folded);
        std::size_t split = tokens.size();
        while (split > 1) {
            const std::string& t = tokens[split - 1];
            bool initials_like = t.find('.') != std::string::npos || t.size() == 1;
            if (!initials_like) break;
            --split;
        }
        for (std::size_t k = 0; k < split; ++k) {
            if (!surname_part.empty()) surname_part += ' ';
            surname_part += tokens[k];
        }
        for (std::size_t k = split; k < tokens.size(); ++k) {
            given_part += ' ';
            given_part += tokens[k];
        }
    }
    auto surname_tokens = split_ws(surname_part);
    if (surname_tokens.empty()) return out;
    for (std::size_t k = 0; k < surname_tokens.size(); ++k) {
        if (k) out.surname += ' ';
        out.surname += surname_tokens[k];
    }
    // Initial letters: "m.a." yields m,a; "mario andrea" yields m,a;
    // "jean-pierre" yields j,p.
    for (const auto& tok : split_ws(given_part)) {
        bool take_next = true;
        for (char c : tok) {
            if (c == '.' || c == '-') {
                take_next = true;
                continue;
            }
            if (!std::isalpha(static_cast<unsigned char>(c))) continue;
            if (take_next) out.initials += c;
            take_next = false;
        }
    }
    out.valid = true;
    return out;
}

// Nobiliary particles are not usable as standalone lookup keys; "De Rosa"
// must not become a candidate for every other "De ..." surname.
inline bool is_surname_particle(std::string_view token) {
    static const std::unordered_set<std::string_view> particles = {
        "de", "di", "del", "della", "dalla", "da", "la", "lo", "le",
        "van", "von", "der", "den", "ter", "dos", "san", "santa"};
    return particles.count(token) > 0;
}

// Keys a surname is reachable under: the space/hyphen-free concatenation plus
// each individual non-particle token (multi-token and hyphenated surnames
// match on either part).
inline std::vector<std::string> surname_keys(std::string_view folded_surname) {
    std::vector<std::string> keys;
    std::string concat;
    std::string token;
    auto flush_token = [&] {
        if (!token.empty() && !is_surname_particle(token)) keys.push_back(token);
        token.clear();
    };
    for (char c : folded_surname) {
        if (c == ' ' || c == '-' || c == '\'') {
            flush_token();
        } else {
            concat += c;
            token += c;
        }
    }
    flush_token();
    if (keys.size() != 1 || keys[0] != concat) keys.push_back(concat);
    return keys;
}

}  // namespace fieldrank
