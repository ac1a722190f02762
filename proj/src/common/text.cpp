#include "probegen/common/text.hpp"

#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/ucnv.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace probegen::text {

namespace {

template <typename Fn>
void for_each_cp(std::string_view s, Fn&& fn) {
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    int32_t len = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) {
            c = 0xFFFD;
        }
        fn(static_cast<char32_t>(c));
    }
}

int8_t category(char32_t cp) { return static_cast<int8_t>(u_charType(static_cast<UChar32>(cp))); }

}  // namespace

std::u32string to_u32(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    for_each_cp(utf8, [&](char32_t c) { out.push_back(c); });
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), err);
    if (err) {
        append_utf8(out, 0xFFFD);
        return;
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::string to_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t c : cps) {
        append_utf8(out, c);
    }
    return out;
}

std::size_t scalar_count(std::string_view utf8) {
    std::size_t n = 0;
    for_each_cp(utf8, [&](char32_t) { ++n; });
    return n;
}

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    for_each_cp(bytes, [&](char32_t c) { append_utf8(out, c); });
    return out;
}

bool is_valid_utf8(std::string_view bytes) {
    const auto* p = reinterpret_cast<const uint8_t*>(bytes.data());
    int32_t len = static_cast<int32_t>(bytes.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

std::optional<std::string> transcode_to_utf8(std::string_view bytes, std::string_view charset) {
    std::string name(charset);
    UErrorCode status = U_ZERO_ERROR;
    UConverter* conv = ucnv_open(name.c_str(), &status);
    if (U_FAILURE(status) || conv == nullptr) {
        return std::nullopt;
    }
    icu::UnicodeString u(bytes.data(), static_cast<int32_t>(bytes.size()), conv, status);
    ucnv_close(conv);
    if (U_FAILURE(status)) {
        return std::nullopt;
    }
    std::string out;
    u.toUTF8String(out);
    return out;
}

std::string to_lower(std::string_view utf8) {
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    u.toLower(icu::Locale::getRoot());
    std::string out;
    u.toUTF8String(out);
    return out;
}

std::string fold_case(std::string_view utf8) {
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    u.foldCase();
    std::string out;
    u.toUTF8String(out);
    return out;
}

bool is_punctuation(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_P_MASK) != 0;
}

bool is_symbol(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_S_MASK) != 0;
}

bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)) != 0; }

bool is_mark(char32_t cp) { return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_M_MASK) != 0; }

bool is_digit(char32_t cp) { return category(cp) == U_DECIMAL_DIGIT_NUMBER; }

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }

bool is_emoji(char32_t cp) {
    if (u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_EXTENDED_PICTOGRAPHIC)) {
        return true;
    }
    if (u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_EMOJI_COMPONENT) && !(cp < 0x80)) {
        return true;  // ZWJ, variation selectors, skin tones, keycap, tags
    }
    return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_REGIONAL_INDICATOR) != 0;
}

bool has_case(char32_t cp) {
    return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_CASED) != 0;
}

bool is_unspaced_script(char32_t cp) {
    UErrorCode status = U_ZERO_ERROR;
    UScriptCode sc = uscript_getScript(static_cast<UChar32>(cp), &status);
    if (U_FAILURE(status)) {
        return false;
    }
    switch (sc) {
        case USCRIPT_HAN:
        case USCRIPT_HIRAGANA:
        case USCRIPT_KATAKANA:
        case USCRIPT_THAI:
        case USCRIPT_LAO:
        case USCRIPT_KHMER:
        case USCRIPT_MYANMAR:
            return true;
        default:
            return false;
    }
}

std::string trim(std::string_view utf8) {
    auto cps = to_u32(utf8);
    std::size_t b = 0;
    std::size_t e = cps.size();
    while (b < e && is_space(cps[b])) {
        ++b;
    }
    while (e > b && is_space(cps[e - 1])) {
        --e;
    }
    return to_utf8(std::u32string_view(cps).substr(b, e - b));
}

std::string collapse_whitespace(std::string_view utf8) {
    std::string out;
    bool pending_space = false;
    for_each_cp(utf8, [&](char32_t c) {
        if (is_space(c)) {
            pending_space = !out.empty();
            return;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, c);
    });
    return out;
}

std::string normalize_term(std::string_view utf8) { return collapse_whitespace(fold_case(utf8)); }

std::vector<std::string> split_whitespace(std::string_view utf8) {
    std::vector<std::string> out;
    std::string cur;
    for_each_cp(utf8, [&](char32_t c) {
        if (is_space(c)) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
            return;
        }
        append_utf8(cur, c);
    });
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && ascii_lower(s.substr(0, prefix.size())) == ascii_lower(prefix);
}

}  // namespace probegen::text
