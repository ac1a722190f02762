#include "probegen/nlp/embed_clean.hpp"

#include "probegen/common/text.hpp"

namespace probegen::nlp {

std::string clean_for_embedding(std::string_view input) {
    std::string out;
    out.reserve(input.size());
    for (char32_t cp : text::to_u32(input)) {
        if (text::is_punctuation(cp) || text::is_symbol(cp) || text::is_emoji(cp)) {
            continue;
        }
        text::append_utf8(out, cp);
    }
    return text::trim(out);
}

}  // namespace probegen::nlp
