#pragma once

#include <string>
#include <string_view>

namespace probegen::nlp {

// Text for the sentence-embedding path: punctuation (P*), symbols (S*) and
// emoji code points are deleted, then leading and trailing whitespace is
// trimmed. Inner spacing and word order are left alone.
std::string clean_for_embedding(std::string_view text);

}  // namespace probegen::nlp
