#pragma once

#include <string>
#include <string_view>

namespace probegen::topics {

// Porter's 1980 suffix-stripping algorithm as originally published (no later
// extensions, short words are stemmed too). Input is lowercased first;
// non-ASCII letters count as consonants.
std::string porter_stem(std::string_view word);

}  // namespace probegen::topics
