#pragma once

#include <string>
#include <string_view>

#include "probegen/common/error.hpp"

namespace probegen::crawl {

class DegenerateUrl : public Error {
public:
    using Error::Error;
};

// Drops everything from the first comma on, escapes each single quote that
// is not already escaped with a backslash, and trims whitespace. Idempotent.
// Throws DegenerateUrl when nothing remains.
std::string clean_url(std::string_view raw);

}  // namespace probegen::crawl
