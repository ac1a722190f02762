#include "probegen/crawl/url_clean.hpp"

#include "probegen/common/text.hpp"

namespace probegen::crawl {

std::string clean_url(std::string_view raw) {
    auto comma = raw.find(',');
    std::string_view head = raw.substr(0, comma);
    std::string escaped;
    escaped.reserve(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (head[i] == '\'' && (i == 0 || head[i - 1] != '\\')) {
            escaped.push_back('\\');
        }
        escaped.push_back(head[i]);
    }
    auto out = text::trim(escaped);
    if (out.empty()) {
        throw DegenerateUrl("degenerate URL '" + std::string(raw) + "'");
    }
    return out;
}

}  // namespace probegen::crawl
