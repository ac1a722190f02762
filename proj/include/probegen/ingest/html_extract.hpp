#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace probegen::ingest {

// Charset label from a Content-Type header value, e.g. "text/html; charset=gbk".
std::optional<std::string> charset_from_content_type(std::string_view content_type);

// Charset declared by a <meta> tag in the first few KiB of the document.
std::optional<std::string> charset_from_meta(std::string_view bytes);

// Decodes raw document bytes to UTF-8. Order: byte-order mark, HTTP header,
// meta tag, then UTF-8 with invalid sequences replaced. Returns nullopt for
// input that looks binary (NUL bytes without a UTF-16 BOM).
std::optional<std::string> decode_document(std::string_view bytes, std::string_view content_type = {});

// Replaces character references (&amp; &#233; &#xE9; ...) in UTF-8 text.
std::string decode_entities(std::string_view text);

// Main-content text of an HTML page. Navigation, menus, headers and footers,
// forms, scripts, social widgets and link lists are removed; when the page
// marks an <article> or <main> region only that region is used. Blocks are
// whitespace-collapsed and joined with '\n'. Returns "" when nothing remains
// or the bytes cannot be decoded.
std::string extract_main_text(std::string_view html_bytes, std::string_view content_type = {});

}  // namespace probegen::ingest
