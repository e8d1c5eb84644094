#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace medsgraph {

/// True when the string starts with a URI scheme ("scheme:").
bool iri_is_absolute(std::string_view iri);

/// Percent-encodes every byte outside the RFC 3986 unreserved set
/// (ALPHA / DIGIT / '-' / '.' / '_' / '~'). Injective; UTF-8 input.
std::string iri_encode_component(std::string_view raw);

/// Inverse of iri_encode_component. Decodes any %XX sequence; nullopt on a
/// malformed one.
std::optional<std::string> iri_decode_component(std::string_view encoded);

}  // namespace medsgraph
