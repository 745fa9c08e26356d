#pragma once

#include <string_view>
#include <vector>

#include "core/url.hpp"

namespace dualweb {

// Tolerant anchor extraction: every <a href=...> in document order, resolved
// against the base URL, duplicates kept (each anchor is one potential link).
// Comments and script/style bodies are skipped; entity-encoded hrefs are
// decoded; non-http(s) targets are dropped. Never fails on malformed input.
std::vector<Url> extract_links(std::string_view html, const Url& base);

} // namespace dualweb
