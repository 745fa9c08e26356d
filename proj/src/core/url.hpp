#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dualweb {

// http(s) URL with the fragment always dropped. Host is lowercased; the
// path is never empty ("/" when absent).
struct Url {
    std::string scheme; // "http" or "https"
    std::string host;
    std::string port;  // empty for the scheme default
    std::string path;  // starts with '/'
    std::string query; // without '?', may be empty

    std::string to_string() const;
    // host[:port] as it appears in the authority
    std::string authority() const;
    // path + "?" + query; the per-host page key used for dedup
    std::string path_and_query() const;
    int port_number() const;
};

// Absolute http(s) URLs only; anything else is nullopt.
std::optional<Url> parse_url(std::string_view raw);

// RFC 3986 reference resolution against a base URL: absolute references,
// scheme-relative, absolute-path, and relative-path forms, with dot-segment
// removal. Non-http(s) schemes resolve to nullopt.
std::optional<Url> resolve_reference(const Url& base, std::string_view ref);

} // namespace dualweb
