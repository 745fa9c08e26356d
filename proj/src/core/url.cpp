#include "core/url.hpp"

#include <algorithm>

#include "core/strings.hpp"

namespace dualweb {

namespace {

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

// scheme of a reference, empty when it has none
std::string_view scheme_of(std::string_view ref) {
    if (ref.empty() || !std::isalpha(static_cast<unsigned char>(ref[0]))) return {};
    for (std::size_t i = 1; i < ref.size(); ++i) {
        if (ref[i] == ':') return ref.substr(0, i);
        if (!is_scheme_char(ref[i])) return {};
    }
    return {};
}

std::string remove_dot_segments(std::string_view path) {
    std::string out;
    std::string in(path);
    while (!in.empty()) {
        if (starts_with(in, "../")) {
            in.erase(0, 3);
        } else if (starts_with(in, "./")) {
            in.erase(0, 2);
        } else if (starts_with(in, "/./")) {
            in.erase(0, 2); // keep the slash
        } else if (in == "/.") {
            in = "/";
        } else if (starts_with(in, "/../") || in == "/..") {
            in = in == "/.." ? "/" : in.substr(3);
            const auto slash = out.rfind('/');
            out.erase(slash == std::string::npos ? 0 : slash);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            std::size_t next = in.find('/', 1);
            if (next == std::string::npos) next = in.size();
            out += in.substr(0, next);
            in.erase(0, next);
        }
    }
    return out;
}

// splits "host[:port]" out of an authority; userinfo is not supported
void split_authority(std::string_view authority, Url& url) {
    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos && authority.find(':') == colon) {
        url.host = to_lower(authority.substr(0, colon));
        url.port = std::string(authority.substr(colon + 1));
    } else {
        url.host = to_lower(authority);
        url.port.clear();
    }
    // drop a default port
    if ((url.scheme == "http" && url.port == "80") || (url.scheme == "https" && url.port == "443")) {
        url.port.clear();
    }
}

void split_path_query_fragment(std::string_view rest, Url& url) {
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
        rest = rest.substr(0, hash); // fragments always stripped
    }
    if (const auto qmark = rest.find('?'); qmark != std::string_view::npos) {
        url.query = std::string(rest.substr(qmark + 1));
        rest = rest.substr(0, qmark);
    } else {
        url.query.clear();
    }
    url.path = rest.empty() ? "/" : remove_dot_segments(rest);
    if (url.path.empty()) url.path = "/";
}

} // namespace

std::string Url::to_string() const {
    std::string out = scheme + "://" + authority() + path;
    if (!query.empty()) out += "?" + query;
    return out;
}

std::string Url::authority() const { return port.empty() ? host : host + ":" + port; }

std::string Url::path_and_query() const { return query.empty() ? path : path + "?" + query; }

int Url::port_number() const {
    if (!port.empty()) return std::stoi(port);
    return scheme == "https" ? 443 : 80;
}

std::optional<Url> parse_url(std::string_view raw) {
    raw = trim(raw);
    const std::string scheme = to_lower(scheme_of(raw));
    if (scheme != "http" && scheme != "https") return std::nullopt;
    raw.remove_prefix(scheme.size() + 1);
    if (!starts_with(raw, "//")) return std::nullopt;
    raw.remove_prefix(2);

    std::size_t end_authority = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '/' || raw[i] == '?' || raw[i] == '#') {
            end_authority = i;
            break;
        }
    }
    Url url;
    url.scheme = scheme;
    split_authority(raw.substr(0, end_authority), url);
    if (url.host.empty()) return std::nullopt;
    split_path_query_fragment(raw.substr(end_authority), url);
    return url;
}

std::optional<Url> resolve_reference(const Url& base, std::string_view ref) {
    ref = trim(ref);
    if (ref.empty()) return base;

    const std::string_view scheme = scheme_of(ref);
    if (!scheme.empty()) {
        // absolute reference; only http(s) survives
        return parse_url(ref);
    }
    if (starts_with(ref, "//")) {
        // scheme-relative
        return parse_url(base.scheme + ":" + std::string(ref));
    }

    Url url;
    url.scheme = base.scheme;
    url.host = base.host;
    url.port = base.port;
    if (starts_with(ref, "/")) {
        split_path_query_fragment(ref, url);
        return url;
    }
    if (starts_with(ref, "?")) {
        split_path_query_fragment(base.path + std::string(ref), url);
        return url;
    }
    if (starts_with(ref, "#")) return base;

    // relative path: merge with the base path's directory
    const auto slash = base.path.rfind('/');
    const std::string merged = base.path.substr(0, slash + 1) + std::string(ref);
    split_path_query_fragment(merged, url);
    return url;
}

} // namespace dualweb
