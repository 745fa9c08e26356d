#include "core/html.hpp"

#include <cctype>

#include "core/strings.hpp"

namespace dualweb {

namespace {

bool iequal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        const auto semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 8) {
            out += s[i++];
            continue;
        }
        const std::string_view entity = s.substr(i + 1, semi - i - 1);
        if (entity == "amp") out += '&';
        else if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "quot") out += '"';
        else if (entity == "apos" || entity == "#39") out += '\'';
        else if (entity == "#38") out += '&';
        else {
            out += s[i++];
            continue;
        }
        i = semi + 1;
    }
    return out;
}

// attribute scan inside one tag; returns the raw href value or empty
std::string_view find_href(std::string_view tag) {
    std::size_t i = 0;
    while (i < tag.size()) {
        while (i < tag.size() && (std::isspace(static_cast<unsigned char>(tag[i])) || tag[i] == '/')) ++i;
        if (i >= tag.size()) break;
        const std::size_t name_start = i;
        while (i < tag.size() && tag[i] != '=' && tag[i] != '>' &&
               !std::isspace(static_cast<unsigned char>(tag[i])))
            ++i;
        const std::string_view name = tag.substr(name_start, i - name_start);
        while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
        if (i >= tag.size() || tag[i] != '=') {
            if (iequal(name, "href")) return {}; // bare href attribute, no value
            continue;
        }
        ++i; // consume '='
        while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
        if (i >= tag.size()) break;
        std::string_view value;
        if (tag[i] == '"' || tag[i] == '\'') {
            const char quote = tag[i++];
            const std::size_t value_start = i;
            while (i < tag.size() && tag[i] != quote) ++i;
            value = tag.substr(value_start, i - value_start);
            if (i < tag.size()) ++i;
        } else {
            const std::size_t value_start = i;
            while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i])) && tag[i] != '>')
                ++i;
            value = tag.substr(value_start, i - value_start);
        }
        if (iequal(name, "href")) return value;
    }
    return {};
}

// skip to the end of </script> or </style>; returns position after the close
std::size_t skip_raw_element(std::string_view html, std::size_t pos, std::string_view close_tag) {
    while (pos < html.size()) {
        const auto lt = html.find('<', pos);
        if (lt == std::string_view::npos) return html.size();
        if (lt + close_tag.size() <= html.size() &&
            iequal(html.substr(lt, close_tag.size()), close_tag)) {
            const auto gt = html.find('>', lt);
            return gt == std::string_view::npos ? html.size() : gt + 1;
        }
        pos = lt + 1;
    }
    return html.size();
}

} // namespace

std::vector<Url> extract_links(std::string_view html, const Url& base) {
    std::vector<Url> links;
    std::size_t pos = 0;
    while (pos < html.size()) {
        const auto lt = html.find('<', pos);
        if (lt == std::string_view::npos) break;
        // comments
        if (html.substr(lt).size() >= 4 && html.substr(lt, 4) == "<!--") {
            const auto close = html.find("-->", lt + 4);
            pos = close == std::string_view::npos ? html.size() : close + 3;
            continue;
        }
        const auto gt = html.find('>', lt);
        if (gt == std::string_view::npos) break;
        const std::string_view tag_body = html.substr(lt + 1, gt - lt - 1);
        pos = gt + 1;

        if (tag_body.size() >= 6 && iequal(tag_body.substr(0, 6), "script")) {
            pos = skip_raw_element(html, pos, "</script");
            continue;
        }
        if (tag_body.size() >= 5 && iequal(tag_body.substr(0, 5), "style")) {
            pos = skip_raw_element(html, pos, "</style");
            continue;
        }
        const bool is_anchor =
            !tag_body.empty() && (tag_body[0] == 'a' || tag_body[0] == 'A') &&
            (tag_body.size() == 1 || std::isspace(static_cast<unsigned char>(tag_body[1])) ||
             tag_body[1] == '/');
        if (!is_anchor) continue;

        const std::string_view raw_href = find_href(tag_body.substr(1));
        if (raw_href.empty()) continue;
        const std::string href = decode_entities(trim(raw_href));
        if (href.empty()) continue;
        if (auto url = resolve_reference(base, href)) links.push_back(std::move(*url));
    }
    return links;
}

} // namespace dualweb
