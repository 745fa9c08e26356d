#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/html.hpp"
#include "core/robots.hpp"
#include "core/url.hpp"

using namespace dualweb;

TEST_CASE("absolute URL parsing") {
    const auto url = parse_url("HTTP://Example.COM:80/Path/x?q=1#frag");
    REQUIRE(url.has_value());
    CHECK(url->scheme == "http");
    CHECK(url->host == "example.com");
    CHECK(url->port.empty()); // default port dropped
    CHECK(url->path == "/Path/x");
    CHECK(url->query == "q=1");
    CHECK(url->to_string() == "http://example.com/Path/x?q=1");

    CHECK(parse_url("http://h.test")->path == "/");
    CHECK(parse_url("http://h.test:8080/")->port == "8080");
    CHECK_FALSE(parse_url("ftp://example.com/x").has_value());
    CHECK_FALSE(parse_url("mailto:x@y").has_value());
    CHECK_FALSE(parse_url("/relative/only").has_value());
}

TEST_CASE("reference resolution against a base") {
    const Url base = *parse_url("http://a.example/p/page.html?z=9");
    CHECK(resolve_reference(base, "/about")->to_string() == "http://a.example/about");
    CHECK(resolve_reference(base, "other.html")->to_string() == "http://a.example/p/other.html");
    CHECK(resolve_reference(base, "../up.html")->to_string() == "http://a.example/up.html");
    CHECK(resolve_reference(base, "./same.html")->to_string() == "http://a.example/p/same.html");
    CHECK(resolve_reference(base, "//b.example/x")->to_string() == "http://b.example/x");
    CHECK(resolve_reference(base, "http://c.example/y")->to_string() == "http://c.example/y");
    CHECK(resolve_reference(base, "?q=2")->to_string() == "http://a.example/p/page.html?q=2");
    CHECK(resolve_reference(base, "#frag")->to_string() == "http://a.example/p/page.html?z=9");
    CHECK_FALSE(resolve_reference(base, "mailto:x@y").has_value());
    CHECK_FALSE(resolve_reference(base, "javascript:void(0)").has_value());
}

TEST_CASE("dot segments collapse without escaping the root") {
    const Url base = *parse_url("http://h.test/a/b/c.html");
    CHECK(resolve_reference(base, "../../x")->path == "/x");
    CHECK(resolve_reference(base, "../../../../x")->path == "/x");
}

TEST_CASE("anchor extraction: counts, resolution, scheme filter") {
    const Url base = *parse_url("http://a.example/p/");
    const std::string html = R"(
        <html><body>
        <a href="http://b.example/x">one</a>
        <A HREF='http://b.example/x'>two</A>
        <a class="big" href=http://b.example/x>three</a>
        <a href="/about">about</a>
        <a href="mailto:someone@b.example">mail</a>
        <a href="http://b.example/y#section">fragment stripped</a>
        <a name="anchor-without-href">skip</a>
        </body></html>)";
    const auto links = extract_links(html, base);
    REQUIRE(links.size() == 5);
    CHECK(links[0].to_string() == "http://b.example/x");
    CHECK(links[1].to_string() == "http://b.example/x");
    CHECK(links[2].to_string() == "http://b.example/x");
    CHECK(links[3].to_string() == "http://a.example/about"); // RFC-forced resolution
    CHECK(links[4].to_string() == "http://b.example/y");
}

TEST_CASE("extraction survives malformed and hostile input") {
    const Url base = *parse_url("http://a.example/");
    CHECK(extract_links("", base).empty());
    CHECK(extract_links("<a href=", base).empty());
    CHECK(extract_links("<<<>>><a<b", base).empty());
    CHECK(extract_links("<a href='http://b.example/ok'>unclosed", base).size() == 1);

    // comments and script bodies do not contribute anchors
    const std::string tricky = R"(
        <!-- <a href="http://hidden.example/">no</a> -->
        <script>var s = '<a href="http://scripted.example/">no</a>';</script>
        <style>a { color: red } /* <a href="http://styled.example/">no</a> */</style>
        <a href="http://real.example/">yes</a>)";
    const auto links = extract_links(tricky, base);
    REQUIRE(links.size() == 1);
    CHECK(links[0].host == "real.example");
}

TEST_CASE("entity-encoded hrefs decode") {
    const Url base = *parse_url("http://a.example/");
    const auto links = extract_links(R"(<a href="http://b.example/x?a=1&amp;b=2">e</a>)", base);
    REQUIRE(links.size() == 1);
    CHECK(links[0].query == "a=1&b=2");
}

TEST_CASE("robots: agent groups, longest prefix, allow overrides") {
    const std::string body =
        "User-agent: *\n"
        "Disallow: /private/\n"
        "Allow: /private/ok\n"
        "\n"
        "User-agent: otherbot\n"
        "Disallow: /\n";
    const RobotsRules rules = RobotsRules::parse(body, "dualweb/0.1");
    CHECK(rules.allowed("/"));
    CHECK(rules.allowed("/public/x"));
    CHECK_FALSE(rules.allowed("/private/secret"));
    CHECK(rules.allowed("/private/ok/page")); // longer allow wins

    const RobotsRules other = RobotsRules::parse(body, "otherbot/2.0");
    CHECK_FALSE(other.allowed("/anything"));
}

TEST_CASE("robots: specific agent group beats the star group") {
    const std::string body =
        "User-agent: dualweb\n"
        "Disallow: /only-for-us/\n"
        "\n"
        "User-agent: *\n"
        "Disallow: /\n";
    const RobotsRules rules = RobotsRules::parse(body, "dualweb/0.1");
    CHECK(rules.allowed("/fine"));
    CHECK_FALSE(rules.allowed("/only-for-us/x"));
}

TEST_CASE("robots: disallow all, comments, absent file semantics") {
    const RobotsRules none = RobotsRules::parse("User-agent: *\nDisallow: /\n", "dualweb");
    CHECK_FALSE(none.allowed("/"));
    CHECK_FALSE(none.allowed("/x"));

    const RobotsRules commented =
        RobotsRules::parse("# nothing here\nUser-agent: *\nDisallow: # empty\n", "dualweb");
    CHECK(commented.allowed("/anything"));

    CHECK(RobotsRules::allow_all().allowed("/x"));
    CHECK(RobotsRules::parse("garbage without structure", "dualweb").allowed("/x"));
}
