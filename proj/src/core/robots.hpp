#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dualweb {

// Prefix-rule subset of robots.txt: User-agent groups with Allow/Disallow
// lines. The group matching our agent token wins over the * group; within a
// group the longest matching prefix decides, Allow winning length ties.
// Paths with no matching rule are allowed, as is everything when the file
// is absent or unparsable.
class RobotsRules {
public:
    static RobotsRules parse(std::string_view body, std::string_view user_agent);
    static RobotsRules allow_all();

    bool allowed(std::string_view path) const;

private:
    struct Rule {
        std::string prefix;
        bool allow = false;
    };
    std::vector<Rule> rules_;
};

} // namespace dualweb
