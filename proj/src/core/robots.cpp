#include "core/robots.hpp"

#include "core/strings.hpp"

namespace dualweb {

RobotsRules RobotsRules::allow_all() { return RobotsRules{}; }

RobotsRules RobotsRules::parse(std::string_view body, std::string_view user_agent) {
    // agent token: product name up to the first '/' or space, lowercased
    std::string agent = to_lower(user_agent);
    if (const auto cut = agent.find_first_of("/ "); cut != std::string::npos) agent.resize(cut);

    std::vector<Rule> star_rules, agent_rules;
    // a group is one or more consecutive User-agent lines followed by rules
    bool collecting_agents = false;
    bool group_star = false, group_agent = false;

    std::size_t pos = 0;
    while (pos < body.size()) {
        auto eol = body.find('\n', pos);
        if (eol == std::string_view::npos) eol = body.size();
        std::string_view line = body.substr(pos, eol - pos);
        pos = eol + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        const std::string field = to_lower(trim(line.substr(0, colon)));
        const std::string value = std::string(trim(line.substr(colon + 1)));

        if (field == "user-agent") {
            if (!collecting_agents) {
                collecting_agents = true;
                group_star = group_agent = false;
            }
            const std::string target = to_lower(value);
            if (target == "*") group_star = true;
            else if (!agent.empty() && target.find(agent) != std::string::npos) group_agent = true;
        } else if (field == "allow" || field == "disallow") {
            collecting_agents = false;
            if (value.empty()) continue; // an empty pattern matches nothing
            const Rule rule{value, field == "allow"};
            if (group_agent) agent_rules.push_back(rule);
            else if (group_star) star_rules.push_back(rule);
        }
    }

    RobotsRules out;
    out.rules_ = agent_rules.empty() ? star_rules : agent_rules;
    return out;
}

bool RobotsRules::allowed(std::string_view path) const {
    std::size_t best_len = 0;
    bool best_allow = true;
    for (const auto& rule : rules_) {
        if (!starts_with(path, rule.prefix)) continue;
        if (rule.prefix.size() > best_len ||
            (rule.prefix.size() == best_len && rule.allow && !best_allow)) {
            best_len = rule.prefix.size();
            best_allow = rule.allow;
        }
    }
    return best_allow;
}

} // namespace dualweb
