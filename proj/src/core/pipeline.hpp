#pragma once

#include <string>

#include <json.hpp>

namespace dualweb {

// One-shot pipeline: (optional synth ->) audience + hyperlink builders ->
// common-node alignment -> metrics -> communities -> purity -> QAP ->
// layouts + SVGs. Every artifact lands in out_dir; the returned report is
// also written there as report.json. Any stage failure throws with the stage
// name; artifacts written before the failure stay on disk.
//
// The effective config (defaults materialized) is embedded in the report, and
// every randomized stage is seeded from the one global seed, so identical
// config+seed runs produce byte-identical reports.
nlohmann::json reproduce(const std::string& config_text, const std::string& out_dir);

} // namespace dualweb
