#ifndef RCALC_SERIALIZE_HPP
#define RCALC_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "rcalc/engine.hpp"
#include "rcalc/oracle.hpp"

namespace rcalc {

// Human-readable renderings.
std::string render_tree(const ProofNode& t);            // indented, one node per line
std::string render_trace(const DerivationTrace& trace); // numbered steps with witnesses
std::string render_report(const ContractionReport& r);  // text table

// Structured renderings (schema_version 1; field names are part of the CLI
// contract documented in the README).
nlohmann::json tree_json(const ProofNode& t);
nlohmann::json model_json(const FiniteModel& m);
nlohmann::json transition_json(const Transition& t);
nlohmann::json trace_json(const DerivationTrace& trace);
nlohmann::json report_json(const ContractionReport& r);

}  // namespace rcalc

#endif
