#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpo/encoder.hpp"
#include "wpo/oracle.hpp"

namespace wpo {

struct Witness {
    std::string test;
    std::string model;
    Verdict verdict = Verdict::Allowed;
    ConcreteExecution exec;
    std::map<EventId, std::int64_t> ghb_clock;  // absent for events without a GHB clock
    std::vector<std::string> thread_names;
};

// Throws wpo::Error when the valuation lacks a needed symbol or a read does not have
// exactly one rf source.
ConcreteExecution concretise(const Valuation& v, const Ses& s, const SsaFormula& f, const ConstraintSet& cs);
std::map<EventId, std::int64_t> ghb_clocks(const Valuation& v, const Ses& s);

std::string render_text(const Witness& w);
nlohmann::json render_json(const Witness& w);

}  // namespace wpo
