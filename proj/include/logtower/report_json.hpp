#pragma once

#include <json.hpp>

#include "logtower/harness.hpp"
#include "logtower/print.hpp"
#include "logtower/tower.hpp"

// JSON views of the report structs. Names are part of the CLI output
// contract, so they stay put even when the structs grow fields.
namespace logtower {

inline void to_json(nlohmann::json& j, const BoundReport& r) {
    j = nlohmann::json{{"bound", r.bound},       {"constant", r.constant},
                       {"threshold", r.threshold}, {"pass", r.pass},
                       {"margins_tail", r.margins_tail}, {"status", r.status}};
}

inline void to_json(nlohmann::json& j, const IdentityCheck& c) {
    j = nlohmann::json{{"label", c.label}, {"n", c.n}, {"pass", c.pass}};
}

inline void to_json(nlohmann::json& j, const IdentitySuiteReport& r) {
    j = nlohmann::json{{"pass", r.all_pass()}, {"checks", r.checks}};
}

inline void to_json(nlohmann::json& j, const ValVector& v) {
    j = print_canonical(v);
}

inline void to_json(nlohmann::json& j, const PcReport& r) {
    j = nlohmann::json{{"is_pc", r.is_pc},
                       {"increments", r.increments},
                       {"violation_at", r.violation_at}};
}

inline void to_json(nlohmann::json& j, const RiccatiResult& r) {
    j = nlohmann::json{{"growth", r.growth}, {"residual", r.residual}};
}

inline void to_json(nlohmann::json& j, const WitnessReport& r) {
    j = nlohmann::json{{"m", r.m},
                       {"n", r.n},
                       {"requested_t0", r.requested_t0},
                       {"t0", r.t0},
                       {"tmax", r.tmax},
                       {"pass", r.pass},
                       {"checks", r.checks}};
}

}  // namespace logtower
