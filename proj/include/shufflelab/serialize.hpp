#pragma once

#include "json.hpp"

#include "shufflelab/analysis.hpp"
#include "shufflelab/moments.hpp"
#include "shufflelab/oracle.hpp"

namespace shufflelab {

inline constexpr int kSchemaVersion = 1;

/// Library version string baked in at build time.
const char* version();

}  // namespace shufflelab

// Probabilities travel as "numerator/denominator" strings so exact laws stay
// exact on disk. Worker counts and timings are never serialized: reports for
// the same seed are byte-identical whatever the parallelism.
namespace shufflelab::oracle {
void to_json(nlohmann::ordered_json& j, const ExactDistribution& d);
void from_json(const nlohmann::ordered_json& j, ExactDistribution& d);
}  // namespace shufflelab::oracle

namespace shufflelab::moments {
void to_json(nlohmann::ordered_json& j, const MomentReport& r);
void from_json(const nlohmann::ordered_json& j, MomentReport& r);
}  // namespace shufflelab::moments

namespace shufflelab::analysis {
void to_json(nlohmann::ordered_json& j, const EmpiricalDistribution& d);
void from_json(const nlohmann::ordered_json& j, EmpiricalDistribution& d);
void to_json(nlohmann::ordered_json& j, const NormalityReport& r);
void from_json(const nlohmann::ordered_json& j, NormalityReport& r);
void to_json(nlohmann::ordered_json& j, const CouplingReport& r);
void from_json(const nlohmann::ordered_json& j, CouplingReport& r);
void to_json(nlohmann::ordered_json& j, const RateReport& r);
void from_json(const nlohmann::ordered_json& j, RateReport& r);
void to_json(nlohmann::ordered_json& j, const DominanceReport& r);
void from_json(const nlohmann::ordered_json& j, DominanceReport& r);
void to_json(nlohmann::ordered_json& j, const TailReport& r);
void from_json(const nlohmann::ordered_json& j, TailReport& r);
}  // namespace shufflelab::analysis
