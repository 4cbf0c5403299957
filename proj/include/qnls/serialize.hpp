#pragma once

// JSON views of the report types (snake_case keys, sorted) and CSV traces.

#include <filesystem>

#include <json.hpp>

#include "qnls/dynamics.hpp"
#include "qnls/functionals.hpp"
#include "qnls/groundstate.hpp"
#include "qnls/oracle.hpp"
#include "qnls/params.hpp"
#include "qnls/potential_well.hpp"

namespace qnls {

using Json = nlohmann::json;

void to_json(Json& j, const WaveParams& p);
void to_json(Json& j, const FunctionalReport& r);
void to_json(Json& j, const DecayFit& f);
/// Includes the last 101 values of L~ after projection.
void to_json(Json& j, const SeedOutcome& s);
/// Everything except the profile itself.
void to_json(Json& j, const GroundStateResult& r);
void to_json(Json& j, const MuEstimate& m);
void to_json(Json& j, const ScalingReport& r);
void to_json(Json& j, const DirectionReport& r);
void to_json(Json& j, const BoostReport& r);
/// Summary: sample count, drifts, termination; the series go to CSV.
void to_json(Json& j, const EvolutionTrace& t);
void to_json(Json& j, const WaveTrackReport& r);
void to_json(Json& j, const GalileanReport& r);
void to_json(Json& j, const SemitrivialReport& r);
void to_json(Json& j, const MuReference& m);
void to_json(Json& j, const WellVerdict& v);
void to_json(Json& j, const InvarianceReport& r);
void to_json(Json& j, const AprioriBound& b);
void to_json(Json& j, const Threshold& t);
void to_json(Json& j, const OscillationPoint& p);
void to_json(Json& j, const OscillationReport& r);
void to_json(Json& j, const ChargeThresholdReport& r);
void to_json(Json& j, const GnReport& r);

namespace oracle {
void to_json(Json& j, const FdCheckReport& r);
void to_json(Json& j, const BruteComparison& r);
}  // namespace oracle

/// One row per sample: t, Q, E, P_0..P_{d-1}, grad_u, grad_v, tail_u,
/// tail_v and the label when present.
void write_trace_csv(const EvolutionTrace& t, const std::filesystem::path& path);

/// Pretty-printed JSON followed by a newline.
void write_json(const Json& j, const std::filesystem::path& path);

}  // namespace qnls
