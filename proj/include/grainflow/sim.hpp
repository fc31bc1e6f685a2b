#pragma once

#include "grainflow/matching.hpp"
#include "grainflow/rng.hpp"
#include "grainflow/scenario.hpp"
#include "grainflow/world.hpp"

#include <functional>
#include <optional>

namespace grainflow {

struct ArrivalCounts {
    std::int64_t consumers = 0;
    std::int64_t suppliers = 0;
};

// Two independent Poisson draws: how many new consumers and suppliers appear
// this tick. Realization (who and by how much) happens in the step pipeline.
ArrivalCounts sample_arrivals(double lambda_c, double lambda_s, RngStream& rng);

// Initial world: roles classified, urgencies drawn, initial consumers queued
// to announce on the first tick. The scenario must already be validated.
World make_world(const Scenario& scenario, RngStream& rng);

// One tick: arrivals, message movement, urgency growth, force evaluation,
// clustering and kinematics, per-supplier queues and allocation, transfer
// execution, retirement, metrics.
void step(World& world, RngStream& rng, const Scenario& scenario);

// True once nothing can happen anymore: no active consumers, no messages in
// flight and both arrival rates zero — or the tick budget is spent.
bool check_termination(const World& world, const Scenario& scenario);

struct RunResult {
    Metrics metrics;
    std::vector<TraceEvent> trace;
    Tick ticks_run = 0;
    Quantity final_unmet = 0;
    std::vector<std::string> diagnostics;
};

using ProgressFn = std::function<void(const World&)>;

// Validates, then iterates step() until termination. Reaching max_ticks with
// unmet demand is reported in the result, not an error.
RunResult run(const Scenario& scenario, std::uint64_t seed,
              std::optional<Tick> max_ticks_override = std::nullopt,
              const ProgressFn& progress = {});

} // namespace grainflow
