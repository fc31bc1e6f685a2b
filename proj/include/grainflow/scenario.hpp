#pragma once

#include "grainflow/gravity.hpp"
#include "grainflow/model.hpp"
#include "grainflow/world.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grainflow {

enum class GraphSpecKind { Radius, Explicit };

struct GraphSpec {
    GraphSpecKind kind = GraphSpecKind::Radius;
    double radius = 0.0;
    std::vector<std::pair<CenterId, CenterId>> edges;
};

enum class MessagingMode { HopDelay, Instantaneous };

struct KinematicsParams {
    double beta = 0.5;   // pull fraction per step, in (0, 1]
    double r0 = 1.0;     // virtual radius scale
    Quantity m_ref = 100; // reference mass for the radius formula
};

struct ArrivalParams {
    std::map<CommodityId, double> lambda_c; // consumer arrival rate per tick
    std::map<CommodityId, double> lambda_s; // supplier arrival rate per tick
    Quantity delta_min = 1;                 // arrival magnitude range, tonnes
    Quantity delta_max = 100;
};

struct SimParams {
    Tick max_ticks = 500;
    MessagingMode messaging = MessagingMode::HopDelay;
    bool epoch_mode = false; // settle virtual kinematics before allocating
    KinematicsParams kinematics;
    std::string rng_algorithm = "mt19937_64";
};

struct Scenario {
    std::vector<Commodity> commodities; // document order; fixes draw order
    std::vector<Center> centers;        // sorted by id
    GraphSpec graph;
    CostParams costs;
    UrgencyParams urgency;
    ArrivalParams arrivals;
    SimParams sim;

    double lambda_c_for(const CommodityId& id) const;
    double lambda_s_for(const CommodityId& id) const;
};

struct ParseIssue {
    int line = 0; // 0 when the issue is not tied to a single line
    std::string message;
};

struct ParseResult {
    std::optional<Scenario> scenario;
    std::vector<ParseIssue> issues;
    bool ok() const { return scenario.has_value() && issues.empty(); }
};

// Parse the sectioned plain-text scenario format (docs/scenario_format.md).
// On any syntax or semantic violation the result carries the full issue list
// with line references and no scenario.
ParseResult parse_scenario(const std::string& text);

// Semantic validation of an in-memory scenario (no line references).
std::vector<ParseIssue> validate_scenario(const Scenario& s);

// Canonical document form; parse(serialize(s)) reproduces s exactly.
std::string serialize_scenario(const Scenario& s);

// Built-in desk-scale scenario: 54 district centers across the 8 north-zone
// regions (Delhi, Haryana, HP, J&K, Punjab, Rajasthan, UP, Uttarakhand), with
// Punjab and Haryana holding at least 90% of the total surplus. Deterministic
// in the seed. Coordinates are synthetic (grid per state).
Scenario generate_north_zone(std::uint64_t seed);

NetworkGraph build_graph(const Scenario& s);

std::string write_metrics(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> parse_metrics(const std::string& text); // inverse of write_metrics

std::string write_trace(const std::vector<TraceEvent>& events);

// Shortest round-trip decimal form of a double ("10", "0.02", ...).
std::string format_double(double v);

} // namespace grainflow
