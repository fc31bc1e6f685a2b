#pragma once

#include "grainflow/model.hpp"

#include <map>

namespace grainflow {

// Urgency of one (consumer, commodity) demand. Starts at g0 and grows
// linearly with waiting time, capped at g_max. Discarded when the deficit
// is extinguished; a fresh deficit gets a fresh state.
struct UrgencyState {
    double g0 = 0.0;
    double current = 0.0;
    Tick waiting_time = 0;
};

struct UrgencyParams {
    double alpha = 0.0;  // growth per tick
    double g_max = 1.0;
    double g0_min = 0.0; // initial draw range, within [0, 1]
    double g0_max = 1.0;
};

struct CostParams {
    double transport_rate = 0.0;             // currency per tonne per km
    Money handling_fee = 0.0;                // currency per tonne
    std::map<CommodityId, Money> base_price; // currency per tonne
};

// One consumer/supplier attraction, kept only when positive.
struct ForceEvaluation {
    CenterId consumer_id;
    CenterId supplier_id;
    CommodityId commodity;
    double force = 0.0;    // urgency * |mc| * |ms| / unit_cost
    Money unit_cost = 0.0;
};

// Attraction between a consumer mass and a supplier mass:
//   -urgency * mc * ms / unit_cost
// With signed masses (supplier +, consumer -) the result is strictly positive
// exactly for opposite roles; two suppliers or two consumers repel. Callers
// treat non-positive results as "no attraction". unit_cost must be positive:
// the force grows as cost shrinks and is left undefined at zero cost.
double pair_force(double consumer_mass, double supplier_mass, double urgency, double unit_cost);

// Per-tonne cost of moving `commodity` from supplier to consumer:
// base price + handling fee + transport_rate * geographic distance.
Money unit_cost(const Center& supplier, const Center& consumer, const CommodityId& commodity,
                const CostParams& params);

// Advances waiting time by dt ticks and recomputes
//   current = min(g_max, g0 + alpha * waiting_time)
// from scratch, so stepping dt=a then dt=b is bit-identical to dt=a+b.
UrgencyState urgency_update(UrgencyState u, const UrgencyParams& params, Tick dt);

// Radius of an agent in the virtual space, sqrt-scaled by mass:
// r0 * sqrt(mass / m_ref). A massless agent has radius 0.
double virtual_radius(Quantity mass_magnitude, double r0, Quantity m_ref);

// Moves the consumer fraction beta of the way toward target, but never
// closer than min_separation (the sum-of-radii stand-off). A consumer
// already at or within min_separation stays put. Suppliers never move.
Vec2 virtual_step(Vec2 consumer_pos, Vec2 target_pos, double min_separation, double beta);

} // namespace grainflow
