#pragma once

#include "grainflow/world.hpp"

#include <span>
#include <vector>

namespace grainflow {

// Planetary grouping: every attracted consumer sits in exactly one cluster per
// commodity, around the supplier exerting the greatest force on it.
struct Cluster {
    CenterId supplier_id;
    CommodityId commodity;
    std::vector<CenterId> members; // ascending id; priority ordering happens later
};

struct TransferOrder {
    CenterId supplier_id;
    CenterId consumer_id;
    CommodityId commodity;
    Quantity quantity = 0;
    Money unit_cost = 0.0;
    Tick tick = 0;
    Relation tier = Relation::OtherZone;
};

// One consumer waiting in a supplier's priority queue.
struct QueueEntry {
    CenterId consumer_id;
    Quantity deficit = 0;
    Relation tier = Relation::OtherZone; // supplier-relative hierarchy tier
    double urgency = 0.0;
    Money unit_cost = 0.0;
};

// Assign each consumer to the supplier with maximal force; ties go to the
// ascending supplier id. Non-positive evaluations are ignored. Output is
// sorted by (commodity, supplier id).
std::vector<Cluster> build_clusters(const std::vector<ForceEvaluation>& evals);

// Priority order of one supplier's queue: hierarchy tier first (same state,
// then same zone, then other zones), urgency descending within a tier,
// consumer id ascending as the final tie-break.
std::vector<QueueEntry> build_priority_queue(std::vector<QueueEntry> members);

struct Allocation {
    CenterId consumer_id;
    Quantity quantity = 0;
};

// Greedy walk down the queue: each consumer gets min(remaining surplus,
// deficit) until the surplus runs out. Zero-quantity grants are not emitted.
std::vector<Allocation> allocate(Quantity supplier_surplus, std::span<const QueueEntry> queue);

struct TransferOutcome {
    Quantity delivered = 0; // tonnes the consumer actually absorbed
    Quantity returned = 0;  // clipped at consumer capacity and handed back
    bool stale = false;     // shrunk or dropped against live stocks
};

// Move the ordered quantity from supplier to consumer against live stocks.
// The order is re-validated at execution: if the supplier's surplus shrank
// since planning the order is shrunk (or dropped) and logged as stale. The
// consumer side is clamped only by capacity; a clipped remainder goes back
// to the supplier and is logged. Total system stock never changes.
TransferOutcome execute_transfer(World& world, const TransferOrder& order);

// Deactivate consumers whose deficit hit zero and suppliers whose surplus is
// shed. Centers persist; only their participation in matching ends. Urgency
// state and the consumer's open announcement are discarded.
void retire_agents(World& world);

} // namespace grainflow
