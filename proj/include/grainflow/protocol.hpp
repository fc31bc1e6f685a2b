#pragma once

#include "grainflow/gravity.hpp"
#include "grainflow/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace grainflow {

using MsgId = std::string;

// Undirected communication graph between centers. Neighbor lists are kept
// sorted ascending, which fixes the forwarding order and makes traces and
// transmission counts deterministic.
struct NetworkGraph {
    std::map<CenterId, std::vector<CenterId>> adjacency;

    bool has_node(const CenterId& id) const { return adjacency.contains(id); }
    std::size_t node_count() const { return adjacency.size(); }
    std::size_t edge_count() const;
    bool is_connected() const;
};

// Connect every pair of centers whose geographic distance is <= radius.
NetworkGraph make_geometric_graph(const std::vector<Center>& centers, double radius);

// Build from an explicit undirected edge list. Rejects self-loops and
// endpoints that are not in `nodes`.
NetworkGraph make_explicit_graph(const std::vector<CenterId>& nodes,
                                 const std::vector<std::pair<CenterId, CenterId>>& edges);

struct DemandAnnouncement {
    MsgId msg_id;
    CenterId consumer_id;
    CommodityId commodity;
    Quantity quantity_needed = 0; // the consumer's deficit at emission
    double urgency = 0.0;         // G at emission
};

struct SupplyResponse {
    CenterId supplier_id;
    MsgId in_reply_to;
    CommodityId commodity;
    Quantity quantity_available = 0; // the supplier's surplus at response time
};

struct Transmission {
    CenterId from;
    CenterId to;
    bool first_delivery = false; // false means the receiver dropped a duplicate
};

// Relay flood of one announcement: the origin forwards to all neighbors, every
// first-time receiver forwards once to all neighbors except its first sender,
// duplicates are dropped by msg id. layers[h] holds the hop-h transmissions so
// the simulation can advance a flood one hop per tick.
struct FloodPlan {
    std::vector<std::vector<Transmission>> layers;
    std::vector<CenterId> delivered; // sorted; excludes the origin
    std::size_t transmissions = 0;   // edge traversals actually performed
};

FloodPlan plan_flood(const NetworkGraph& graph, const CenterId& origin);

struct FloodResult {
    std::set<CenterId> delivered;
    std::size_t transmissions = 0;
};

// Whole-flood contract: delivery to the origin's entire connected component,
// each node exactly once.
FloodResult flood(const NetworkGraph& graph, const CenterId& origin, const DemandAnnouncement& msg);

// The consumer's identification-and-requirement message. Throws ProtocolError
// unless the center currently is a consumer for the commodity.
DemandAnnouncement announce_demand(const Center& consumer, const CommodityId& commodity,
                                   double urgency, MsgId fresh_id);

// A center answers an announcement iff it currently holds surplus of that
// commodity; everyone else stays silent.
std::optional<SupplyResponse> respond_supply(const Center& supplier, const DemandAnnouncement& ann);

// Per-(consumer, commodity) supplier queue ordered by descending force,
// ties broken by ascending supplier id. The head is the global best.
class ConsumerView {
public:
    ConsumerView() = default;
    ConsumerView(CenterId consumer, CommodityId commodity)
        : consumer_id_(std::move(consumer)), commodity_(std::move(commodity)) {}

    const CenterId& consumer_id() const { return consumer_id_; }
    const CommodityId& commodity() const { return commodity_; }
    bool empty() const { return queue_.empty(); }
    std::size_t size() const { return queue_.size(); }
    const std::vector<ForceEvaluation>& queue() const { return queue_; }
    std::optional<ForceEvaluation> global_best() const;

    // Insert or replace the supplier's entry and restore the ordering.
    // Evaluations without positive force are ignored; re-inserting the current
    // best with a lower force may demote it.
    void update_global_best(const ForceEvaluation& eval);

    // Pop the head; the next entry becomes the global best. Throws
    // ExhaustedError on an empty queue (the consumer must re-announce later).
    ForceEvaluation next_supplier();

private:
    CenterId consumer_id_;
    CommodityId commodity_;
    std::vector<ForceEvaluation> queue_;
};

} // namespace grainflow
