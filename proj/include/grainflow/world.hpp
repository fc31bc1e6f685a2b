#pragma once

#include "grainflow/gravity.hpp"
#include "grainflow/model.hpp"
#include "grainflow/protocol.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace grainflow {

enum class TraceKind { FloodTx, Response, Transfer, Retire, Arrival };

const char* trace_kind_name(TraceKind k);

// One line of the run trace. Fields that do not apply hold "-" / 0.
struct TraceEvent {
    Tick tick = 0;
    TraceKind kind = TraceKind::FloodTx;
    std::string from = "-";
    std::string to = "-";
    std::string commodity = "-";
    Quantity qty = 0;
    std::string msg_id = "-";
};

struct MetricsRow {
    Tick tick = 0;
    Quantity transferred = 0;         // tonnes moved this tick
    Money cost = 0.0;                 // currency spent this tick
    Quantity unmet_deficit = 0;       // open deficit at end of tick
    std::uint64_t messages = 0;       // flood transmissions this tick
    std::uint64_t active_consumers = 0;
    std::uint64_t active_suppliers = 0;
    std::uint64_t clusters = 0;
};

struct Metrics {
    std::vector<MetricsRow> rows;
    Quantity total_transferred = 0;
    Money total_cost = 0.0;
    std::uint64_t total_messages = 0;
    Quantity unmet_deficit = 0;
    std::uint64_t stale_orders = 0;
    Quantity overflow_clipped = 0; // tonnes clipped at capacity (arrivals and deliveries)
};

struct PairKey {
    CenterId center;
    CommodityId commodity;
    auto operator<=>(const PairKey&) const = default;
};

struct ActiveFlood {
    DemandAnnouncement msg;
    FloodPlan plan;
    std::size_t next_layer = 0;

    bool done() const { return next_layer >= plan.layers.size(); }
};

struct ScheduledResponse {
    Tick deliver_at = 0;
    SupplyResponse response;
    CenterId consumer_id;
};

// Whole simulation state. Ordered containers everywhere: every per-tick sweep
// iterates in a fixed order, which is what makes replays byte-identical.
struct World {
    Tick clock = 0;
    std::vector<Center> centers; // sorted by id
    NetworkGraph graph;

    std::map<CommodityId, std::set<CenterId>> active_consumers;
    std::map<CommodityId, std::set<CenterId>> active_suppliers;

    std::map<PairKey, UrgencyState> urgencies;
    std::map<PairKey, Tick> activation_tick;
    std::map<PairKey, std::set<CenterId>> known_suppliers;
    std::map<PairKey, ConsumerView> views; // rebuilt every tick from live masses

    std::vector<ActiveFlood> floods;
    std::vector<ScheduledResponse> response_queue;
    std::vector<PairKey> pending_announcements;
    std::map<MsgId, DemandAnnouncement> active_announcements;
    std::map<PairKey, MsgId> current_announcement;
    std::map<MsgId, std::set<CenterId>> announcement_delivered;
    std::set<std::pair<CenterId, MsgId>> responded;
    std::map<MsgId, std::uint64_t> flood_tx_counts;
    std::uint64_t next_msg_seq = 1;

    std::vector<ForceEvaluation> current_evals; // positive-force pairs of the current tick

    Metrics metrics;
    std::vector<TraceEvent> trace;
    std::vector<std::string> diagnostics;

    Center* find_center(const CenterId& id);
    const Center* find_center(const CenterId& id) const;

    bool is_active_consumer(const PairKey& pair) const;
    bool is_active_supplier(const CenterId& id, const CommodityId& commodity) const;

    Quantity total_stock(const CommodityId& commodity) const;
    Quantity open_deficit_total() const;
    bool messages_in_flight() const;

    void add_trace(TraceKind kind, std::string from, std::string to, std::string commodity,
                   Quantity qty, std::string msg_id);
};

// Withdraw the pair's open announcement. Remembered delivery/response state is
// garbage-collected once no active flood still carries the message.
void deactivate_announcement(World& world, const PairKey& pair);

// Remove every piece of consumer-side bookkeeping for the pair: active-set
// membership, urgency, known suppliers, view, and the open announcement.
void drop_consumer_state(World& world, const PairKey& pair);

} // namespace grainflow
