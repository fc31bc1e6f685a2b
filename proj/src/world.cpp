#include "grainflow/world.hpp"

#include <algorithm>

namespace grainflow {

const char* trace_kind_name(TraceKind k) {
    switch (k) {
    case TraceKind::FloodTx: return "flood_tx";
    case TraceKind::Response: return "response";
    case TraceKind::Transfer: return "transfer";
    case TraceKind::Retire: return "retire";
    case TraceKind::Arrival: return "arrival";
    }
    return "?";
}

Center* World::find_center(const CenterId& id) {
    auto it = std::lower_bound(centers.begin(), centers.end(), id,
                               [](const Center& c, const CenterId& key) { return c.id < key; });
    if (it == centers.end() || it->id != id) return nullptr;
    return &*it;
}

const Center* World::find_center(const CenterId& id) const {
    return const_cast<World*>(this)->find_center(id);
}

bool World::is_active_consumer(const PairKey& pair) const {
    auto it = active_consumers.find(pair.commodity);
    return it != active_consumers.end() && it->second.contains(pair.center);
}

bool World::is_active_supplier(const CenterId& id, const CommodityId& commodity) const {
    auto it = active_suppliers.find(commodity);
    return it != active_suppliers.end() && it->second.contains(id);
}

Quantity World::total_stock(const CommodityId& commodity) const {
    Quantity total = 0;
    for (const auto& c : centers) total += stock_of(c, commodity);
    return total;
}

Quantity World::open_deficit_total() const {
    Quantity total = 0;
    for (const auto& [commodity, consumers] : active_consumers) {
        for (const auto& id : consumers) {
            const Center* c = find_center(id);
            const Role role = classify_role(*c, commodity);
            if (role.kind == RoleKind::Consumer) total += role.magnitude;
        }
    }
    return total;
}

bool World::messages_in_flight() const {
    return !floods.empty() || !response_queue.empty() || !pending_announcements.empty();
}

void World::add_trace(TraceKind kind, std::string from, std::string to, std::string commodity,
                      Quantity qty, std::string msg_id) {
    trace.push_back({clock, kind, std::move(from), std::move(to), std::move(commodity), qty,
                     std::move(msg_id)});
}

namespace {

void gc_announcement(World& world, const MsgId& msg_id) {
    for (const auto& f : world.floods) {
        if (f.msg.msg_id == msg_id && !f.done()) return; // still propagating
    }
    world.announcement_delivered.erase(msg_id);
    std::erase_if(world.responded, [&](const auto& p) { return p.second == msg_id; });
}

} // namespace

void deactivate_announcement(World& world, const PairKey& pair) {
    auto it = world.current_announcement.find(pair);
    if (it == world.current_announcement.end()) return;
    const MsgId msg_id = it->second;
    world.current_announcement.erase(it);
    world.active_announcements.erase(msg_id);
    gc_announcement(world, msg_id);
}

void drop_consumer_state(World& world, const PairKey& pair) {
    deactivate_announcement(world, pair);
    if (auto it = world.active_consumers.find(pair.commodity); it != world.active_consumers.end())
        it->second.erase(pair.center);
    world.urgencies.erase(pair);
    world.activation_tick.erase(pair);
    world.known_suppliers.erase(pair);
    world.views.erase(pair);
    std::erase_if(world.pending_announcements, [&](const PairKey& p) { return p == pair; });
}

} // namespace grainflow
