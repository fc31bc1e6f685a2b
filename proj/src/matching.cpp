#include "grainflow/matching.hpp"

#include "grainflow/errors.hpp"

#include <algorithm>
#include <map>

namespace grainflow {

std::vector<Cluster> build_clusters(const std::vector<ForceEvaluation>& evals) {
    // argmax force per (commodity, consumer); ties go to the lower supplier id
    std::map<std::pair<CommodityId, CenterId>, const ForceEvaluation*> best;
    for (const auto& e : evals) {
        if (!(e.force > 0.0)) continue;
        auto key = std::make_pair(e.commodity, e.consumer_id);
        auto [it, inserted] = best.try_emplace(key, &e);
        if (inserted) continue;
        const ForceEvaluation* cur = it->second;
        if (e.force > cur->force || (e.force == cur->force && e.supplier_id < cur->supplier_id))
            it->second = &e;
    }
    std::map<std::pair<CommodityId, CenterId>, Cluster> clusters;
    for (const auto& [key, eval] : best) {
        Cluster& c = clusters[{eval->commodity, eval->supplier_id}];
        c.supplier_id = eval->supplier_id;
        c.commodity = eval->commodity;
        c.members.push_back(eval->consumer_id);
    }
    std::vector<Cluster> out;
    out.reserve(clusters.size());
    for (auto& [key, cluster] : clusters) {
        std::sort(cluster.members.begin(), cluster.members.end());
        out.push_back(std::move(cluster));
    }
    return out;
}

std::vector<QueueEntry> build_priority_queue(std::vector<QueueEntry> members) {
    std::sort(members.begin(), members.end(), [](const QueueEntry& a, const QueueEntry& b) {
        if (a.tier != b.tier) return a.tier < b.tier;
        if (a.urgency != b.urgency) return a.urgency > b.urgency;
        return a.consumer_id < b.consumer_id;
    });
    return members;
}

std::vector<Allocation> allocate(Quantity supplier_surplus, std::span<const QueueEntry> queue) {
    std::vector<Allocation> out;
    Quantity remaining = supplier_surplus;
    for (const auto& entry : queue) {
        if (remaining <= 0) break;
        const Quantity q = std::min(remaining, entry.deficit);
        if (q <= 0) continue;
        out.push_back({entry.consumer_id, q});
        remaining -= q;
    }
    return out;
}

TransferOutcome execute_transfer(World& world, const TransferOrder& order) {
    Center* supplier = world.find_center(order.supplier_id);
    Center* consumer = world.find_center(order.consumer_id);
    if (supplier == nullptr || consumer == nullptr)
        throw DomainError("execute_transfer: unknown center in order");

    TransferOutcome outcome;
    const Quantity live_surplus = signed_mass(*supplier, order.commodity);
    Quantity q = order.quantity;
    if (q <= 0) return outcome;
    if (live_surplus <= 0) {
        world.metrics.stale_orders += 1;
        world.diagnostics.push_back("StaleOrder: dropped transfer " + order.supplier_id + "->" +
                                    order.consumer_id + " of " + order.commodity);
        outcome.stale = true;
        return outcome;
    }
    if (q > live_surplus) {
        world.metrics.stale_orders += 1;
        world.diagnostics.push_back("StaleOrder: shrunk transfer " + order.supplier_id + "->" +
                                    order.consumer_id + " of " + order.commodity + " from " +
                                    std::to_string(q) + " to " + std::to_string(live_surplus));
        q = live_surplus;
        outcome.stale = true;
    }

    // Withdraw from the supplier; stock >= surplus >= q so this never clips.
    auto withdrawn = apply_inventory_delta(*supplier, order.commodity, -q);
    *supplier = std::move(withdrawn.center);

    auto delivered = apply_inventory_delta(*consumer, order.commodity, q);
    *consumer = std::move(delivered.center);
    outcome.delivered = delivered.absorbed;
    outcome.returned = q - delivered.absorbed;

    if (outcome.returned > 0) {
        auto back = apply_inventory_delta(*supplier, order.commodity, outcome.returned);
        *supplier = std::move(back.center);
        world.metrics.overflow_clipped += outcome.returned;
        world.diagnostics.push_back("CapacityClip: " + order.consumer_id + " returned " +
                                    std::to_string(outcome.returned) + " of " + order.commodity +
                                    " to " + order.supplier_id);
    }

    if (outcome.delivered > 0) {
        world.metrics.total_transferred += outcome.delivered;
        world.metrics.total_cost += static_cast<Money>(outcome.delivered) * order.unit_cost;
        world.add_trace(TraceKind::Transfer, order.supplier_id, order.consumer_id, order.commodity,
                        outcome.delivered, "-");
    }
    return outcome;
}

void retire_agents(World& world) {
    for (auto& [commodity, consumers] : world.active_consumers) {
        std::vector<CenterId> done;
        for (const auto& id : consumers) {
            const Center* c = world.find_center(id);
            if (classify_role(*c, commodity).kind != RoleKind::Consumer) done.push_back(id);
        }
        for (const auto& id : done) {
            drop_consumer_state(world, {id, commodity});
            world.add_trace(TraceKind::Retire, id, "-", commodity, 0, "-");
        }
    }
    for (auto& [commodity, suppliers] : world.active_suppliers) {
        std::vector<CenterId> done;
        for (const auto& id : suppliers) {
            const Center* c = world.find_center(id);
            if (classify_role(*c, commodity).kind != RoleKind::Supplier) done.push_back(id);
        }
        for (const auto& id : done) {
            suppliers.erase(id);
            world.add_trace(TraceKind::Retire, id, "-", commodity, 0, "-");
        }
    }
}

} // namespace grainflow
