#include "grainflow/sim.hpp"

#include "grainflow/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace grainflow {

namespace {

struct TickCounters {
    Quantity transferred = 0;
    Money cost = 0.0;
    std::uint64_t messages = 0;
    std::uint64_t clusters = 0;
};

MsgId next_msg_id(World& world) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "m%06llu",
                  static_cast<unsigned long long>(world.next_msg_seq++));
    return buf;
}

void activate_consumer(World& world, const Scenario& scenario, RngStream& rng,
                       const PairKey& pair) {
    world.active_consumers[pair.commodity].insert(pair.center);
    UrgencyState u;
    u.g0 = rng.uniform(scenario.urgency.g0_min, scenario.urgency.g0_max);
    u.current = u.g0;
    u.waiting_time = 0;
    world.urgencies[pair] = u;
    world.activation_tick[pair] = world.clock;
    world.pending_announcements.push_back(pair);
}

// Pick a center that can still become a consumer of the commodity, remove m
// tonnes of its stock and activate it. Consumer arrivals drain stock (local
// consumption); supplier arrivals below inject it (procurement).
void realize_consumer_arrival(World& world, const Scenario& scenario, RngStream& rng,
                              const CommodityId& commodity) {
    std::vector<Center*> eligible;
    for (auto& c : world.centers) {
        if (reserve_of(c, commodity) <= 0) continue;
        if (world.is_active_consumer({c.id, commodity})) continue;
        eligible.push_back(&c);
    }
    if (eligible.empty()) {
        world.diagnostics.push_back("arrival skipped: no center can become a consumer of " +
                                    commodity);
        return;
    }
    Center* target = eligible[rng.uniform_index(eligible.size())];
    const Quantity m = rng.uniform_int(scenario.arrivals.delta_min, scenario.arrivals.delta_max);
    const Quantity delta = reserve_of(*target, commodity) - m - stock_of(*target, commodity);
    auto applied = apply_inventory_delta(*target, commodity, delta);
    *target = std::move(applied.center);
    world.add_trace(TraceKind::Arrival, target->id, "-", commodity, applied.absorbed, "-");

    if (world.is_active_supplier(target->id, commodity))
        world.active_suppliers[commodity].erase(target->id);
    if (classify_role(*target, commodity).kind == RoleKind::Consumer)
        activate_consumer(world, scenario, rng, {target->id, commodity});
}

void realize_supplier_arrival(World& world, const Scenario& scenario, RngStream& rng,
                              const CommodityId& commodity) {
    std::vector<Center*> eligible;
    for (auto& c : world.centers) {
        if (capacity_of(c, commodity) <= reserve_of(c, commodity)) continue;
        if (world.is_active_supplier(c.id, commodity)) continue;
        eligible.push_back(&c);
    }
    if (eligible.empty()) {
        world.diagnostics.push_back("arrival skipped: no center can become a supplier of " +
                                    commodity);
        return;
    }
    Center* target = eligible[rng.uniform_index(eligible.size())];
    const Quantity m = rng.uniform_int(scenario.arrivals.delta_min, scenario.arrivals.delta_max);
    const Quantity delta = reserve_of(*target, commodity) + m - stock_of(*target, commodity);
    auto applied = apply_inventory_delta(*target, commodity, delta);
    if (applied.absorbed < delta) world.metrics.overflow_clipped += delta - applied.absorbed;
    *target = std::move(applied.center);
    world.add_trace(TraceKind::Arrival, target->id, "-", commodity, applied.absorbed, "-");

    if (world.is_active_consumer({target->id, commodity}))
        drop_consumer_state(world, {target->id, commodity});
    if (classify_role(*target, commodity).kind == RoleKind::Supplier)
        world.active_suppliers[commodity].insert(target->id);
}

void stage_arrivals(World& world, const Scenario& scenario, RngStream& rng) {
    for (const auto& commodity : scenario.commodities) {
        const auto counts =
            sample_arrivals(scenario.lambda_c_for(commodity.id), scenario.lambda_s_for(commodity.id), rng);
        for (std::int64_t i = 0; i < counts.consumers; ++i)
            realize_consumer_arrival(world, scenario, rng, commodity.id);
        for (std::int64_t i = 0; i < counts.suppliers; ++i)
            realize_supplier_arrival(world, scenario, rng, commodity.id);
    }
}

void deliver_response(World& world, const SupplyResponse& response, const CenterId& consumer_id) {
    const PairKey pair{consumer_id, response.commodity};
    if (!world.is_active_consumer(pair)) return; // consumer already satisfied
    world.known_suppliers[pair].insert(response.supplier_id);
    world.add_trace(TraceKind::Response, response.supplier_id, consumer_id, response.commodity,
                    response.quantity_available, response.in_reply_to);
}

void advance_flood_layer(World& world, ActiveFlood& flood, TickCounters& counters) {
    const auto& layer = flood.plan.layers[flood.next_layer];
    for (const auto& tx : layer) {
        world.add_trace(TraceKind::FloodTx, tx.from, tx.to, flood.msg.commodity,
                        flood.msg.quantity_needed, flood.msg.msg_id);
        counters.messages += 1;
        world.metrics.total_messages += 1;
        world.flood_tx_counts[flood.msg.msg_id] += 1;
        if (tx.first_delivery) world.announcement_delivered[flood.msg.msg_id].insert(tx.to);
    }
    flood.next_layer += 1;
}

void stage_messaging(World& world, const Scenario& scenario, TickCounters& counters) {
    const bool instantaneous = scenario.sim.messaging == MessagingMode::Instantaneous;

    // deliver responses that were in transit
    {
        std::vector<ScheduledResponse> keep;
        for (auto& sched : world.response_queue) {
            if (sched.deliver_at <= world.clock)
                deliver_response(world, sched.response, sched.consumer_id);
            else
                keep.push_back(std::move(sched));
        }
        world.response_queue = std::move(keep);
    }

    // turn queued demand announcements into floods
    for (const auto& pair : world.pending_announcements) {
        if (!world.is_active_consumer(pair)) continue; // satisfied before it could speak
        const Center* consumer = world.find_center(pair.center);
        const auto& urgency = world.urgencies.at(pair);
        deactivate_announcement(world, pair); // a re-announcement replaces the old message
        DemandAnnouncement ann =
            announce_demand(*consumer, pair.commodity, urgency.current, next_msg_id(world));
        world.active_announcements[ann.msg_id] = ann;
        world.current_announcement[pair] = ann.msg_id;
        world.flood_tx_counts[ann.msg_id] = 0;
        world.floods.push_back({ann, plan_flood(world.graph, pair.center), 0});
    }
    world.pending_announcements.clear();

    // advance floods one hop (or run them to completion)
    for (auto& flood : world.floods) {
        if (instantaneous) {
            while (!flood.done()) advance_flood_layer(world, flood, counters);
        } else if (!flood.done()) {
            advance_flood_layer(world, flood, counters);
        }
    }
    std::vector<ActiveFlood> still_running;
    for (auto& flood : world.floods) {
        if (!flood.done()) {
            still_running.push_back(std::move(flood));
        } else if (!world.active_announcements.contains(flood.msg.msg_id)) {
            // the demand died while the flood was in the air; forget the message
            world.announcement_delivered.erase(flood.msg.msg_id);
            std::erase_if(world.responded,
                          [&](const auto& p) { return p.second == flood.msg.msg_id; });
        }
    }
    world.floods = std::move(still_running);

    // every supplier that has seen a live announcement answers it once; a
    // center that turned supplier later responds as soon as it can
    for (const auto& [msg_id, ann] : world.active_announcements) {
        auto delivered = world.announcement_delivered.find(msg_id);
        if (delivered == world.announcement_delivered.end()) continue;
        for (const auto& supplier_id : delivered->second) {
            if (world.responded.contains({supplier_id, msg_id})) continue;
            const Center* supplier = world.find_center(supplier_id);
            const auto response = respond_supply(*supplier, ann);
            if (!response) continue;
            world.responded.insert({supplier_id, msg_id});
            if (instantaneous)
                deliver_response(world, *response, ann.consumer_id);
            else
                world.response_queue.push_back({world.clock + 1, *response, ann.consumer_id});
        }
    }
}

void stage_urgency(World& world, const Scenario& scenario) {
    for (auto& [pair, urgency] : world.urgencies) {
        if (world.activation_tick.at(pair) == world.clock) continue; // born this tick
        urgency = urgency_update(urgency, scenario.urgency, 1);
    }
}

void stage_forces(World& world, const Scenario& scenario) {
    world.views.clear();
    world.current_evals.clear();
    for (const auto& [commodity, consumers] : world.active_consumers) {
        for (const auto& consumer_id : consumers) {
            const PairKey pair{consumer_id, commodity};
            const Center* consumer = world.find_center(consumer_id);
            const double mc = static_cast<double>(signed_mass(*consumer, commodity));
            const double g = world.urgencies.at(pair).current;
            ConsumerView view(consumer_id, commodity);
            auto known = world.known_suppliers.find(pair);
            if (known != world.known_suppliers.end() && mc < 0.0) {
                for (const auto& supplier_id : known->second) {
                    const Center* supplier = world.find_center(supplier_id);
                    const double ms = static_cast<double>(signed_mass(*supplier, commodity));
                    if (ms <= 0.0) continue; // shed its surplus; queue advances past it
                    const Money r = unit_cost(*supplier, *consumer, commodity, scenario.costs);
                    const double force = pair_force(mc, ms, g, r);
                    if (!(force > 0.0)) continue;
                    ForceEvaluation eval{consumer_id, supplier_id, commodity, force, r};
                    view.update_global_best(eval);
                    world.current_evals.push_back(std::move(eval));
                }
            }
            world.views.emplace(pair, std::move(view));
        }
    }
}

std::vector<Cluster> stage_clusters(World& world, const Scenario& scenario,
                                    TickCounters& counters) {
    auto clusters = build_clusters(world.current_evals);
    counters.clusters = clusters.size();

    const auto& kin = scenario.sim.kinematics;
    const int rounds = scenario.sim.epoch_mode ? 200 : 1;
    for (int round = 0; round < rounds; ++round) {
        double max_move = 0.0;
        for (const auto& cluster : clusters) {
            const Center* supplier = world.find_center(cluster.supplier_id);
            const double supplier_radius = virtual_radius(
                classify_role(*supplier, cluster.commodity).magnitude, kin.r0, kin.m_ref);
            for (const auto& member : cluster.members) {
                Center* consumer = world.find_center(member);
                const double consumer_radius = virtual_radius(
                    classify_role(*consumer, cluster.commodity).magnitude, kin.r0, kin.m_ref);
                const Vec2 moved =
                    virtual_step(consumer->virtual_position, supplier->virtual_position,
                                 supplier_radius + consumer_radius, kin.beta);
                max_move = std::max(max_move, distance(moved, consumer->virtual_position));
                consumer->virtual_position = moved;
            }
        }
        if (max_move < 1e-12) break;
    }
    return clusters;
}

std::vector<TransferOrder> stage_allocate(World& world, const Scenario& scenario,
                                          const std::vector<Cluster>& clusters) {
    std::vector<TransferOrder> orders;
    for (const auto& cluster : clusters) {
        const Center* supplier = world.find_center(cluster.supplier_id);
        const Quantity surplus = signed_mass(*supplier, cluster.commodity);
        if (surplus <= 0) continue;
        std::vector<QueueEntry> members;
        members.reserve(cluster.members.size());
        for (const auto& consumer_id : cluster.members) {
            const Center* consumer = world.find_center(consumer_id);
            const Role role = classify_role(*consumer, cluster.commodity);
            if (role.kind != RoleKind::Consumer) continue;
            QueueEntry entry;
            entry.consumer_id = consumer_id;
            entry.deficit = role.magnitude;
            entry.tier = hierarchy_relation(*supplier, *consumer);
            entry.urgency = world.urgencies.at({consumer_id, cluster.commodity}).current;
            entry.unit_cost = unit_cost(*supplier, *consumer, cluster.commodity, scenario.costs);
            members.push_back(std::move(entry));
        }
        const auto queue = build_priority_queue(std::move(members));
        for (const auto& grant : allocate(surplus, queue)) {
            const auto entry = std::find_if(queue.begin(), queue.end(), [&](const QueueEntry& e) {
                return e.consumer_id == grant.consumer_id;
            });
            orders.push_back({cluster.supplier_id, grant.consumer_id, cluster.commodity,
                              grant.quantity, entry->unit_cost, world.clock, entry->tier});
        }
    }
    return orders;
}

void stage_execute(World& world, const std::vector<TransferOrder>& orders,
                   TickCounters& counters) {
    for (const auto& order : orders) {
        const auto outcome = execute_transfer(world, order);
        counters.transferred += outcome.delivered;
        counters.cost += static_cast<Money>(outcome.delivered) * order.unit_cost;
    }
}

bool pair_has_traffic(const World& world, const PairKey& pair) {
    for (const auto& f : world.floods)
        if (f.msg.consumer_id == pair.center && f.msg.commodity == pair.commodity) return true;
    for (const auto& r : world.response_queue)
        if (r.consumer_id == pair.center && r.response.commodity == pair.commodity) return true;
    for (const auto& p : world.pending_announcements)
        if (p == pair) return true;
    return false;
}

void stage_retire_and_reannounce(World& world) {
    retire_agents(world);
    // consumers whose queue came up empty re-announce next tick, but only
    // once nothing of theirs is still moving through the network
    for (const auto& [commodity, consumers] : world.active_consumers) {
        for (const auto& consumer_id : consumers) {
            const PairKey pair{consumer_id, commodity};
            auto view = world.views.find(pair);
            if (view != world.views.end() && !view->second.empty()) continue;
            if (pair_has_traffic(world, pair)) continue;
            world.pending_announcements.push_back(pair);
        }
    }
}

void finalize_tick(World& world, const TickCounters& counters) {
    MetricsRow row;
    row.tick = world.clock;
    row.transferred = counters.transferred;
    row.cost = counters.cost;
    row.unmet_deficit = world.open_deficit_total();
    row.messages = counters.messages;
    std::uint64_t consumers = 0, suppliers = 0;
    for (const auto& [commodity, set] : world.active_consumers) consumers += set.size();
    for (const auto& [commodity, set] : world.active_suppliers) suppliers += set.size();
    row.active_consumers = consumers;
    row.active_suppliers = suppliers;
    row.clusters = counters.clusters;
    world.metrics.rows.push_back(row);
    world.metrics.unmet_deficit = row.unmet_deficit;
    world.clock += 1;
}

void check_step_config(const Scenario& scenario) {
    for (const auto& commodity : scenario.commodities) {
        if (!scenario.costs.base_price.contains(commodity.id))
            throw ConfigError("no base price for commodity '" + commodity.id + "'");
    }
    if (!(scenario.sim.kinematics.beta > 0.0 && scenario.sim.kinematics.beta <= 1.0))
        throw ConfigError("beta out of range");
    if (!(scenario.sim.kinematics.r0 > 0.0) || scenario.sim.kinematics.m_ref <= 0)
        throw ConfigError("bad kinematics scales");
}

} // namespace

ArrivalCounts sample_arrivals(double lambda_c, double lambda_s, RngStream& rng) {
    if (lambda_c < 0.0 || lambda_s < 0.0) throw DomainError("arrival rates must be non-negative");
    ArrivalCounts counts;
    counts.consumers = rng.poisson(lambda_c);
    counts.suppliers = rng.poisson(lambda_s);
    return counts;
}

World make_world(const Scenario& scenario, RngStream& rng) {
    World world;
    world.centers = scenario.centers;
    std::sort(world.centers.begin(), world.centers.end(),
              [](const Center& a, const Center& b) { return a.id < b.id; });
    world.graph = build_graph(scenario);

    for (const auto& center : world.centers) {
        for (const auto& commodity : scenario.commodities) {
            const Role role = classify_role(center, commodity.id);
            if (role.kind == RoleKind::Supplier) {
                world.active_suppliers[commodity.id].insert(center.id);
            } else if (role.kind == RoleKind::Consumer) {
                activate_consumer(world, scenario, rng, {center.id, commodity.id});
            }
        }
    }
    return world;
}

void step(World& world, RngStream& rng, const Scenario& scenario) {
    check_step_config(scenario);
    TickCounters counters;
    stage_arrivals(world, scenario, rng);
    stage_messaging(world, scenario, counters);
    stage_urgency(world, scenario);
    stage_forces(world, scenario);
    const auto clusters = stage_clusters(world, scenario, counters);
    const auto orders = stage_allocate(world, scenario, clusters);
    stage_execute(world, orders, counters);
    stage_retire_and_reannounce(world);
    finalize_tick(world, counters);
}

bool check_termination(const World& world, const Scenario& scenario) {
    if (world.clock >= scenario.sim.max_ticks) return true;
    bool any_consumer = false;
    for (const auto& [commodity, set] : world.active_consumers) any_consumer |= !set.empty();
    if (any_consumer || world.messages_in_flight()) return false;
    for (const auto& commodity : scenario.commodities) {
        if (scenario.lambda_c_for(commodity.id) > 0.0 || scenario.lambda_s_for(commodity.id) > 0.0)
            return false;
    }
    return true;
}

RunResult run(const Scenario& scenario, std::uint64_t seed, std::optional<Tick> max_ticks_override,
              const ProgressFn& progress) {
    Scenario cfg = scenario;
    if (max_ticks_override) cfg.sim.max_ticks = *max_ticks_override;
    const auto issues = validate_scenario(cfg);
    if (!issues.empty()) throw ConfigError("invalid scenario: " + issues.front().message);

    RngStream rng(seed);
    World world = make_world(cfg, rng);
    while (!check_termination(world, cfg)) {
        step(world, rng, cfg);
        if (progress) progress(world);
    }
    RunResult result;
    result.metrics = world.metrics;
    result.trace = world.trace;
    result.ticks_run = world.clock;
    result.final_unmet = world.open_deficit_total();
    result.diagnostics = world.diagnostics;
    return result;
}

} // namespace grainflow
