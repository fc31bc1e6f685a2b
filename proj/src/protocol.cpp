#include "grainflow/protocol.hpp"

#include "grainflow/errors.hpp"

#include <algorithm>

namespace grainflow {

std::size_t NetworkGraph::edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& [node, neighbors] : adjacency) degree_sum += neighbors.size();
    return degree_sum / 2;
}

bool NetworkGraph::is_connected() const {
    if (adjacency.empty()) return true;
    std::set<CenterId> seen;
    std::vector<CenterId> frontier{adjacency.begin()->first};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<CenterId> next;
        for (const auto& node : frontier) {
            for (const auto& n : adjacency.at(node)) {
                if (seen.insert(n).second) next.push_back(n);
            }
        }
        frontier = std::move(next);
    }
    return seen.size() == adjacency.size();
}

NetworkGraph make_geometric_graph(const std::vector<Center>& centers, double radius) {
    if (radius <= 0.0) throw ConfigError("geometric graph radius must be positive");
    NetworkGraph g;
    for (const auto& c : centers) g.adjacency[c.id];
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            if (distance(centers[i].geo_position, centers[j].geo_position) <= radius) {
                g.adjacency[centers[i].id].push_back(centers[j].id);
                g.adjacency[centers[j].id].push_back(centers[i].id);
            }
        }
    }
    for (auto& [node, neighbors] : g.adjacency) std::sort(neighbors.begin(), neighbors.end());
    return g;
}

NetworkGraph make_explicit_graph(const std::vector<CenterId>& nodes,
                                 const std::vector<std::pair<CenterId, CenterId>>& edges) {
    NetworkGraph g;
    for (const auto& n : nodes) g.adjacency[n];
    for (const auto& [a, b] : edges) {
        if (a == b) throw ConfigError("self-loop edge on '" + a + "'");
        if (!g.has_node(a)) throw ConfigError("edge references unknown center id '" + a + "'");
        if (!g.has_node(b)) throw ConfigError("edge references unknown center id '" + b + "'");
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& [node, neighbors] : g.adjacency) std::sort(neighbors.begin(), neighbors.end());
    return g;
}

FloodPlan plan_flood(const NetworkGraph& graph, const CenterId& origin) {
    if (!graph.has_node(origin)) throw ProtocolError("flood origin '" + origin + "' not in graph");
    FloodPlan plan;
    std::set<CenterId> seen{origin};
    std::map<CenterId, CenterId> first_sender;
    std::vector<CenterId> frontier{origin};
    while (!frontier.empty()) {
        std::vector<Transmission> layer;
        std::vector<CenterId> next;
        for (const auto& from : frontier) {
            for (const auto& to : graph.adjacency.at(from)) {
                // never echo back to the node the message first came from
                if (auto it = first_sender.find(from); it != first_sender.end() && it->second == to)
                    continue;
                Transmission t{from, to, false};
                if (seen.insert(to).second) {
                    t.first_delivery = true;
                    first_sender[to] = from;
                    next.push_back(to);
                    plan.delivered.push_back(to);
                }
                layer.push_back(std::move(t));
            }
        }
        plan.transmissions += layer.size();
        if (!layer.empty()) plan.layers.push_back(std::move(layer));
        frontier = std::move(next);
    }
    std::sort(plan.delivered.begin(), plan.delivered.end());
    return plan;
}

FloodResult flood(const NetworkGraph& graph, const CenterId& origin, const DemandAnnouncement&) {
    const FloodPlan plan = plan_flood(graph, origin);
    return {{plan.delivered.begin(), plan.delivered.end()}, plan.transmissions};
}

DemandAnnouncement announce_demand(const Center& consumer, const CommodityId& commodity,
                                   double urgency, MsgId fresh_id) {
    const Role role = classify_role(consumer, commodity);
    if (role.kind != RoleKind::Consumer)
        throw ProtocolError("announce_demand: '" + consumer.id + "' has no deficit of '" +
                            commodity + "'");
    return {std::move(fresh_id), consumer.id, commodity, role.magnitude, urgency};
}

std::optional<SupplyResponse> respond_supply(const Center& supplier, const DemandAnnouncement& ann) {
    const Role role = classify_role(supplier, ann.commodity);
    if (role.kind != RoleKind::Supplier) return std::nullopt;
    return SupplyResponse{supplier.id, ann.msg_id, ann.commodity, role.magnitude};
}

std::optional<ForceEvaluation> ConsumerView::global_best() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.front();
}

void ConsumerView::update_global_best(const ForceEvaluation& eval) {
    if (eval.consumer_id != consumer_id_ || eval.commodity != commodity_)
        throw ProtocolError("update_global_best: evaluation belongs to another consumer");
    if (!(eval.force > 0.0)) return; // no attraction
    auto existing = std::find_if(queue_.begin(), queue_.end(), [&](const ForceEvaluation& e) {
        return e.supplier_id == eval.supplier_id;
    });
    if (existing != queue_.end()) queue_.erase(existing);
    auto pos = std::find_if(queue_.begin(), queue_.end(), [&](const ForceEvaluation& e) {
        return e.force < eval.force || (e.force == eval.force && e.supplier_id > eval.supplier_id);
    });
    queue_.insert(pos, eval);
}

ForceEvaluation ConsumerView::next_supplier() {
    if (queue_.empty())
        throw ExhaustedError("next_supplier: queue exhausted for '" + consumer_id_ + "'");
    ForceEvaluation head = queue_.front();
    queue_.erase(queue_.begin());
    return head;
}

} // namespace grainflow
