#include "grainflow/gravity.hpp"

#include "grainflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace grainflow {

double pair_force(double consumer_mass, double supplier_mass, double urgency, double unit_cost) {
    if (unit_cost <= 0.0) throw DomainError("pair_force: unit cost must be positive");
    if (urgency < 0.0) throw DomainError("pair_force: urgency must be non-negative");
    return -(urgency * consumer_mass * supplier_mass) / unit_cost;
}

Money unit_cost(const Center& supplier, const Center& consumer, const CommodityId& commodity,
                const CostParams& params) {
    auto it = params.base_price.find(commodity);
    if (it == params.base_price.end())
        throw ConfigError("unit_cost: no base price configured for commodity '" + commodity + "'");
    return it->second + params.handling_fee +
           params.transport_rate * distance(supplier.geo_position, consumer.geo_position);
}

UrgencyState urgency_update(UrgencyState u, const UrgencyParams& params, Tick dt) {
    if (dt < 0) throw DomainError("urgency_update: dt must be non-negative");
    u.waiting_time += dt;
    u.current = std::min(params.g_max, u.g0 + params.alpha * static_cast<double>(u.waiting_time));
    return u;
}

double virtual_radius(Quantity mass_magnitude, double r0, Quantity m_ref) {
    if (mass_magnitude < 0) throw DomainError("virtual_radius: mass must be non-negative");
    if (r0 <= 0.0 || m_ref <= 0) throw DomainError("virtual_radius: scale must be positive");
    return r0 * std::sqrt(static_cast<double>(mass_magnitude) / static_cast<double>(m_ref));
}

Vec2 virtual_step(Vec2 consumer_pos, Vec2 target_pos, double min_separation, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("virtual_step: beta must be in (0, 1]");
    if (min_separation < 0.0) throw DomainError("virtual_step: min_separation must be non-negative");
    const double d = distance(consumer_pos, target_pos);
    if (d <= min_separation || d == 0.0) return consumer_pos;
    const double pulled = std::max(min_separation, (1.0 - beta) * d);
    const double scale = pulled / d;
    return {target_pos.x + (consumer_pos.x - target_pos.x) * scale,
            target_pos.y + (consumer_pos.y - target_pos.y) * scale};
}

} // namespace grainflow
