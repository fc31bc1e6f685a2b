#include "grainflow/model.hpp"

#include <cmath>

namespace grainflow {

double distance(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

Quantity lookup(const std::map<CommodityId, Quantity>& m, const CommodityId& commodity) {
    auto it = m.find(commodity);
    return it == m.end() ? 0 : it->second;
}

} // namespace

Quantity stock_of(const Center& c, const CommodityId& commodity) {
    return lookup(c.stock, commodity);
}

Quantity reserve_of(const Center& c, const CommodityId& commodity) {
    return lookup(c.reserve, commodity);
}

Quantity capacity_of(const Center& c, const CommodityId& commodity) {
    return lookup(c.capacity, commodity);
}

Role classify_role(const Center& c, const CommodityId& commodity) {
    const Quantity stock = stock_of(c, commodity);
    const Quantity reserve = reserve_of(c, commodity);
    if (stock > reserve) return {RoleKind::Supplier, stock - reserve};
    if (stock < reserve) return {RoleKind::Consumer, reserve - stock};
    return {RoleKind::Neutral, 0};
}

Quantity signed_mass(const Center& c, const CommodityId& commodity) {
    return stock_of(c, commodity) - reserve_of(c, commodity);
}

InventoryDelta apply_inventory_delta(Center c, const CommodityId& commodity, Quantity delta) {
    const Quantity before = stock_of(c, commodity);
    const Quantity cap = capacity_of(c, commodity);
    // Wide arithmetic so an arbitrary int64 delta cannot overflow.
    __int128 after = static_cast<__int128>(before) + static_cast<__int128>(delta);
    if (after < 0) after = 0;
    if (after > cap) after = cap;
    const Quantity clamped = static_cast<Quantity>(after);
    c.stock[commodity] = clamped;
    return {std::move(c), clamped - before};
}

Relation hierarchy_relation(const Center& a, const Center& b) {
    if (a.hierarchy.state == b.hierarchy.state) return Relation::SameState;
    if (a.hierarchy.zone == b.hierarchy.zone) return Relation::SameZone;
    return Relation::OtherZone;
}

const char* relation_name(Relation r) {
    switch (r) {
    case Relation::SameState: return "same_state";
    case Relation::SameZone: return "same_zone";
    case Relation::OtherZone: return "other_zone";
    }
    return "?";
}

} // namespace grainflow
