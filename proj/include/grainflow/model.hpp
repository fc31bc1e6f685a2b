#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace grainflow {

// Quantities are whole tonnes. Keeping them integral makes conservation checks
// exact; there is no floating-point drift to absorb.
using Quantity = std::int64_t;
using Money = double;
using Tick = std::int64_t;
using CenterId = std::string;
using CommodityId = std::string;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

struct Commodity {
    CommodityId id;
    std::string name;
};

struct HierarchyLabel {
    std::string zone;
    std::string state;
    std::string district;
};

// A distribution center. geo_position is in abstract km and drives transport
// cost; virtual_position lives in the dimensionless clustering space and has
// no physical meaning.
struct Center {
    CenterId id;
    HierarchyLabel hierarchy;
    Vec2 geo_position;
    Vec2 virtual_position;
    std::map<CommodityId, Quantity> stock;
    std::map<CommodityId, Quantity> reserve;
    std::map<CommodityId, Quantity> capacity;
};

enum class RoleKind { Supplier, Consumer, Neutral };

// Per-commodity role. magnitude is the surplus (stock above reserve) for a
// supplier, the deficit (reserve minus stock) for a consumer, 0 for neutral.
struct Role {
    RoleKind kind = RoleKind::Neutral;
    Quantity magnitude = 0;
};

enum class Relation { SameState = 0, SameZone = 1, OtherZone = 2 };

// Absent map entries read as 0.
Quantity stock_of(const Center& c, const CommodityId& commodity);
Quantity reserve_of(const Center& c, const CommodityId& commodity);
Quantity capacity_of(const Center& c, const CommodityId& commodity);

Role classify_role(const Center& c, const CommodityId& commodity);

// Signed mass: +surplus for a supplier, -deficit for a consumer, 0 when
// neutral. |signed_mass| equals the Role magnitude.
Quantity signed_mass(const Center& c, const CommodityId& commodity);

struct InventoryDelta {
    Center center;
    Quantity absorbed = 0; // stock' - stock; differs from delta when clamped
};

// Applies delta to stock, clamped to [0, capacity]. Total function: any
// delta is accepted and the clipped remainder shows up in `absorbed`.
InventoryDelta apply_inventory_delta(Center c, const CommodityId& commodity, Quantity delta);

// SameState if state ids match, else SameZone if zone ids match, else OtherZone.
Relation hierarchy_relation(const Center& a, const Center& b);

const char* relation_name(Relation r);

} // namespace grainflow
