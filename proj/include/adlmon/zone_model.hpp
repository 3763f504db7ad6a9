#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "adlmon/dataset.hpp"
#include "adlmon/errors.hpp"

namespace adlmon {

/// A labeled spatial region and what is known to happen there.
struct Zone {
    std::string name;
    std::set<std::string> allowed_activities;
    std::set<std::string> allowed_behaviors;

    friend bool operator==(const Zone&, const Zone&) = default;
};

/// Environment map: zones plus the subset where lying is a normal behavior.
struct ZoneMap {
    std::map<std::string, Zone> zones;
    std::set<std::string> bedroom_equivalent;

    bool has_zone(const std::string& name) const { return zones.count(name) != 0; }

    friend bool operator==(const ZoneMap&, const ZoneMap&) = default;
};

/// Infer the zone map from labeled records: one zone per distinct label,
/// allowed sets from the ground-truth labels observed there. Zones named
/// "bedroom" or "sleeping" seed the bedroom-equivalent set.
inline ZoneMap zones_from_dataset(const std::vector<SensorRecord>& records) {
    ZoneMap map;
    for (const auto& r : records) {
        Zone& z = map.zones[r.zone];
        z.name = r.zone;
        if (r.activity) z.allowed_activities.insert(*r.activity);
        if (r.behavior) z.allowed_behaviors.insert(*r.behavior);
    }
    for (const auto& [name, z] : map.zones)
        if (name == "bedroom" || name == "sleeping") map.bedroom_equivalent.insert(name);
    return map;
}

/// Default rule: every behavior is compatible everywhere except lying,
/// which is only compatible in bedroom-equivalent zones.
inline bool behavior_compatible(const ZoneMap& map, const std::string& zone,
                                const std::string& behavior) {
    if (!map.has_zone(zone) && map.bedroom_equivalent.count(zone) == 0)
        throw ValidationError("behavior_compatible: unknown zone '" + zone + "'");
    if (behavior != "lying") return true;
    return map.bedroom_equivalent.count(zone) != 0;
}

} // namespace adlmon
