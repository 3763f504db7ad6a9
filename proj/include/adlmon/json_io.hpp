#pragma once

#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "adlmon/activity_model.hpp"
#include "adlmon/edscca.hpp"
#include "adlmon/errors.hpp"
#include "adlmon/zone_model.hpp"

namespace adlmon {

using json = nlohmann::json;

// ---- complex activity definitions ----

inline json to_json(const ComplexActivityDefinition& def) {
    json atomics = json::array();
    for (const auto& a : def.atomics) {
        json pairs = json::array();
        for (const auto& jp : a.joint_pairs) pairs.push_back({jp.a, jp.b});
        atomics.push_back({{"id", a.id},
                           {"label", a.label},
                           {"weight", a.weight},
                           {"start", a.is_start},
                           {"end", a.is_end},
                           {"core", a.is_core},
                           {"joint_pairs", pairs}});
    }
    json contexts = json::array();
    for (const auto& c : def.contexts)
        contexts.push_back({{"id", c.id}, {"label", c.label}, {"paired_atomic", c.paired_atomic}});
    return {{"name", def.name}, {"zone", def.zone}, {"atomics", atomics}, {"contexts", contexts}};
}

inline ComplexActivityDefinition definition_from_json(const json& j) {
    ComplexActivityDefinition def;
    try {
        def.name = j.at("name").get<std::string>();
        def.zone = j.value("zone", "");
        for (const auto& ja : j.at("atomics")) {
            AtomicActivity a;
            a.id = ja.at("id").get<std::string>();
            a.label = ja.value("label", a.id);
            a.weight = ja.at("weight").get<double>();
            a.is_start = ja.value("start", false);
            a.is_end = ja.value("end", false);
            a.is_core = ja.value("core", false);
            for (const auto& jp : ja.value("joint_pairs", json::array()))
                a.joint_pairs.push_back({jp.at(0).get<int>(), jp.at(1).get<int>()});
            def.atomics.push_back(std::move(a));
        }
        for (const auto& jc : j.at("contexts")) {
            ContextAttribute c;
            c.id = jc.at("id").get<std::string>();
            c.label = jc.value("label", c.id);
            c.paired_atomic = jc.at("paired_atomic").get<std::string>();
            // Weight and markers mirror the paired atomic unless given.
            if (const AtomicActivity* a = def.find_atomic(c.paired_atomic)) {
                c.weight = jc.value("weight", a->weight);
                c.is_start = jc.value("start", a->is_start);
                c.is_end = jc.value("end", a->is_end);
                c.is_core = jc.value("core", a->is_core);
            }
            def.contexts.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("definition JSON: ") + e.what());
    }
    validate(def);
    return def;
}

inline ComplexActivityDefinition load_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    return definition_from_json(j);
}

/// A definitions file holds either one definition object or an array.
inline std::vector<ComplexActivityDefinition> load_definitions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    std::vector<ComplexActivityDefinition> out;
    if (j.is_array())
        for (const auto& item : j) out.push_back(definition_from_json(item));
    else
        out.push_back(definition_from_json(j));
    return out;
}

// ---- zone maps ----

inline json to_json(const ZoneMap& map) {
    json zones = json::array();
    for (const auto& [name, z] : map.zones)
        zones.push_back({{"name", name},
                         {"allowed_activities", z.allowed_activities},
                         {"allowed_behaviors", z.allowed_behaviors}});
    return {{"zones", zones}, {"bedroom_equivalent", map.bedroom_equivalent}};
}

inline ZoneMap zonemap_from_json(const json& j) {
    ZoneMap map;
    try {
        for (const auto& jz : j.at("zones")) {
            Zone z;
            z.name = jz.at("name").get<std::string>();
            for (const auto& a : jz.value("allowed_activities", json::array()))
                z.allowed_activities.insert(a.get<std::string>());
            for (const auto& b : jz.value("allowed_behaviors", json::array()))
                z.allowed_behaviors.insert(b.get<std::string>());
            map.zones[z.name] = std::move(z);
        }
        for (const auto& b : j.value("bedroom_equivalent", json::array()))
            map.bedroom_equivalent.insert(b.get<std::string>());
    } catch (const json::exception& e) {
        throw IoError(std::string("zone map JSON: ") + e.what());
    }
    return map;
}

// ---- traces ----

inline json to_json(const ActivityTrace& trace) {
    json events = json::array();
    for (const auto& e : trace.events)
        events.push_back({{"atomic", e.atomic_id},
                          {"context", e.context_id},
                          {"behavior", e.behavior},
                          {"zone", e.zone},
                          {"t", e.timestamp}});
    return {{"zone", trace.zone}, {"events", events}};
}

inline json to_json(const std::vector<ActivityTrace>& traces) {
    json arr = json::array();
    for (const auto& t : traces) arr.push_back(to_json(t));
    return {{"traces", arr}};
}

inline ActivityTrace trace_from_json(const json& j) {
    ActivityTrace trace;
    try {
        trace.zone = j.value("zone", "");
        std::int64_t last_t = std::numeric_limits<std::int64_t>::min();
        for (const auto& je : j.value("events", json::array())) {
            TraceEvent e;
            e.atomic_id = je.value("atomic", "");
            e.context_id = je.value("context", "");
            e.behavior = je.value("behavior", "");
            e.zone = je.value("zone", trace.zone);
            e.timestamp = je.value("t", std::int64_t{0});
            if (e.timestamp < last_t)
                throw IoError("trace JSON: timestamps must be nondecreasing");
            last_t = e.timestamp;
            trace.events.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("trace JSON: ") + e.what());
    }
    return trace;
}

inline std::vector<ActivityTrace> load_traces(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    std::vector<ActivityTrace> out;
    for (const auto& jt : j.value("traces", json::array())) out.push_back(trace_from_json(jt));
    return out;
}

// ---- verdicts ----

inline json to_json(const Verdict& v) {
    return {{"outcome", to_string(v.outcome)}, {"branch", to_string(v.branch)}, {"reason", v.reason}};
}

} // namespace adlmon
