#pragma once

#include <string>
#include <vector>

#include "adlmon/activity_model.hpp"

namespace adlmon::testing {

inline std::string data_dir() {
#ifdef ADLMON_DATA_DIR
    return ADLMON_DATA_DIR;
#else
    return "data";
#endif
}

/// The six-step eating-lunch definition, built in code so tests do not
/// depend on the JSON loader.
inline ComplexActivityDefinition eating_lunch() {
    ComplexActivityDefinition def;
    def.name = "eating lunch";
    def.zone = "kitchen";
    def.atomics = {
        {"At1", "Standing", 0.08, true, false, false, {}},
        {"At2", "Walking towards dining table", 0.20, true, false, true,
         {{13, 17}, {14, 18}, {15, 19}, {16, 20}}},
        {"At3", "Serving food on a plate", 0.25, false, false, true, {{7, 11}, {8, 12}}},
        {"At4", "Washing hand/using hand sanitizer", 0.20, false, false, true, {{7, 11}, {8, 12}}},
        {"At5", "Sitting down", 0.08, false, true, false, {}},
        {"At6", "Starting to eat", 0.19, false, true, true,
         {{6, 3}, {7, 3}, {8, 3}, {6, 4}, {7, 4}, {8, 4},
          {10, 3}, {11, 3}, {12, 3}, {10, 4}, {11, 4}, {12, 4}}},
    };
    def.contexts = {
        {"Ct1", "Lights on", 0.08, true, false, false, "At1"},
        {"Ct2", "Dining area", 0.20, true, false, true, "At2"},
        {"Ct3", "Food present", 0.25, false, false, true, "At3"},
        {"Ct4", "Plate present", 0.20, false, false, true, "At4"},
        {"Ct5", "Sitting options available", 0.08, false, true, false, "At5"},
        {"Ct6", "Food quality and taste", 0.19, false, true, true, "At6"},
    };
    return def;
}

/// Generic valid definition with a_t atomics, the first c_t of them core.
/// Atomic 0 is start, the last atomic is end, weights uniform.
inline ComplexActivityDefinition synthetic_definition(std::size_t a_t, std::size_t c_t) {
    ComplexActivityDefinition def;
    def.name = "synthetic " + std::to_string(a_t) + "/" + std::to_string(c_t);
    def.zone = "office";
    const double w = 1.0 / static_cast<double>(a_t);
    for (std::size_t i = 0; i < a_t; ++i) {
        AtomicActivity a;
        a.id = "At" + std::to_string(i + 1);
        a.label = a.id;
        a.weight = w;
        a.is_start = (i == 0);
        a.is_end = (i + 1 == a_t);
        a.is_core = (i < c_t);
        def.atomics.push_back(a);
        ContextAttribute c;
        c.id = "Ct" + std::to_string(i + 1);
        c.label = c.id;
        c.weight = w;
        c.is_start = a.is_start;
        c.is_end = a.is_end;
        c.is_core = a.is_core;
        c.paired_atomic = a.id;
        def.contexts.push_back(c);
    }
    // Uniform weights do not always sum to exactly 1; absorb the
    // residual into the last atomic.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < a_t; ++i) sum += def.atomics[i].weight;
    def.atomics.back().weight = 1.0 - sum;
    def.contexts.back().weight = def.atomics.back().weight;
    return def;
}

} // namespace adlmon::testing
