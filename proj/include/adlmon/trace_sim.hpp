#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adlmon/activity_model.hpp"
#include "adlmon/edscca.hpp"
#include "adlmon/errors.hpp"

namespace adlmon {

/// Controls for synthetic trace generation.
struct SimConfig {
    enum class Policy { All, RandomN };

    std::uint64_t seed = 0;
    Policy policy = Policy::All;
    std::size_t n = 0;                  // trace count under RandomN
    std::string behavior_tail = "standing"; // behavior appended after the last event
    double mismatch_rate = 0.0;         // probability of pairing an atomic with a wrong context
};

namespace detail {

inline ActivityTrace trace_from_mask(const ComplexActivityDefinition& def, std::uint64_t mask,
                                     const SimConfig& cfg, std::mt19937_64& rng) {
    ActivityTrace trace;
    trace.zone = def.zone;
    std::int64_t t = 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < def.atomics.size(); ++i) {
        if (((mask >> i) & 1u) == 0) continue;
        const AtomicActivity& a = def.atomics[i];
        const ContextAttribute* c = def.context_for(a.id);
        TraceEvent e;
        e.atomic_id = a.id;
        e.context_id = c->id;
        if (cfg.mismatch_rate > 0.0 && unit(rng) < cfg.mismatch_rate) {
            // Swap in some other context attribute.
            const std::size_t other = (i + 1) % def.contexts.size();
            e.context_id = def.contexts[other].id;
            if (e.context_id == c->id && def.contexts.size() > 1)
                e.context_id = def.contexts[(i + 2) % def.contexts.size()].id;
        }
        e.behavior = "standing";
        e.zone = def.zone;
        e.timestamp = t++;
        trace.events.push_back(std::move(e));
    }
    if (!trace.events.empty()) {
        TraceEvent tail;
        tail.behavior = cfg.behavior_tail;
        tail.zone = def.zone;
        tail.timestamp = t;
        trace.events.push_back(std::move(tail));
    }
    return trace;
}

} // namespace detail

/// Generate traces from the instance space of a definition. Under
/// Policy::All one trace per performed-subset, in binary counting order
/// over the atomics list; the empty subset yields an empty-events trace.
inline std::vector<ActivityTrace> generate(const ComplexActivityDefinition& def,
                                           const SimConfig& cfg) {
    validate(def);
    const std::size_t a_t = def.atomic_count();
    std::mt19937_64 rng(cfg.seed);
    std::vector<ActivityTrace> out;
    if (cfg.policy == SimConfig::Policy::All) {
        if (a_t > 12)
            throw CapacityError("generate: a_t=" + std::to_string(a_t) +
                                " exceeds exhaustive cap of 12");
        const std::uint64_t total = std::uint64_t{1} << a_t;
        out.reserve(total);
        for (std::uint64_t mask = 0; mask < total; ++mask)
            out.push_back(detail::trace_from_mask(def, mask, cfg, rng));
    } else {
        const std::uint64_t space = alpha_count(def);
        std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
        out.reserve(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i)
            out.push_back(detail::trace_from_mask(def, pick(rng), cfg, rng));
    }
    return out;
}

/// Independent oracle for the branch algorithm: re-derives the expected
/// verdict by a direct scan of the trace against the definition, without
/// going through SemanticDefinition or edscca_decide.
inline Verdict label_trace(const ComplexActivityDefinition& def, const ActivityTrace& trace) {
    // An atomic counts as properly performed when some event pairs it
    // with its own context attribute.
    auto performed_properly = [&](const AtomicActivity& a) {
        const ContextAttribute* c = def.context_for(a.id);
        for (const auto& e : trace.events)
            if (e.atomic_id == a.id && c != nullptr && e.context_id == c->id) return true;
        return false;
    };

    bool start_ok = true, end_ok = true;
    for (const auto& a : def.atomics) {
        if (a.is_start && !performed_properly(a)) start_ok = false;
        if (a.is_end && !performed_properly(a)) end_ok = false;
    }

    // Trailing lying with no atomic performed in the lying run.
    bool trailing_lying = false;
    if (!trace.events.empty() && trace.events.back().behavior == "lying") {
        trailing_lying = true;
        for (auto it = trace.events.rbegin();
             it != trace.events.rend() && it->behavior == "lying"; ++it)
            if (!it->atomic_id.empty()) trailing_lying = false;
    }

    Verdict v;
    if (start_ok && end_ok) {
        v.branch = Branch::Completed;
        v.outcome = Outcome::NonEmergency;
    } else if (!start_ok && !end_ok) {
        v.branch = Branch::NoActivity;
        v.outcome = Outcome::NonEmergency;
    } else {
        v.branch = start_ok ? Branch::StartOnly : Branch::EndOnly;
        v.outcome = trailing_lying ? Outcome::Emergency : Outcome::NonEmergency;
    }
    v.reason = "oracle scan";
    return v;
}

} // namespace adlmon
