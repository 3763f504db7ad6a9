#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "adlmon/activity_model.hpp"
#include "adlmon/errors.hpp"
#include "adlmon/zone_model.hpp"

namespace adlmon {

/// One observed step: an atomic activity acted on a context attribute
/// while the user exhibited a behavior. atomic_id may be empty for a
/// behavior-only observation (e.g. the user lying still).
struct TraceEvent {
    std::string atomic_id;
    std::string context_id;
    std::string behavior; // lying/standing/sitting/walking
    std::string zone;
    std::int64_t timestamp = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Ordered events observed for one activity attempt.
struct ActivityTrace {
    std::vector<TraceEvent> events;
    std::string zone; // dominant zone label

    friend bool operator==(const ActivityTrace&, const ActivityTrace&) = default;
};

/// The ten characteristic sets of a complex activity.
struct SemanticDefinition {
    std::string activity_name;
    std::string zone;
    std::set<std::string> atomics;
    std::set<std::string> contexts;
    std::set<std::string> other_atomics;  // atomics \ core
    std::set<std::string> other_contexts; // contexts \ core
    std::set<std::string> core_atomics;
    std::set<std::string> core_contexts;
    std::set<std::string> start_atomics;
    std::set<std::string> end_atomics;
    std::set<std::string> start_contexts;
    std::set<std::string> end_contexts;
    std::map<std::string, std::string> atomic_to_context; // 1:1 pairing

    friend bool operator==(const SemanticDefinition&, const SemanticDefinition&) = default;
};

/// Project a validated definition onto its characteristic sets.
inline SemanticDefinition sdca_build(const ComplexActivityDefinition& def) {
    SemanticDefinition s;
    s.activity_name = def.name;
    s.zone = def.zone;
    for (const auto& a : def.atomics) {
        s.atomics.insert(a.id);
        const ContextAttribute* c = def.context_for(a.id);
        if (c == nullptr)
            throw ValidationError("sdca_build: atomic '" + a.id + "' has no paired context");
        s.contexts.insert(c->id);
        s.atomic_to_context[a.id] = c->id;
        if (a.is_core) {
            s.core_atomics.insert(a.id);
            s.core_contexts.insert(c->id);
        } else {
            s.other_atomics.insert(a.id);
            s.other_contexts.insert(c->id);
        }
        if (a.is_start) {
            s.start_atomics.insert(a.id);
            s.start_contexts.insert(c->id);
        }
        if (a.is_end) {
            s.end_atomics.insert(a.id);
            s.end_contexts.insert(c->id);
        }
    }
    return s;
}

/// Entries keyed by (start atomic set, start context set, zone).
class KnowledgeBase {
public:
    using Key = std::tuple<std::set<std::string>, std::set<std::string>, std::string>;

    static Key key_of(const SemanticDefinition& s) {
        return {s.start_atomics, s.start_contexts, s.zone};
    }

    /// Insert iff the key is absent; idempotent.
    void insert(const SemanticDefinition& s) { entries_.emplace(key_of(s), s); }

    bool contains(const SemanticDefinition& s) const { return entries_.count(key_of(s)) != 0; }
    std::size_t size() const { return entries_.size(); }

    const std::map<Key, SemanticDefinition>& entries() const { return entries_; }

private:
    std::map<Key, SemanticDefinition> entries_;
};

inline KnowledgeBase kb_insert(KnowledgeBase kb, const SemanticDefinition& s) {
    kb.insert(s);
    return kb;
}

enum class Outcome { Emergency, NonEmergency };
enum class Branch { StartOnly, Completed, EndOnly, NoActivity, ZoneRule };

inline std::string to_string(Outcome o) {
    return o == Outcome::Emergency ? "emergency" : "non-emergency";
}

inline std::string to_string(Branch b) {
    switch (b) {
        case Branch::StartOnly: return "iii";
        case Branch::Completed: return "iv";
        case Branch::EndOnly: return "v";
        case Branch::NoActivity: return "vi";
        case Branch::ZoneRule: return "zone-rule";
    }
    return "?";
}

struct Verdict {
    Outcome outcome = Outcome::NonEmergency;
    Branch branch = Branch::NoActivity;
    std::string reason;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

namespace detail {

// Whether every atomic in `which` appears in the trace acted on its
// paired context.
inline bool all_on_paired_context(const SemanticDefinition& s, const ActivityTrace& trace,
                                  const std::set<std::string>& which) {
    for (const auto& id : which) {
        bool found = false;
        for (const auto& e : trace.events) {
            if (e.atomic_id == id && e.context_id == s.atomic_to_context.at(id)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// Terminal lying: the trace ends in a nonempty run of lying-behavior
// events during which no atomic activity is performed.
inline bool lying_and_idle_tail(const ActivityTrace& trace) {
    if (trace.events.empty()) return false;
    std::size_t i = trace.events.size();
    while (i > 0 && trace.events[i - 1].behavior == "lying") --i;
    if (i == trace.events.size()) return false; // last event is not lying
    for (std::size_t j = i; j < trace.events.size(); ++j)
        if (!trace.events[j].atomic_id.empty()) return false;
    return true;
}

} // namespace detail

struct EdsccaOptions {
    bool any_start = false; // relax start_ok to "any start atomic seen"
};

/// The four-branch emergency decision over start/end satisfaction and
/// the terminal behavior of the trace.
inline Verdict edscca_decide(const SemanticDefinition& sdca, const ActivityTrace& trace,
                             const EdsccaOptions& opts = {}) {
    for (const auto& e : trace.events)
        if (!e.atomic_id.empty() && sdca.atomics.count(e.atomic_id) == 0)
            throw ValidationError("edscca_decide: trace references unknown atomic '" + e.atomic_id +
                                  "'");

    bool start_ok;
    if (opts.any_start) {
        start_ok = false;
        for (const auto& id : sdca.start_atomics) {
            std::set<std::string> one{id};
            if (detail::all_on_paired_context(sdca, trace, one)) {
                start_ok = true;
                break;
            }
        }
    } else {
        start_ok = detail::all_on_paired_context(sdca, trace, sdca.start_atomics);
    }
    const bool end_ok = detail::all_on_paired_context(sdca, trace, sdca.end_atomics);

    Verdict v;
    if (start_ok && end_ok) {
        v.branch = Branch::Completed;
        v.outcome = Outcome::NonEmergency;
        v.reason = "user successfully completed the activity";
        return v;
    }
    if (!start_ok && !end_ok) {
        v.branch = Branch::NoActivity;
        v.outcome = Outcome::NonEmergency;
        v.reason = "user did not perform the activity";
        return v;
    }
    v.branch = start_ok ? Branch::StartOnly : Branch::EndOnly;
    if (detail::lying_and_idle_tail(trace)) {
        v.outcome = Outcome::Emergency;
        v.reason = "activity broke off with the user lying and no further atomic activity";
    } else {
        v.outcome = Outcome::NonEmergency;
        v.reason = start_ok ? "activity incomplete without lying indication"
                            : "end observed without start, no lying indication";
    }
    return v;
}

/// Find the knowledge-base entry whose start pairs are all realized by
/// the trace in the trace's zone.
inline std::optional<SemanticDefinition> match_start(const KnowledgeBase& kb,
                                                     const ActivityTrace& trace) {
    for (const auto& [key, sdca] : kb.entries()) {
        if (sdca.zone != trace.zone) continue;
        if (detail::all_on_paired_context(sdca, trace, sdca.start_atomics)) return sdca;
    }
    return std::nullopt;
}

struct ClassifyOptions {
    EdsccaOptions edscca;
    std::int64_t min_lie_duration = 0; // seconds of terminal lying before the zone rule fires
};

namespace detail {

// Duration of the terminal lying run, by timestamps; a single lying
// event counts as duration 0.
inline std::int64_t trailing_lying_duration(const ActivityTrace& trace) {
    std::size_t i = trace.events.size();
    while (i > 0 && trace.events[i - 1].behavior == "lying") --i;
    if (i == trace.events.size()) return -1; // no trailing lying
    return trace.events.back().timestamp - trace.events[i].timestamp;
}

} // namespace detail

/// Full decision path: match against the knowledge base and run the
/// branch algorithm; with no match, fall back to the nearest definition
/// by start-set overlap, and failing that, to the zone rule (lying in a
/// zone where lying is incompatible).
inline Verdict classify_trace(const KnowledgeBase& kb, const ZoneMap& zonemap,
                              const ActivityTrace& trace,
                              const std::vector<ComplexActivityDefinition>& defs = {},
                              const ClassifyOptions& opts = {}) {
    if (auto sdca = match_start(kb, trace)) return edscca_decide(*sdca, trace, opts.edscca);

    // Decision steps iv-v: observe an SDCA from the nearest known
    // definition, judged by overlap between its start set and the
    // trace's atomics.
    std::set<std::string> observed;
    for (const auto& e : trace.events)
        if (!e.atomic_id.empty()) observed.insert(e.atomic_id);
    const ComplexActivityDefinition* best = nullptr;
    std::size_t best_overlap = 0;
    for (const auto& def : defs) {
        std::size_t overlap = 0;
        for (const auto& id : def.start_atomic_ids())
            if (observed.count(id)) ++overlap;
        if (overlap > best_overlap) {
            best_overlap = overlap;
            best = &def;
        }
    }
    if (best != nullptr) {
        const SemanticDefinition sdca = sdca_build(*best);
        bool known = true;
        for (const auto& id : observed)
            if (sdca.atomics.count(id) == 0) known = false;
        if (known) return edscca_decide(sdca, trace, opts.edscca);
    }

    // Pure zone rule.
    Verdict v;
    v.branch = Branch::ZoneRule;
    const std::int64_t lie = detail::trailing_lying_duration(trace);
    const bool zone_known = zonemap.has_zone(trace.zone);
    if (lie >= 0 && lie >= opts.min_lie_duration && zone_known &&
        !behavior_compatible(zonemap, trace.zone, "lying")) {
        v.outcome = Outcome::Emergency;
        v.reason = "lying in zone '" + trace.zone + "' where lying is not a normal behavior";
    } else {
        v.outcome = Outcome::NonEmergency;
        v.reason = "no incompatible behavior observed";
    }
    return v;
}

} // namespace adlmon
