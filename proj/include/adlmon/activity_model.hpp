#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "adlmon/errors.hpp"

namespace adlmon {

/// Skeletal joint-point pair that experiences change during an atomic
/// activity. Joint ids follow the 20-point skeleton numbering (1..20).
struct JointPair {
    int a = 0;
    int b = 0;

    friend bool operator==(const JointPair&, const JointPair&) = default;
};

/// One macro/micro task within a complex activity.
struct AtomicActivity {
    std::string id;
    std::string label;
    double weight = 0.0; // in (0, 1]
    bool is_start = false;
    bool is_end = false;
    bool is_core = false;
    std::vector<JointPair> joint_pairs;
};

/// The environment parameter an atomic activity acts on. Weight and the
/// start/end/core markers mirror the paired atomic activity.
struct ContextAttribute {
    std::string id;
    std::string label;
    double weight = 0.0;
    bool is_start = false;
    bool is_end = false;
    bool is_core = false;
    std::string paired_atomic;
};

/// A named complex activity: ordered atomic activities, each paired 1:1
/// with a context attribute, with weights summing to 1.
struct ComplexActivityDefinition {
    std::string name;
    std::string zone;
    std::vector<AtomicActivity> atomics;
    std::vector<ContextAttribute> contexts;

    std::size_t atomic_count() const { return atomics.size(); }

    std::size_t core_count() const {
        return static_cast<std::size_t>(std::count_if(
            atomics.begin(), atomics.end(), [](const AtomicActivity& a) { return a.is_core; }));
    }

    const AtomicActivity* find_atomic(const std::string& id) const {
        for (const auto& a : atomics)
            if (a.id == id) return &a;
        return nullptr;
    }

    const ContextAttribute* context_for(const std::string& atomic_id) const {
        for (const auto& c : contexts)
            if (c.paired_atomic == atomic_id) return &c;
        return nullptr;
    }

    std::set<std::string> core_atomic_ids() const { return ids_where(&AtomicActivity::is_core); }
    std::set<std::string> start_atomic_ids() const { return ids_where(&AtomicActivity::is_start); }
    std::set<std::string> end_atomic_ids() const { return ids_where(&AtomicActivity::is_end); }

    std::set<std::string> atomic_ids() const {
        std::set<std::string> out;
        for (const auto& a : atomics) out.insert(a.id);
        return out;
    }

private:
    std::set<std::string> ids_where(bool AtomicActivity::* flag) const {
        std::set<std::string> out;
        for (const auto& a : atomics)
            if (a.*flag) out.insert(a.id);
        return out;
    }
};

/// Closed-form instance counts for one definition.
struct InstanceCountSummary {
    std::uint64_t alpha = 0; // all performable instances
    std::uint64_t beta = 0;  // goal-reaching instances
    std::uint64_t gamma = 0; // non-goal instances
    std::size_t a_t = 0;
    std::size_t b_t = 0;
    std::size_t c_t = 0;
    std::size_t d_t = 0;
};

/// One way of performing a complex activity: the subset of atomics acted on.
struct ActivityInstance {
    std::vector<std::string> performed; // atomic ids, in definition order
    double instance_weight = 0.0;
    bool goal_reached = false;
};

inline void validate(const ComplexActivityDefinition& def) {
    if (def.atomics.empty())
        throw ValidationError("definition '" + def.name + "': needs at least one atomic activity");
    if (def.contexts.size() != def.atomics.size())
        throw ValidationError("definition '" + def.name + "': context count " +
                              std::to_string(def.contexts.size()) + " != atomic count " +
                              std::to_string(def.atomics.size()));

    std::set<std::string> seen;
    double weight_sum = 0.0;
    bool any_start = false, any_end = false, any_core = false;
    for (const auto& a : def.atomics) {
        if (!seen.insert(a.id).second)
            throw ValidationError("duplicate atomic id '" + a.id + "'");
        if (!(a.weight > 0.0) || a.weight > 1.0)
            throw ValidationError("atomic '" + a.id + "': weight must be in (0,1], got " +
                                  std::to_string(a.weight));
        for (const auto& jp : a.joint_pairs)
            if (jp.a < 1 || jp.a > 20 || jp.b < 1 || jp.b > 20)
                throw ValidationError("atomic '" + a.id + "': joint ids must be in 1..20");
        weight_sum += a.weight;
        any_start |= a.is_start;
        any_end |= a.is_end;
        any_core |= a.is_core;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9)
        throw ValidationError("definition '" + def.name + "': atomic weights sum to " +
                              std::to_string(weight_sum) + ", expected 1");
    if (!any_start) throw ValidationError("definition '" + def.name + "': no start atomic");
    if (!any_end) throw ValidationError("definition '" + def.name + "': no end atomic");
    if (!any_core) throw ValidationError("definition '" + def.name + "': no core atomic");

    std::set<std::string> paired;
    for (const auto& c : def.contexts) {
        const AtomicActivity* a = def.find_atomic(c.paired_atomic);
        if (a == nullptr)
            throw ValidationError("context '" + c.id + "': paired atomic '" + c.paired_atomic +
                                  "' does not exist");
        if (!paired.insert(c.paired_atomic).second)
            throw ValidationError("atomic '" + c.paired_atomic + "' paired with more than one context");
        if (c.is_start != a->is_start || c.is_end != a->is_end || c.is_core != a->is_core)
            throw ValidationError("context '" + c.id + "': start/end/core markers differ from atomic '" +
                                  a->id + "'");
    }
}

namespace detail {
inline std::uint64_t pow2_checked(std::size_t n) {
    if (n > 62)
        throw CapacityError("instance count 2^" + std::to_string(n) + " exceeds capacity (max exponent 62)");
    return std::uint64_t{1} << n;
}
} // namespace detail

/// All possible ways of performing the activity, false starts included.
inline std::uint64_t alpha_count(const ComplexActivityDefinition& def) {
    return detail::pow2_checked(def.atomic_count());
}

/// Ways of performing the activity where the end goal is always reached.
inline std::uint64_t beta_count(const ComplexActivityDefinition& def) {
    return detail::pow2_checked(def.atomic_count() - def.core_count());
}

/// Ways of performing the activity where the end goal is never reached.
inline std::uint64_t gamma_count(const ComplexActivityDefinition& def) {
    return alpha_count(def) - beta_count(def);
}

inline InstanceCountSummary instance_counts(const ComplexActivityDefinition& def) {
    InstanceCountSummary s;
    s.a_t = def.atomic_count();
    s.b_t = def.contexts.size();
    s.c_t = def.core_count();
    s.d_t = s.c_t;
    s.alpha = alpha_count(def);
    s.beta = beta_count(def);
    s.gamma = s.alpha - s.beta;
    return s;
}

/// Sum of the weights of the performed atomics.
inline double instance_weight(const ComplexActivityDefinition& def,
                              const std::set<std::string>& performed) {
    double w = 0.0;
    for (const auto& id : performed) {
        const AtomicActivity* a = def.find_atomic(id);
        if (a == nullptr)
            throw ValidationError("instance_weight: unknown atomic id '" + id + "'");
        w += a->weight;
    }
    return w;
}

/// Weight bar an instance must meet to count as properly performed:
/// the combined weight of the core atomics.
inline double threshold_weight(const ComplexActivityDefinition& def) {
    double w = 0.0;
    for (const auto& a : def.atomics)
        if (a.is_core) w += a.weight;
    return w;
}

/// True iff every core atomic was performed.
inline bool goal_reached(const ComplexActivityDefinition& def,
                         const std::set<std::string>& performed) {
    for (const auto& id : performed)
        if (def.find_atomic(id) == nullptr)
            throw ValidationError("goal_reached: unknown atomic id '" + id + "'");
    for (const auto& a : def.atomics)
        if (a.is_core && performed.count(a.id) == 0) return false;
    return true;
}

/// Every performable subset, in binary counting order over the atomics
/// list (bit i of the counter selects atomics[i]).
inline std::vector<ActivityInstance> enumerate_instances(const ComplexActivityDefinition& def) {
    const std::size_t n = def.atomic_count();
    if (n > 20)
        throw CapacityError("enumerate_instances: a_t=" + std::to_string(n) +
                            " exceeds enumeration cap of 20");
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<ActivityInstance> out;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        ActivityInstance inst;
        bool goal = true;
        for (std::size_t i = 0; i < n; ++i) {
            const bool on = (mask >> i) & 1u;
            if (on) {
                inst.performed.push_back(def.atomics[i].id);
                inst.instance_weight += def.atomics[i].weight;
            } else if (def.atomics[i].is_core) {
                goal = false;
            }
        }
        inst.goal_reached = goal;
        out.push_back(std::move(inst));
    }
    return out;
}

} // namespace adlmon
