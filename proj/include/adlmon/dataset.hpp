#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adlmon/errors.hpp"

namespace adlmon {

inline const std::set<std::string>& behavior_labels() {
    static const std::set<std::string> labels = {"lying", "standing", "sitting", "walking"};
    return labels;
}

inline const std::set<std::string>& activity_labels() {
    static const std::set<std::string> labels = {
        "sleeping", "changing clothes", "relaxing", "moving around", "cooking",
        "eating",   "emergency",       "working",  "defecating"};
    return labels;
}

/// One timestamped wearable observation.
struct SensorRecord {
    std::optional<std::int64_t> timestamp;
    std::string zone;
    std::array<double, 3> accel{};
    std::array<double, 3> gyro{};
    std::optional<std::string> behavior; // lying/standing/sitting/walking
    std::optional<std::string> activity; // e.g. sleeping, eating, emergency

    friend bool operator==(const SensorRecord&, const SensorRecord&) = default;
};

/// Logical-field -> CSV-header mapping. Headers not present in the file
/// are treated as absent optional fields.
struct ColumnMapping {
    std::string timestamp = "timestamp";
    std::string zone = "zone";
    std::string accel_x = "accel_x", accel_y = "accel_y", accel_z = "accel_z";
    std::string gyro_x = "gyro_x", gyro_y = "gyro_y", gyro_z = "gyro_z";
    std::string behavior = "behavior";
    std::string activity = "activity";
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        if (!std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError("row " + std::to_string(row) + ": unparseable numeric '" + s + "' in column '" +
                      col + "'");
    }
}

} // namespace detail

/// Load sensor records from a comma-separated file with a header row.
/// Malformed rows are rejected with their 1-based data-row number.
inline std::vector<SensorRecord> load_csv(const std::string& path,
                                          const ColumnMapping& map = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "': empty file, header row required");
    const std::vector<std::string> header = detail::split_line(line);

    auto col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    };
    const auto c_ts = col(map.timestamp);
    const auto c_zone = col(map.zone);
    const auto c_ax = col(map.accel_x), c_ay = col(map.accel_y), c_az = col(map.accel_z);
    const auto c_gx = col(map.gyro_x), c_gy = col(map.gyro_y), c_gz = col(map.gyro_z);
    const auto c_beh = col(map.behavior);
    const auto c_act = col(map.activity);

    for (const auto* required : {&map.zone, &map.accel_x, &map.accel_y, &map.accel_z,
                                 &map.gyro_x, &map.gyro_y, &map.gyro_z})
        if (!col(*required))
            throw IoError("'" + path + "': missing required column '" + *required + "'");

    std::vector<SensorRecord> out;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = detail::split_line(line);
        if (f.size() != header.size())
            throw IoError("row " + std::to_string(row) + ": has " + std::to_string(f.size()) +
                          " fields, header has " + std::to_string(header.size()));
        SensorRecord r;
        if (c_ts && !f[*c_ts].empty()) {
            try {
                r.timestamp = std::stoll(f[*c_ts]);
            } catch (const std::exception&) {
                throw IoError("row " + std::to_string(row) + ": unparseable timestamp '" + f[*c_ts] + "'");
            }
        }
        r.zone = f[*c_zone];
        r.accel = {detail::parse_double(f[*c_ax], row, map.accel_x),
                   detail::parse_double(f[*c_ay], row, map.accel_y),
                   detail::parse_double(f[*c_az], row, map.accel_z)};
        r.gyro = {detail::parse_double(f[*c_gx], row, map.gyro_x),
                  detail::parse_double(f[*c_gy], row, map.gyro_y),
                  detail::parse_double(f[*c_gz], row, map.gyro_z)};
        if (c_beh && !f[*c_beh].empty()) {
            if (behavior_labels().count(f[*c_beh]) == 0)
                throw IoError("row " + std::to_string(row) + ": unknown behavior label '" + f[*c_beh] + "'");
            r.behavior = f[*c_beh];
        }
        if (c_act && !f[*c_act].empty()) {
            if (activity_labels().count(f[*c_act]) == 0)
                throw IoError("row " + std::to_string(row) + ": unknown activity label '" + f[*c_act] + "'");
            r.activity = f[*c_act];
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline void save_csv(const std::string& path, const std::vector<SensorRecord>& records,
                     const ColumnMapping& map = {}) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << map.timestamp << ',' << map.zone << ',' << map.accel_x << ',' << map.accel_y << ','
        << map.accel_z << ',' << map.gyro_x << ',' << map.gyro_y << ',' << map.gyro_z << ','
        << map.behavior << ',' << map.activity << '\n';
    out.precision(17);
    for (const auto& r : records) {
        if (r.timestamp) out << *r.timestamp;
        out << ',' << r.zone << ',' << r.accel[0] << ',' << r.accel[1] << ',' << r.accel[2] << ','
            << r.gyro[0] << ',' << r.gyro[1] << ',' << r.gyro[2] << ','
            << (r.behavior ? *r.behavior : "") << ',' << (r.activity ? *r.activity : "") << '\n';
    }
}

namespace detail {

inline std::array<double, 6> numeric_features(const SensorRecord& r) {
    return {r.accel[0], r.accel[1], r.accel[2], r.gyro[0], r.gyro[1], r.gyro[2]};
}

// Single z-score filter pass over the six numeric features.
inline std::vector<SensorRecord> outlier_pass(const std::vector<SensorRecord>& records,
                                              double z_threshold) {
    const std::size_t n = records.size();
    if (n < 2) return records;
    std::array<double, 6> mean{}, var{};
    for (const auto& r : records) {
        const auto f = numeric_features(r);
        for (std::size_t i = 0; i < 6; ++i) mean[i] += f[i];
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    for (const auto& r : records) {
        const auto f = numeric_features(r);
        for (std::size_t i = 0; i < 6; ++i) var[i] += (f[i] - mean[i]) * (f[i] - mean[i]);
    }
    std::array<double, 6> sd{};
    for (std::size_t i = 0; i < 6; ++i) sd[i] = std::sqrt(var[i] / static_cast<double>(n));

    std::vector<SensorRecord> kept;
    kept.reserve(n);
    for (const auto& r : records) {
        const auto f = numeric_features(r);
        bool outlier = false;
        for (std::size_t i = 0; i < 6; ++i) {
            if (sd[i] <= 0.0) continue; // zero variance: no exceedance possible
            if (std::abs(f[i] - mean[i]) / sd[i] > z_threshold) {
                outlier = true;
                break;
            }
        }
        if (!outlier) kept.push_back(r);
    }
    return kept;
}

} // namespace detail

/// Drop records whose accelerometer/gyroscope components lie more than
/// z_threshold standard deviations from the per-feature mean. Passes
/// repeat until a fixpoint, so the result is stable under re-application.
/// Never drops every record.
inline std::vector<SensorRecord> remove_outliers(std::vector<SensorRecord> records,
                                                 double z_threshold) {
    if (z_threshold <= 0.0)
        throw ValidationError("remove_outliers: z_threshold must be > 0");
    while (true) {
        std::vector<SensorRecord> next = detail::outlier_pass(records, z_threshold);
        if (next.empty()) return records;
        if (next.size() == records.size()) return next;
        records = std::move(next);
    }
}

/// Deterministic stratified train/test partition.
struct SplitDataset {
    std::vector<SensorRecord> train;
    std::vector<SensorRecord> test;
    std::uint64_t seed = 0;
    double train_fraction = 0.75;
};

/// Seeded, label-stratified split. The train set gets ceil(fraction * N)
/// records, allocated per stratum proportionally (largest-remainder).
/// key(record) names the stratum; records with equal keys are shuffled
/// together.
template <typename KeyFn>
SplitDataset split(const std::vector<SensorRecord>& records, double train_fraction,
                   std::uint64_t seed, KeyFn&& key) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
        throw ValidationError("split: train_fraction must be in (0,1)");

    const std::size_t n = records.size();
    const auto target_train = static_cast<std::size_t>(
        std::ceil(train_fraction * static_cast<double>(n) - 1e-12));

    // Group indices by stratum key, keys in sorted order for determinism.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[key(records[i])].push_back(i);

    std::mt19937_64 rng(seed);
    std::size_t assigned = 0;
    std::vector<std::pair<double, std::string>> remainders;
    std::map<std::string, std::size_t> take;
    for (auto& [k, idx] : groups) {
        std::shuffle(idx.begin(), idx.end(), rng);
        const double exact = train_fraction * static_cast<double>(idx.size());
        take[k] = static_cast<std::size_t>(std::floor(exact + 1e-12));
        assigned += take[k];
        remainders.emplace_back(-(exact - std::floor(exact + 1e-12)), k);
    }
    std::sort(remainders.begin(), remainders.end());
    for (const auto& [neg_rem, k] : remainders) {
        if (assigned >= target_train) break;
        if (take[k] < groups[k].size()) {
            ++take[k];
            ++assigned;
        }
    }
    // If fractional parts could not absorb everything (tiny strata), top
    // up from the largest groups.
    for (auto& [k, idx] : groups) {
        while (assigned < target_train && take[k] < idx.size()) {
            ++take[k];
            ++assigned;
        }
    }

    SplitDataset out;
    out.seed = seed;
    out.train_fraction = train_fraction;
    for (const auto& [k, idx] : groups) {
        const std::size_t t = take[k];
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < t ? out.train : out.test).push_back(records[idx[i]]);
    }
    return out;
}

inline SplitDataset split(const std::vector<SensorRecord>& records, double train_fraction,
                          std::uint64_t seed) {
    return split(records, train_fraction, seed,
                 [](const SensorRecord& r) { return r.behavior.value_or(""); });
}

/// Sorted distinct zone labels -> dense index, for numeric feature use.
inline std::map<std::string, std::size_t> zone_indices(const std::vector<SensorRecord>& records) {
    std::set<std::string> names;
    for (const auto& r : records) names.insert(r.zone);
    std::map<std::string, std::size_t> out;
    std::size_t i = 0;
    for (const auto& name : names) out[name] = i++;
    return out;
}

/// Feature-name vocabulary: ax ay az gx gy gz zone behavior.
/// "zone" uses the supplied zone index map; "behavior" uses the supplied
/// per-record behavior indices (typically predictions from the behavior
/// model).
inline std::vector<std::vector<double>> extract_features(
    const std::vector<SensorRecord>& records, const std::vector<std::string>& names,
    const std::map<std::string, std::size_t>& zone_index = {},
    const std::vector<double>& behavior_index = {}) {
    std::vector<std::vector<double>> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SensorRecord& r = records[i];
        std::vector<double> row;
        row.reserve(names.size());
        for (const auto& name : names) {
            if (name == "ax") row.push_back(r.accel[0]);
            else if (name == "ay") row.push_back(r.accel[1]);
            else if (name == "az") row.push_back(r.accel[2]);
            else if (name == "gx") row.push_back(r.gyro[0]);
            else if (name == "gy") row.push_back(r.gyro[1]);
            else if (name == "gz") row.push_back(r.gyro[2]);
            else if (name == "zone") {
                auto it = zone_index.find(r.zone);
                if (it == zone_index.end())
                    throw ValidationError("extract_features: zone '" + r.zone + "' not in index");
                row.push_back(static_cast<double>(it->second));
            } else if (name == "behavior") {
                if (i >= behavior_index.size())
                    throw ValidationError("extract_features: no behavior index for record " +
                                          std::to_string(i));
                row.push_back(behavior_index[i]);
            } else {
                throw ValidationError("extract_features: unknown feature '" + name + "'");
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace adlmon
