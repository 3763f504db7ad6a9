#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "adlmon/dataset.hpp"
#include "adlmon/errors.hpp"
#include "adlmon/evaluation.hpp"
#include "adlmon/knn.hpp"

namespace adlmon {

/// Hyperparameters for an evaluation run. Defaults reproduce the
/// reference configuration: 75/25 split, outlier z 3.0, k=11 with three
/// accelerometer features for behavior, k=5 with eight features for
/// emergency.
struct EvalOptions {
    std::uint64_t seed = 0;
    double train_fraction = 0.75;
    std::size_t k = 0; // 0 -> pipeline default (11 behavior, 5 emergency)
    VoteScheme vote = VoteScheme::InverseDistance;
    std::vector<std::string> features; // empty -> per-pipeline default
    double outlier_z = 3.0;
    bool minmax_scale = false;
};

struct EvalResult {
    ConfusionMatrix cm{{}, {}};
    MetricsReport report;
    PredictionTable table;
    std::size_t n_input = 0;
    std::size_t n_after_outliers = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

inline std::vector<std::string> default_behavior_features() { return {"ax", "ay", "az"}; }

inline std::vector<std::string> default_emergency_features() {
    return {"ax", "ay", "az", "gx", "gy", "gz", "zone", "behavior"};
}

namespace detail {

inline std::vector<std::string> class_order_of(const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (const auto& l : labels)
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
}

} // namespace detail

/// Behavior pipeline: outlier removal, stratified split, k-NN over the
/// selected features, confusion-matrix evaluation on the test partition.
inline EvalResult eval_behavior(const std::vector<SensorRecord>& records, EvalOptions opts = {}) {
    if (opts.features.empty()) opts.features = default_behavior_features();
    if (opts.k == 0) opts.k = 11;

    EvalResult res;
    res.n_input = records.size();
    std::vector<SensorRecord> labeled;
    for (const auto& r : records)
        if (r.behavior) labeled.push_back(r);
    if (labeled.empty()) throw ValidationError("eval_behavior: no behavior-labeled records");

    const std::vector<SensorRecord> clean = remove_outliers(labeled, opts.outlier_z);
    res.n_after_outliers = clean.size();
    const SplitDataset sd = split(clean, opts.train_fraction, opts.seed,
                                  [](const SensorRecord& r) { return *r.behavior; });
    res.n_train = sd.train.size();
    res.n_test = sd.test.size();

    const auto zidx = zone_indices(clean);
    auto labels_of = [](const std::vector<SensorRecord>& rs) {
        std::vector<std::string> out;
        for (const auto& r : rs) out.push_back(*r.behavior);
        return out;
    };
    const TrainedKnn model(extract_features(sd.train, opts.features, zidx),
                           labels_of(sd.train), std::min(opts.k, sd.train.size()),
                           {opts.vote, opts.minmax_scale});
    const auto predictions = model.predict_batch(extract_features(sd.test, opts.features, zidx));

    std::vector<std::string> true_labels = labels_of(sd.test);
    std::vector<std::string> predicted;
    for (const auto& p : predictions) predicted.push_back(p.label);

    std::vector<std::string> classes = model.classes();
    for (const auto& l : true_labels)
        if (std::find(classes.begin(), classes.end(), l) == classes.end()) classes.push_back(l);

    res.cm = ConfusionMatrix::from_labels(true_labels, predicted, classes);
    res.report = metrics(res.cm);
    res.table = prediction_table(true_labels, predictions, classes);
    return res;
}

/// Binary emergency pipeline. Records are labeled Emergency when their
/// ground-truth activity is "emergency", Non-Emergency otherwise. The
/// "behavior" feature is the class index predicted by an internal k=11
/// behavior model fit on the training partition.
inline EvalResult eval_emergency(const std::vector<SensorRecord>& records, EvalOptions opts = {}) {
    if (opts.features.empty()) opts.features = default_emergency_features();
    if (opts.k == 0) opts.k = 5;

    EvalResult res;
    res.n_input = records.size();
    std::vector<SensorRecord> labeled;
    for (const auto& r : records)
        if (r.activity) labeled.push_back(r);
    if (labeled.empty()) throw ValidationError("eval_emergency: no activity-labeled records");

    const std::vector<SensorRecord> clean = remove_outliers(labeled, opts.outlier_z);
    res.n_after_outliers = clean.size();

    auto emergency_label = [](const SensorRecord& r) {
        return *r.activity == "emergency" ? std::string("Emergency") : std::string("Non-Emergency");
    };
    const SplitDataset sd = split(clean, opts.train_fraction, opts.seed, emergency_label);
    res.n_train = sd.train.size();
    res.n_test = sd.test.size();

    const auto zidx = zone_indices(clean);
    const bool needs_behavior = std::find(opts.features.begin(), opts.features.end(),
                                          "behavior") != opts.features.end();

    std::vector<double> train_beh, test_beh;
    if (needs_behavior) {
        std::vector<std::vector<double>> beh_feat;
        std::vector<std::string> beh_labels;
        for (const auto& r : sd.train)
            if (r.behavior) {
                beh_feat.push_back({r.accel[0], r.accel[1], r.accel[2]});
                beh_labels.push_back(*r.behavior);
            }
        if (beh_feat.empty())
            throw ValidationError(
                "eval_emergency: 'behavior' feature requested but no behavior labels in train set");
        const std::size_t k_beh = std::min<std::size_t>(11, beh_feat.size());
        const TrainedKnn beh_model(std::move(beh_feat), beh_labels, k_beh, {opts.vote, false});
        auto index_of = [&](const std::string& cls) {
            const auto& order = beh_model.classes();
            return static_cast<double>(
                std::find(order.begin(), order.end(), cls) - order.begin());
        };
        for (const auto& r : sd.train)
            train_beh.push_back(
                index_of(beh_model.predict({r.accel[0], r.accel[1], r.accel[2]}).label));
        for (const auto& r : sd.test)
            test_beh.push_back(
                index_of(beh_model.predict({r.accel[0], r.accel[1], r.accel[2]}).label));
    }

    auto labels_of = [&](const std::vector<SensorRecord>& rs) {
        std::vector<std::string> out;
        for (const auto& r : rs) out.push_back(emergency_label(r));
        return out;
    };
    const TrainedKnn model(extract_features(sd.train, opts.features, zidx, train_beh),
                           labels_of(sd.train), std::min(opts.k, sd.train.size()),
                           {opts.vote, opts.minmax_scale});
    const auto predictions =
        model.predict_batch(extract_features(sd.test, opts.features, zidx, test_beh));

    std::vector<std::string> true_labels = labels_of(sd.test);
    std::vector<std::string> predicted;
    for (const auto& p : predictions) predicted.push_back(p.label);

    std::vector<std::string> classes = {"Non-Emergency", "Emergency"};
    res.cm = ConfusionMatrix::from_labels(true_labels, predicted, classes);
    res.report = metrics(res.cm);
    res.table = prediction_table(true_labels, predictions, classes);
    return res;
}

} // namespace adlmon
