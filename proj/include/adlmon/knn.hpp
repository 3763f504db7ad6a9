#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "adlmon/errors.hpp"

namespace adlmon {

enum class VoteScheme { Uniform, InverseDistance };

inline std::string to_string(VoteScheme v) {
    return v == VoteScheme::Uniform ? "uniform" : "inverse";
}

/// Straight-line distance between two points of equal dimension.
inline double euclidean_distance(std::span<const double> m, std::span<const double> n) {
    if (m.size() != n.size())
        throw ValidationError("euclidean_distance: dimension mismatch (" +
                              std::to_string(m.size()) + " vs " + std::to_string(n.size()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double d = m[i] - n[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// An argmax label plus the full per-class confidence distribution.
struct Prediction {
    std::string label;
    std::map<std::string, double> confidences; // sums to 1
};

/// Pick the highest-confidence class; ties go to the earliest class in
/// the declared class order.
inline std::string select_prediction(const std::map<std::string, double>& confidences,
                                     const std::vector<std::string>& class_order) {
    if (confidences.empty()) throw ValidationError("select_prediction: empty confidence map");
    double sum = 0.0;
    for (const auto& [c, v] : confidences) sum += v;
    if (std::abs(sum - 1.0) > 1e-6)
        throw ValidationError("select_prediction: confidences sum to " + std::to_string(sum));
    std::string best;
    double best_v = -1.0;
    for (const auto& cls : class_order) {
        auto it = confidences.find(cls);
        if (it == confidences.end()) continue;
        if (it->second > best_v) {
            best_v = it->second;
            best = cls;
        }
    }
    if (best.empty()) throw ValidationError("select_prediction: no class in order matched");
    return best;
}

struct KnnOptions {
    VoteScheme vote = VoteScheme::InverseDistance;
    bool minmax_scale = false; // off by default
};

/// Lazy k-nearest-neighbor classifier over Euclidean distance. Training
/// data are stored verbatim; the model is immutable after fit.
class TrainedKnn {
public:
    static constexpr double kInverseEps = 1e-9;

    TrainedKnn(std::vector<std::vector<double>> features, std::vector<std::string> labels,
               std::size_t k, KnnOptions options = {})
        : features_(std::move(features)), labels_(std::move(labels)), k_(k), options_(options) {
        if (features_.empty()) throw ValidationError("knn fit: no training examples");
        if (labels_.size() != features_.size())
            throw ValidationError("knn fit: feature/label count mismatch");
        if (k_ < 1 || k_ > features_.size())
            throw ValidationError("knn fit: k=" + std::to_string(k_) + " out of range [1, " +
                                  std::to_string(features_.size()) + "]");
        dim_ = features_[0].size();
        if (dim_ == 0) throw ValidationError("knn fit: zero-dimensional features");
        for (const auto& f : features_)
            if (f.size() != dim_) throw ValidationError("knn fit: inconsistent feature dimensions");
        for (const auto& l : labels_)
            if (std::find(classes_.begin(), classes_.end(), l) == classes_.end())
                classes_.push_back(l); // first-appearance order
        if (options_.minmax_scale) {
            lo_.assign(dim_, 0.0);
            hi_.assign(dim_, 0.0);
            for (std::size_t j = 0; j < dim_; ++j) {
                lo_[j] = hi_[j] = features_[0][j];
                for (const auto& f : features_) {
                    lo_[j] = std::min(lo_[j], f[j]);
                    hi_[j] = std::max(hi_[j], f[j]);
                }
            }
            for (auto& f : features_) scale_in_place(f);
        }
    }

    std::size_t k() const { return k_; }
    std::size_t size() const { return features_.size(); }
    std::size_t dimension() const { return dim_; }
    const std::vector<std::string>& classes() const { return classes_; }
    const KnnOptions& options() const { return options_; }

    Prediction predict(std::vector<double> query) const {
        if (query.size() != dim_)
            throw ValidationError("knn predict: query dimension " + std::to_string(query.size()) +
                                  " != model dimension " + std::to_string(dim_));
        if (options_.minmax_scale) scale_in_place(query);

        // (distance, training index); ties at the k-th distance resolve
        // by stable index order.
        std::vector<std::pair<double, std::size_t>> dist(features_.size());
        for (std::size_t i = 0; i < features_.size(); ++i)
            dist[i] = {euclidean_distance(features_[i], query), i};
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());

        std::map<std::string, double> votes;
        for (const auto& cls : classes_) votes[cls] = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < k_; ++i) {
            const double w = options_.vote == VoteScheme::Uniform
                                 ? 1.0
                                 : 1.0 / (dist[i].first + kInverseEps);
            votes[labels_[dist[i].second]] += w;
            total += w;
        }
        Prediction p;
        for (auto& [cls, v] : votes) v /= total;
        p.confidences = votes;
        p.label = select_prediction(p.confidences, classes_);
        return p;
    }

    std::vector<Prediction> predict_batch(const std::vector<std::vector<double>>& queries) const {
        std::vector<Prediction> out;
        out.reserve(queries.size());
        for (const auto& q : queries) out.push_back(predict(q));
        return out;
    }

private:
    void scale_in_place(std::vector<double>& f) const {
        for (std::size_t j = 0; j < dim_; ++j) {
            const double range = hi_[j] - lo_[j];
            f[j] = range > 0.0 ? (f[j] - lo_[j]) / range : 0.0;
        }
    }

    std::vector<std::vector<double>> features_;
    std::vector<std::string> labels_;
    std::size_t k_;
    KnnOptions options_;
    std::size_t dim_ = 0;
    std::vector<std::string> classes_;
    std::vector<double> lo_, hi_;
};

inline TrainedKnn fit(std::vector<std::vector<double>> features, std::vector<std::string> labels,
                      std::size_t k, KnnOptions options = {}) {
    return TrainedKnn(std::move(features), std::move(labels), k, options);
}

} // namespace adlmon
