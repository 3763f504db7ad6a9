#pragma once

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adlmon/errors.hpp"
#include "adlmon/knn.hpp"

namespace adlmon {

/// Predicted-vs-true count matrix. Rows are predicted classes, columns
/// are true classes.
class ConfusionMatrix {
public:
    ConfusionMatrix(std::vector<std::string> classes, std::vector<std::vector<std::size_t>> counts)
        : classes_(std::move(classes)), counts_(std::move(counts)) {
        if (counts_.size() != classes_.size())
            throw ValidationError("confusion matrix: row count != class count");
        for (const auto& row : counts_)
            if (row.size() != classes_.size())
                throw ValidationError("confusion matrix: matrix is not square");
    }

    static ConfusionMatrix from_labels(const std::vector<std::string>& true_labels,
                                       const std::vector<std::string>& predicted_labels,
                                       const std::vector<std::string>& classes) {
        if (true_labels.size() != predicted_labels.size())
            throw ValidationError("confusion: label vectors differ in length");
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
        std::vector<std::vector<std::size_t>> counts(classes.size(),
                                                     std::vector<std::size_t>(classes.size(), 0));
        for (std::size_t i = 0; i < true_labels.size(); ++i) {
            auto t = index.find(true_labels[i]);
            auto p = index.find(predicted_labels[i]);
            if (t == index.end())
                throw ValidationError("confusion: true label '" + true_labels[i] + "' not in classes");
            if (p == index.end())
                throw ValidationError("confusion: predicted label '" + predicted_labels[i] +
                                      "' not in classes");
            ++counts[p->second][t->second];
        }
        return ConfusionMatrix(classes, std::move(counts));
    }

    const std::vector<std::string>& classes() const { return classes_; }
    std::size_t count(std::size_t predicted, std::size_t truth) const {
        return counts_.at(predicted).at(truth);
    }

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& row : counts_)
            for (std::size_t c : row) t += c;
        return t;
    }

    std::size_t diagonal() const {
        std::size_t t = 0;
        for (std::size_t i = 0; i < classes_.size(); ++i) t += counts_[i][i];
        return t;
    }

    std::size_t row_sum(std::size_t predicted) const {
        std::size_t t = 0;
        for (std::size_t c : counts_.at(predicted)) t += c;
        return t;
    }

    std::size_t col_sum(std::size_t truth) const {
        std::size_t t = 0;
        for (const auto& row : counts_) t += row.at(truth);
        return t;
    }

    std::size_t class_index(const std::string& cls) const {
        auto it = std::find(classes_.begin(), classes_.end(), cls);
        if (it == classes_.end())
            throw ValidationError("confusion matrix: unknown class '" + cls + "'");
        return static_cast<std::size_t>(it - classes_.begin());
    }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::vector<std::string> classes_;
    std::vector<std::vector<std::size_t>> counts_;
};

/// Diagonal over total. Reduces to (TP+TN)/(TP+TN+FP+FN) for two classes.
inline double accuracy(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw ValidationError("accuracy: empty confusion matrix");
    return static_cast<double>(cm.diagonal()) / static_cast<double>(total);
}

/// Diagonal cell over its predicted-row sum; nullopt when the class was
/// never predicted.
inline std::optional<double> precision(const ConfusionMatrix& cm, const std::string& cls) {
    const std::size_t i = cm.class_index(cls);
    const std::size_t rs = cm.row_sum(i);
    if (rs == 0) return std::nullopt;
    return static_cast<double>(cm.count(i, i)) / static_cast<double>(rs);
}

/// Diagonal cell over its true-column sum; nullopt when the class never
/// occurs in the truth.
inline std::optional<double> recall(const ConfusionMatrix& cm, const std::string& cls) {
    const std::size_t i = cm.class_index(cls);
    const std::size_t cs = cm.col_sum(i);
    if (cs == 0) return std::nullopt;
    return static_cast<double>(cm.count(i, i)) / static_cast<double>(cs);
}

struct MetricsReport {
    double overall_accuracy = 0.0;
    std::map<std::string, std::optional<double>> class_precision;
    std::map<std::string, std::optional<double>> class_recall;
};

inline MetricsReport metrics(const ConfusionMatrix& cm) {
    MetricsReport r;
    r.overall_accuracy = accuracy(cm);
    for (const auto& cls : cm.classes()) {
        r.class_precision[cls] = precision(cm, cls);
        r.class_recall[cls] = recall(cm, cls);
    }
    return r;
}

/// Per-test-record report: actual label, predicted label, and the full
/// confidence distribution.
struct PredictionTable {
    std::vector<std::string> classes;
    struct Row {
        std::size_t row_no = 0; // 1-based
        std::string actual;
        std::string predicted;
        std::map<std::string, double> confidences;
    };
    std::vector<Row> rows;
};

inline PredictionTable prediction_table(const std::vector<std::string>& true_labels,
                                        const std::vector<Prediction>& predictions,
                                        const std::vector<std::string>& classes) {
    if (true_labels.size() != predictions.size())
        throw ValidationError("prediction_table: label/prediction length mismatch");
    PredictionTable t;
    t.classes = classes;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        PredictionTable::Row row;
        row.row_no = i + 1;
        row.actual = true_labels[i];
        row.predicted = predictions[i].label;
        row.confidences = predictions[i].confidences;
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace detail {
inline std::string pct(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v * 100.0 << '%';
    return os.str();
}
} // namespace detail

/// Plain-text confusion matrix with accuracy, class precision, and class
/// recall rows.
inline std::string render_text(const ConfusionMatrix& cm) {
    std::ostringstream os;
    os << "accuracy: " << detail::pct(accuracy(cm)) << "\n\n";
    os << "\t";
    for (const auto& c : cm.classes()) os << "true " << c << '\t';
    os << "class precision\n";
    for (std::size_t i = 0; i < cm.classes().size(); ++i) {
        os << "pred. " << cm.classes()[i] << '\t';
        for (std::size_t j = 0; j < cm.classes().size(); ++j) os << cm.count(i, j) << '\t';
        auto p = precision(cm, cm.classes()[i]);
        os << (p ? detail::pct(*p) : "undefined") << '\n';
    }
    os << "class recall\t";
    for (const auto& c : cm.classes()) {
        auto r = recall(cm, c);
        os << (r ? detail::pct(*r) : "undefined") << '\t';
    }
    os << '\n';
    return os.str();
}

inline std::string to_csv(const ConfusionMatrix& cm) {
    std::ostringstream os;
    os << "predicted";
    for (const auto& c : cm.classes()) os << ",true " << c;
    os << '\n';
    for (std::size_t i = 0; i < cm.classes().size(); ++i) {
        os << cm.classes()[i];
        for (std::size_t j = 0; j < cm.classes().size(); ++j) os << ',' << cm.count(i, j);
        os << '\n';
    }
    return os.str();
}

inline std::string render_text(const PredictionTable& t) {
    std::ostringstream os;
    os << "Row No.\tActual\tPredicted";
    for (const auto& c : t.classes) os << "\tconfidence(" << c << ')';
    os << '\n';
    for (const auto& row : t.rows) {
        os << row.row_no << '\t' << row.actual << '\t' << row.predicted;
        for (const auto& c : t.classes) {
            auto it = row.confidences.find(c);
            os << '\t' << std::fixed << std::setprecision(3)
               << (it != row.confidences.end() ? it->second : 0.0);
        }
        os << '\n';
    }
    return os.str();
}

inline std::string to_csv(const PredictionTable& t) {
    std::ostringstream os;
    os << "row_no,actual,predicted";
    for (const auto& c : t.classes) os << ",confidence_" << c;
    os << '\n';
    for (const auto& row : t.rows) {
        os << row.row_no << ',' << row.actual << ',' << row.predicted;
        for (const auto& c : t.classes) {
            auto it = row.confidences.find(c);
            os << ',' << std::setprecision(17) << (it != row.confidences.end() ? it->second : 0.0);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace adlmon
