#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "defectlab/dataset.hpp"

namespace defectlab {

struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    ClassLabel positive_class = ClassLabel::defective;

    std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<std::pair<ClassLabel, ClassLabel>>& predicted_actual,
                          ClassLabel positive_class);

// accuracy = (tp+tn)/total, precision = tp/(tp+fp), recall = tp/(tp+fn),
// f1 = 2PR/(P+R). Degenerate denominators yield 0 and set the flag.
struct MetricSet {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;
};

MetricSet metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double threshold; // predict positive iff score >= threshold
    double fpr;
    double tpr;
};

struct RocCurve {
    std::vector<RocPoint> points; // anchored at (0,0), ends at (1,1)
    double auc = 0.0;
};

// Threshold sweep over distinct scores, descending; tied scores share one
// point. AUC by the trapezoid rule (equals the Mann-Whitney statistic with
// ties counted one half). Throws SingleClassActuals.
RocCurve roc(const std::vector<std::pair<double, ClassLabel>>& scored_actual,
             ClassLabel positive_class = ClassLabel::defective);

struct ClassBlock {
    ConfusionMatrix cm;
    MetricSet metrics;
};

// Per-model evaluation record. The two class blocks report the same
// predictions with opposite positive-class choices; accuracy is identical
// across them by construction. Timing never lives here (separate sidecar),
// so serialized reports are byte-stable.
struct EvaluationReport {
    std::string model_id;
    std::string protocol_id;
    std::string dataset_origin;
    std::string dataset_checksum;
    std::string model_spec_hash;
    std::uint64_t seed = 0;
    ClassBlock defective;      // positive class = Defective
    ClassBlock non_defective;  // positive class = NonDefective
    double auc = 0.0;          // Defective as positive
};

EvaluationReport evaluate_predictions(
    const std::vector<std::pair<ClassLabel, ClassLabel>>& predicted_actual,
    const std::vector<std::pair<double, ClassLabel>>& scored_actual);

// Tables 4-6-shaped comparison: one row per model and class view, sorted by
// model id. All reports must share dataset origin and protocol.
struct ComparisonRow {
    std::string model_id;
    std::string class_view; // "defective" | "non_defective"
    double accuracy, precision, recall, f1, auc;
};

struct ComparisonTable {
    std::string dataset_origin;
    std::string protocol_id;
    std::vector<ComparisonRow> rows;
};

ComparisonTable compare_models(const std::vector<EvaluationReport>& reports);

// Serialization: human-readable text block, flat CSV rows, ROC CSV, and a
// standalone SVG plot (0-1 axes, diagonal reference, AUC annotation).
void write_report_text(const EvaluationReport& report, std::ostream& out);
std::string comparison_csv_header();
void write_comparison_csv(const ComparisonTable& table, std::ostream& out);
void write_roc_csv(const RocCurve& curve, std::ostream& out);
void write_roc_svg(const RocCurve& curve, const std::string& title, std::ostream& out);

} // namespace defectlab
