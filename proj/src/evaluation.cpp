#include "defectlab/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "defectlab/error.hpp"

namespace defectlab {

ConfusionMatrix confusion(const std::vector<std::pair<ClassLabel, ClassLabel>>& predicted_actual,
                          ClassLabel positive_class) {
    if (predicted_actual.empty())
        throw Error(ErrorCode::empty_dataset, "confusion of empty prediction list");
    ConfusionMatrix cm;
    cm.positive_class = positive_class;
    for (const auto& [predicted, actual] : predicted_actual) {
        const bool pred_pos = predicted == positive_class;
        const bool act_pos = actual == positive_class;
        if (pred_pos && act_pos) ++cm.tp;
        else if (pred_pos && !act_pos) ++cm.fp;
        else if (!pred_pos && act_pos) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0)
        throw Error(ErrorCode::empty_dataset, "metrics of empty confusion matrix");
    MetricSet m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    if (cm.tp + cm.fp == 0) {
        m.precision = 0.0;
        m.precision_degenerate = true;
    } else {
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tp + cm.fn == 0) {
        m.recall = 0.0;
        m.recall_degenerate = true;
    } else {
        m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    }
    if (m.precision + m.recall == 0.0) {
        m.f1 = 0.0;
        m.f1_degenerate = true;
    } else {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

RocCurve roc(const std::vector<std::pair<double, ClassLabel>>& scored_actual,
             ClassLabel positive_class) {
    std::size_t positives = 0, negatives = 0;
    for (const auto& [score, actual] : scored_actual)
        (actual == positive_class ? positives : negatives) += 1;
    if (positives == 0 || negatives == 0)
        throw Error(ErrorCode::single_class_actuals,
                    "roc needs both classes among the actual labels");

    std::vector<std::pair<double, ClassLabel>> sorted = scored_actual;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

    std::size_t seen_pos = 0, seen_neg = 0;
    std::size_t i = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    while (i < sorted.size()) {
        const double threshold = sorted[i].first;
        // consume the whole tie group: one ROC point per distinct score
        while (i < sorted.size() && sorted[i].first == threshold) {
            (sorted[i].second == positive_class ? seen_pos : seen_neg) += 1;
            ++i;
        }
        const double fpr = static_cast<double>(seen_neg) / static_cast<double>(negatives);
        const double tpr = static_cast<double>(seen_pos) / static_cast<double>(positives);
        curve.points.push_back({threshold, fpr, tpr});
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    curve.auc = auc;
    return curve;
}

EvaluationReport evaluate_predictions(
    const std::vector<std::pair<ClassLabel, ClassLabel>>& predicted_actual,
    const std::vector<std::pair<double, ClassLabel>>& scored_actual) {
    EvaluationReport report;
    report.defective.cm = confusion(predicted_actual, ClassLabel::defective);
    report.defective.metrics = metrics(report.defective.cm);
    report.non_defective.cm = confusion(predicted_actual, ClassLabel::non_defective);
    report.non_defective.metrics = metrics(report.non_defective.cm);
    report.auc = roc(scored_actual, ClassLabel::defective).auc;
    return report;
}

ComparisonTable compare_models(const std::vector<EvaluationReport>& reports) {
    if (reports.empty())
        throw Error(ErrorCode::mismatched_reports, "compare_models needs at least one report");
    ComparisonTable table;
    table.dataset_origin = reports.front().dataset_origin;
    table.protocol_id = reports.front().protocol_id;
    for (const auto& report : reports) {
        if (report.dataset_origin != table.dataset_origin)
            throw Error(ErrorCode::mismatched_reports,
                        "reports mix dataset origins: '" + table.dataset_origin + "' vs '" +
                            report.dataset_origin + "'");
        if (report.protocol_id != table.protocol_id)
            throw Error(ErrorCode::mismatched_reports,
                        "reports mix protocols: '" + table.protocol_id + "' vs '" +
                            report.protocol_id + "'");
    }
    std::vector<EvaluationReport> sorted = reports;
    std::sort(sorted.begin(), sorted.end(),
              [](const EvaluationReport& a, const EvaluationReport& b) {
                  return a.model_id < b.model_id;
              });
    for (const auto& report : sorted) {
        const auto& d = report.defective.metrics;
        table.rows.push_back({report.model_id, "defective", d.accuracy, d.precision, d.recall,
                              d.f1, report.auc});
        const auto& n = report.non_defective.metrics;
        table.rows.push_back({report.model_id, "non_defective", n.accuracy, n.precision,
                              n.recall, n.f1, report.auc});
    }
    return table;
}

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

void write_class_block(const char* heading, const ClassBlock& block, std::ostream& out) {
    const auto& cm = block.cm;
    const auto& m = block.metrics;
    out << heading << "\n";
    out << "  tp=" << cm.tp << " fp=" << cm.fp << " fn=" << cm.fn << " tn=" << cm.tn << "\n";
    out << "  accuracy=" << fmt("%.4f", m.accuracy) << " precision=" << fmt("%.4f", m.precision)
        << " recall=" << fmt("%.4f", m.recall) << " f1=" << fmt("%.4f", m.f1);
    if (m.precision_degenerate) out << " [precision: degenerate denominator]";
    if (m.recall_degenerate) out << " [recall: degenerate denominator]";
    if (m.f1_degenerate) out << " [f1: degenerate denominator]";
    out << "\n";
}

} // namespace

void write_report_text(const EvaluationReport& report, std::ostream& out) {
    out << "model: " << report.model_id << "\n";
    out << "protocol: " << report.protocol_id << "\n";
    out << "dataset: " << report.dataset_origin << " checksum=" << report.dataset_checksum
        << "\n";
    out << "seed: " << report.seed << "\n";
    out << "model_spec_hash: " << report.model_spec_hash << "\n";
    write_class_block("positive class: defective", report.defective, out);
    write_class_block("positive class: non_defective", report.non_defective, out);
    out << "auc: " << fmt("%.6f", report.auc) << "\n";
}

std::string comparison_csv_header() {
    return "model,class_view,accuracy_pct,precision_pct,recall_pct,f1_pct,auc";
}

void write_comparison_csv(const ComparisonTable& table, std::ostream& out) {
    out << comparison_csv_header() << "\n";
    for (const auto& row : table.rows) {
        out << row.model_id << ',' << row.class_view << ','
            << fmt("%.2f", row.accuracy * 100.0) << ',' << fmt("%.2f", row.precision * 100.0)
            << ',' << fmt("%.2f", row.recall * 100.0) << ',' << fmt("%.2f", row.f1 * 100.0)
            << ',' << fmt("%.4f", row.auc) << "\n";
    }
}

void write_roc_csv(const RocCurve& curve, std::ostream& out) {
    out << "threshold,fpr,tpr\n";
    for (const auto& point : curve.points) {
        if (std::isinf(point.threshold))
            out << (point.threshold > 0 ? "inf" : "-inf");
        else
            out << fmt("%.17g", point.threshold);
        out << ',' << fmt("%.9g", point.fpr) << ',' << fmt("%.9g", point.tpr) << "\n";
    }
}

void write_roc_svg(const RocCurve& curve, const std::string& title, std::ostream& out) {
    const int size = 480;
    const int margin = 48;
    const int plot = size - 2 * margin;
    auto px = [&](double fpr) { return margin + fpr * plot; };
    auto py = [&](double tpr) { return size - margin - tpr * plot; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot
        << "\" height=\"" << plot << "\" fill=\"white\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(1) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (const auto& point : curve.points)
        out << fmt("%.2f", px(point.fpr)) << ',' << fmt("%.2f", py(point.tpr)) << ' ';
    out << "\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = tick / 4.0;
        out << "  <text x=\"" << fmt("%.1f", px(v)) << "\" y=\"" << size - margin + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt("%.2f", v) << "</text>\n";
        out << "  <text x=\"" << margin - 8 << "\" y=\"" << fmt("%.1f", py(v) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt("%.2f", v) << "</text>\n";
    }
    out << "  <text x=\"" << size / 2 << "\" y=\"" << size - 8
        << "\" font-size=\"12\" text-anchor=\"middle\">false positive rate</text>\n";
    out << "  <text x=\"14\" y=\"" << size / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << size / 2
        << ")\">true positive rate</text>\n";
    out << "  <text x=\"" << size / 2 << "\" y=\"" << margin - 16
        << "\" font-size=\"13\" text-anchor=\"middle\">" << title << "</text>\n";
    out << "  <text x=\"" << size - margin - 6 << "\" y=\"" << size - margin - 10
        << "\" font-size=\"12\" text-anchor=\"end\">AUC = " << fmt("%.4f", curve.auc)
        << "</text>\n";
    out << "</svg>\n";
}

} // namespace defectlab
