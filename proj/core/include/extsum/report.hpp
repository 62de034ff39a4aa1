#pragma once

#include <string>
#include <vector>

#include "extsum/oracle.hpp"
#include "extsum/trainer.hpp"

namespace extsum {

// Learned score-term weights in one row.
struct WeightsReport {
  double salience = 0.0;
  double content = 0.0;
  double position = 0.0;
  double redundancy = 0.0;
  double bias = 0.0;
};

WeightsReport collect_weights(const Checkpoint& checkpoint);

// All render_* functions return complete file bodies. An empty `timestamp`
// drops the generation line, which keeps outputs byte-identical across runs.
std::string render_weights_text(const WeightsReport& weights, const std::string& timestamp);
std::string render_evaluation_text(const EvaluationReport& report, const std::string& timestamp);
std::string render_evaluation_jsonl(const EvaluationReport& report);
std::string render_ablation_text(const AblationReport& report, const std::string& timestamp);
std::string render_label_stats_text(const LabelStats& stats);

// Self-contained HTML: one table row per sentence, one shaded cell per score
// term. Shading is min-max normalized per column; a constant column shades at
// 0.5. Raw values ride along in data attributes for auditing.
std::string render_heatmap_html(const Checkpoint& checkpoint, const Document& doc,
                                const std::vector<SentenceInspection>& rows,
                                const std::string& timestamp);

// Machine-readable twin of the heatmap: one JSON object per sentence.
std::string render_inspection_jsonl(const Document& doc,
                                    const std::vector<SentenceInspection>& rows);

// UTC, ISO 8601, second resolution.
std::string current_timestamp();

}  // namespace extsum
