#include "extsum/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace extsum {

namespace {

std::string fixed(double v, int precision = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string escape_html(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void append_generated_line(std::string& out, const std::string& timestamp) {
  if (!timestamp.empty()) out += "generated: " + timestamp + "\n";
}

}  // namespace

WeightsReport collect_weights(const Checkpoint& ck) {
  WeightsReport w;
  w.salience = ck.model.salience_weight->value.scalar_value();
  w.content = ck.model.content_weight->value.scalar_value();
  w.position = ck.model.position_weight->value.scalar_value();
  w.redundancy = ck.model.redundancy_weight->value.scalar_value();
  w.bias = ck.model.score_bias->value.scalar_value();
  return w;
}

std::string render_weights_text(const WeightsReport& w, const std::string& timestamp) {
  std::string out;
  append_generated_line(out, timestamp);
  std::ostringstream table;
  table << std::left << std::setw(12) << "salience" << std::setw(12) << "content" << std::setw(12)
        << "position" << std::setw(12) << "redundancy" << "bias" << '\n';
  table << std::left << std::setw(12) << fixed(w.salience) << std::setw(12) << fixed(w.content)
        << std::setw(12) << fixed(w.position) << std::setw(12) << fixed(w.redundancy)
        << fixed(w.bias) << '\n';
  out += table.str();
  return out;
}

std::string render_evaluation_text(const EvaluationReport& report, const std::string& timestamp) {
  std::string out;
  append_generated_line(out, timestamp);
  out += "documents: " + std::to_string(report.documents.size()) + "\n";
  out += "budget: " + std::to_string(report.budget.limit) + " " +
         budget_unit_name(report.budget.unit) + "\n";
  std::ostringstream table;
  table << std::left << std::setw(10) << "" << std::setw(10) << "rouge1" << std::setw(10)
        << "rouge2" << "rouge_l" << '\n';
  table << std::left << std::setw(10) << "model" << std::setw(10) << fixed(report.mean.rouge1)
        << std::setw(10) << fixed(report.mean.rouge2) << fixed(report.mean.rouge_l) << '\n';
  table << std::left << std::setw(10) << "lead-3" << std::setw(10)
        << fixed(report.lead_baseline.rouge1) << std::setw(10)
        << fixed(report.lead_baseline.rouge2) << fixed(report.lead_baseline.rouge_l) << '\n';
  out += table.str();
  return out;
}

std::string render_evaluation_jsonl(const EvaluationReport& report) {
  std::string out;
  for (const DocumentEvaluation& doc : report.documents) {
    nlohmann::json j{{"id", doc.id},
                     {"picked", doc.picked},
                     {"rouge1", doc.score.rouge1},
                     {"rouge2", doc.score.rouge2},
                     {"rouge_l", doc.score.rouge_l}};
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string render_ablation_text(const AblationReport& report, const std::string& timestamp) {
  std::string out;
  append_generated_line(out, timestamp);
  std::ostringstream table;
  table << std::left << std::setw(14) << "terms" << std::setw(10) << "rouge1" << std::setw(10)
        << "rouge2" << "rouge_l" << '\n';
  for (const AblationRow& row : report.rows) {
    table << std::left << std::setw(14) << row.label << std::setw(10) << fixed(row.score.rouge1)
          << std::setw(10) << fixed(row.score.rouge2) << fixed(row.score.rouge_l) << '\n';
  }
  out += table.str();
  return out;
}

std::string render_label_stats_text(const LabelStats& stats) {
  std::string out;
  out += "documents: " + std::to_string(stats.documents) + "\n";
  out += "empty selections: " + std::to_string(stats.empty_selections) + "\n";
  out += "mean selected sentences: " + fixed(stats.mean_selected, 3) + "\n";
  out += "mean objective: " + fixed(stats.mean_objective, 4) + "\n";
  return out;
}

std::string render_heatmap_html(const Checkpoint& ck, const Document& doc,
                                const std::vector<SentenceInspection>& rows,
                                const std::string& timestamp) {
  struct Column {
    const char* name;
    double SentenceInspection::* field;
  };
  static const Column kColumns[] = {
      {"content", &SentenceInspection::content},
      {"salience", &SentenceInspection::salience},
      {"position", &SentenceInspection::position},
      {"redundancy", &SentenceInspection::redundancy},
      {"total", &SentenceInspection::total},
      {"probability", &SentenceInspection::probability},
  };

  std::vector<double> lo(std::size(kColumns)), hi(std::size(kColumns));
  for (std::size_t c = 0; c < std::size(kColumns); ++c) {
    lo[c] = hi[c] = rows.empty() ? 0.0 : rows[0].*kColumns[c].field;
    for (const auto& row : rows) {
      lo[c] = std::min(lo[c], row.*kColumns[c].field);
      hi[c] = std::max(hi[c], row.*kColumns[c].field);
    }
  }
  auto normalize = [&](std::size_t c, double v) {
    double span = hi[c] - lo[c];
    return span == 0.0 ? 0.5 : (v - lo[c]) / span;
  };

  std::string out;
  out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>score heatmap: " + escape_html(doc.id) + "</title>\n";
  out += "<style>\n";
  out += "body { font-family: sans-serif; margin: 2em; }\n";
  out += "table { border-collapse: collapse; }\n";
  out += "td, th { border: 1px solid #ccc; padding: 4px 8px; text-align: right; }\n";
  out += "td.sentence { text-align: left; max-width: 42em; }\n";
  out += "</style>\n</head>\n<body>\n";
  out += "<h1>" + escape_html(doc.id) + "</h1>\n";
  out += "<p>architecture: " + architecture_name(ck.config.arch) + ", depth: " +
         depth_name(ck.config.depth) + "</p>\n";
  if (!timestamp.empty()) out += "<p>generated: " + timestamp + "</p>\n";
  out += "<table>\n<tr><th>#</th><th>sentence</th>";
  for (const Column& col : kColumns) out += "<th>" + std::string(col.name) + "</th>";
  out += "</tr>\n";
  for (std::size_t j = 0; j < rows.size(); ++j) {
    out += "<tr><td>" + std::to_string(j) + "</td>";
    out += "<td class=\"sentence\">" + escape_html(join_tokens(doc.sentences[j])) + "</td>";
    for (std::size_t c = 0; c < std::size(kColumns); ++c) {
      double value = rows[j].*kColumns[c].field;
      double norm = normalize(c, value);
      std::ostringstream cell;
      cell << "<td data-column=\"" << kColumns[c].name << "\" data-value=\"" << value
           << "\" data-norm=\"" << norm << "\" style=\"background: rgba(31,119,180,"
           << fixed(norm, 3) << ")\">" << fixed(value) << "</td>";
      out += cell.str();
    }
    out += "</tr>\n";
  }
  out += "</table>\n</body>\n</html>\n";
  return out;
}

std::string render_inspection_jsonl(const Document& doc,
                                    const std::vector<SentenceInspection>& rows) {
  std::string out;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    nlohmann::json line{{"index", j},
                        {"text", join_tokens(doc.sentences[j])},
                        {"content", rows[j].content},
                        {"salience", rows[j].salience},
                        {"position", rows[j].position},
                        {"redundancy", rows[j].redundancy},
                        {"bias", rows[j].bias},
                        {"total", rows[j].total},
                        {"probability", rows[j].probability}};
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::string current_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

}  // namespace extsum
