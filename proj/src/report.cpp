#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ltlbench/errors.hpp"
#include "ltlbench/harness.hpp"

namespace ltlbench {

SemanticOutcome semantic_outcome(const EvalRecord& r) {
  SemanticOutcome o;
  o.syntactically_valid = r.syntactically_valid;
  if (r.nm_reason) {
    o.status = SemanticOutcome::Status::NotMeaningful;
    return o;
  }
  o.status = r.equivalence == std::optional<std::string>("Holds") ? SemanticOutcome::Status::Equivalent
                                                                   : SemanticOutcome::Status::NotEquivalent;
  o.sound = r.soundness == std::optional<std::string>("Holds");
  o.complete = r.completeness == std::optional<std::string>("Holds");
  return o;
}

namespace {

using GroupKey = std::tuple<std::string, std::string, std::string, std::string>;  // model task approach interface

std::string pct(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rate * 100.0);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double ratio(double a, double b) { return b == 0 ? 0 : a / b; }

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Aggregate {
  GroupKey key;
  std::string metric;
  std::string value;
};

bool is_translation(const std::string& task) { return task == "nl2ltl" || task == "nl2pltl"; }
bool is_classification(const std::string& task) { return task == "wff" || task == "tracechar"; }

std::string markdown(const std::vector<Table>& tables) {
  std::ostringstream out;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& table = tables[t];
    if (t > 0) out << '\n';
    out << "## " << table.name << "\n\n|";
    for (const auto& h : table.header) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < table.header.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& row : table.rows) {
      out << '|';
      for (const auto& cell : row) out << ' ' << cell << " |";
      out << '\n';
    }
  }
  return out.str();
}

std::string tsv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "\t" : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text, ReportSummary& summary) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
  summary.files.push_back(path);
}

}  // namespace

ReportSummary emit_report(const std::vector<EvalRecord>& records, const RunManifest& manifest,
                          const std::filesystem::path& dir) {
  ReportSummary summary;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  if (records.empty()) summary.warnings.push_back("no records: tables contain headers only");

  std::map<GroupKey, std::vector<const EvalRecord*>> groups;
  for (const auto& r : records) groups[{r.model, r.task, r.approach, r.interface}].push_back(&r);

  Table translation{"Translation",
                    {"Model", "Task", "Approach", "Interface", "Equiv", "Not-Eq", "N/M", "Eq-Acc%",
                     "Syn.Corr%", "Sound%", "Compl%"},
                    {}};
  Table classification{"Classification",
                       {"Model", "Task", "Approach", "Interface", "TP", "FP", "TN", "FN", "N/M",
                        "Acc%", "Prec%", "Rec%", "F1%", "FPR%", "FNR%"},
                       {}};
  Table tracegen{"Trace generation",
                 {"Model", "Approach", "Interface", "Sat-OK", "Viol-OK", "Both-OK", "Not-OK", "N/M",
                  "Both-OK%", "Syn.Corr%"},
                 {}};
  Table nl2pl{"Proposition extraction",
              {"Model", "Approach", "Interface", "Scored", "N/M", "Precision", "Recall", "F1",
               "Jaccard"},
              {}};
  std::vector<Aggregate> aggregates;

  for (const auto& [key, group] : groups) {
    const auto& [model, task, approach, interface] = key;
    auto agg = [&](const std::string& metric, const std::string& value) {
      aggregates.push_back({key, metric, value});
    };
    if (is_translation(task)) {
      std::vector<SemanticOutcome> outcomes;
      for (const auto* r : group) outcomes.push_back(semantic_outcome(*r));
      SemanticRates s = aggregate_semantic(outcomes);
      translation.rows.push_back({model, task, approach, interface, std::to_string(s.tally.equivalent),
                                  std::to_string(s.tally.not_equivalent),
                                  std::to_string(s.tally.not_meaningful), pct(s.equivalence_accuracy),
                                  pct(s.syntactic_correctness), pct(s.soundness), pct(s.completeness)});
      agg("equivalent", std::to_string(s.tally.equivalent));
      agg("not_equivalent", std::to_string(s.tally.not_equivalent));
      agg("not_meaningful", std::to_string(s.tally.not_meaningful));
      agg("eq_acc", num(s.equivalence_accuracy));
      agg("syn_corr", num(s.syntactic_correctness));
      agg("soundness", num(s.soundness));
      agg("completeness", num(s.completeness));
      agg("nm_share", num(s.not_meaningful_share));
    } else if (is_classification(task)) {
      ConfusionCounts c;
      std::uint64_t nm = 0;
      for (const auto* r : group) {
        if (r->nm_reason || !r->predicted_positive || !r->expected_positive) {
          ++nm;
          continue;
        }
        c.add(*r->predicted_positive, *r->expected_positive);
      }
      ClassificationMetrics m = classification_metrics(c);
      classification.rows.push_back({model, task, approach, interface, std::to_string(c.tp),
                                     std::to_string(c.fp), std::to_string(c.tn), std::to_string(c.fn),
                                     std::to_string(nm), pct(m.accuracy), pct(m.precision),
                                     pct(m.recall), pct(m.f1), pct(m.fpr), pct(m.fnr)});
      agg("tp", std::to_string(c.tp));
      agg("fp", std::to_string(c.fp));
      agg("tn", std::to_string(c.tn));
      agg("fn", std::to_string(c.fn));
      agg("not_meaningful", std::to_string(nm));
      agg("accuracy", num(m.accuracy));
      agg("precision", num(m.precision));
      agg("recall", num(m.recall));
      agg("f1", num(m.f1));
      agg("fpr", num(m.fpr));
      agg("fnr", num(m.fnr));
    } else if (task == "tracegen") {
      std::uint64_t sat = 0, viol = 0, both = 0, nm = 0, valid = 0;
      for (const auto* r : group) {
        valid += r->syntactically_valid;
        if (r->nm_reason) {
          ++nm;
          continue;
        }
        bool s = r->satisfying_ok.value_or(false);
        bool v = r->violating_ok.value_or(false);
        sat += s;
        viol += v;
        both += s && v;
      }
      std::uint64_t scored = group.size() - nm;
      tracegen.rows.push_back({model, approach, interface, std::to_string(sat), std::to_string(viol),
                               std::to_string(both), std::to_string(scored - both),
                               std::to_string(nm), pct(ratio(both, scored)),
                               pct(ratio(valid, group.size()))});
      agg("satisfying_ok", std::to_string(sat));
      agg("violating_ok", std::to_string(viol));
      agg("both_ok", std::to_string(both));
      agg("not_meaningful", std::to_string(nm));
      agg("both_ok_rate", num(ratio(both, scored)));
      agg("syn_corr", num(ratio(valid, group.size())));
    } else {
      double p = 0, rc = 0, f = 0, j = 0;
      std::uint64_t nm = 0;
      for (const auto* r : group) {
        if (r->nm_reason) {
          ++nm;
          continue;
        }
        p += r->precision.value_or(0);
        rc += r->recall.value_or(0);
        f += r->f1.value_or(0);
        j += r->jaccard.value_or(0);
      }
      double scored = static_cast<double>(group.size() - nm);
      nl2pl.rows.push_back({model, approach, interface, std::to_string(group.size() - nm),
                            std::to_string(nm), num(ratio(p, scored)), num(ratio(rc, scored)),
                            num(ratio(f, scored)), num(ratio(j, scored))});
      agg("not_meaningful", std::to_string(nm));
      agg("precision", num(ratio(p, scored)));
      agg("recall", num(ratio(rc, scored)));
      agg("f1", num(ratio(f, scored)));
      agg("jaccard", num(ratio(j, scored)));
    }
  }

  std::ostringstream jsonl;
  for (const auto& r : records) jsonl << record_to_json(r) << '\n';
  write_file(dir / "records.jsonl", jsonl.str(), summary);

  std::vector<Table> tables = {translation, classification, tracegen, nl2pl};
  write_file(dir / "tables.md", markdown(tables), summary);
  write_file(dir / "translation.tsv", tsv(translation), summary);
  write_file(dir / "classification.tsv", tsv(classification), summary);
  write_file(dir / "tracegen.tsv", tsv(tracegen), summary);
  write_file(dir / "nl2pl.tsv", tsv(nl2pl), summary);

  std::ostringstream csv;
  csv << "model,task,approach,interface,metric,value\n";
  for (const auto& a : aggregates) {
    const auto& [model, task, approach, interface] = a.key;
    csv << model << ',' << task << ',' << approach << ',' << interface << ',' << a.metric << ','
        << a.value << '\n';
  }
  write_file(dir / "aggregates.csv", csv.str(), summary);
  write_file(dir / "manifest.json", manifest_to_json(manifest), summary);
  return summary;
}

}  // namespace ltlbench
