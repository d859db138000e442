#include "ltlbench/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace ltlbench {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  bool pending_space = false;
  for (char c : phrase) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  while (!out.empty() && std::string_view(".,;:!?").find(out.back()) != std::string_view::npos) {
    out.pop_back();
    while (!out.empty() && out.back() == ' ') out.pop_back();
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double phrase_jaccard(std::span<const std::string> a, std::span<const std::string> b) {
  std::set<std::string> sa;
  std::set<std::string> sb;
  for (const auto& p : a) sa.insert(normalize_phrase(p));
  for (const auto& p : b) sb.insert(normalize_phrase(p));
  return jaccard(sa, sb);
}

double token_jaccard(std::span<const std::string> a, std::span<const std::string> b) {
  auto tokens = [](std::span<const std::string> phrases) {
    std::set<std::string> out;
    for (const auto& p : phrases) {
      std::istringstream in(normalize_phrase(p));
      std::string tok;
      while (in >> tok) out.insert(tok);
    }
    return out;
  };
  return jaccard(tokens(a), tokens(b));
}

PropMatchResult match_prop_sets(std::span<const std::string> predicted,
                                std::span<const std::string> gold, double threshold) {
  PropMatchResult out;
  std::vector<std::string> np;
  std::vector<std::string> ng;
  for (const auto& p : predicted) np.push_back(normalize_phrase(p));
  for (const auto& g : gold) ng.push_back(normalize_phrase(g));

  std::vector<PhraseMatch> candidates;
  out.similarities.assign(np.size(), std::vector<double>(ng.size(), 0.0));
  for (std::size_t i = 0; i < np.size(); ++i) {
    for (std::size_t j = 0; j < ng.size(); ++j) {
      double s = levenshtein_similarity(np[i], ng[j]);
      out.similarities[i][j] = s;
      if (s >= threshold) candidates.push_back({i, j, s});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PhraseMatch& a, const PhraseMatch& b) { return a.similarity > b.similarity; });
  std::vector<bool> used_p(np.size(), false);
  std::vector<bool> used_g(ng.size(), false);
  double sim_sum = 0;
  for (const auto& c : candidates) {
    if (used_p[c.predicted] || used_g[c.gold]) continue;
    used_p[c.predicted] = used_g[c.gold] = true;
    out.matching.push_back(c);
    sim_sum += c.similarity;
  }
  out.precision = ratio(out.matching.size(), np.size());
  out.recall = ratio(out.matching.size(), ng.size());
  out.f1 = harmonic(out.precision, out.recall);
  out.mean_matched_similarity = out.matching.empty() ? 0.0 : sim_sum / static_cast<double>(out.matching.size());
  return out;
}

void ConfusionCounts::add(bool predicted_positive, bool actually_positive) {
  if (predicted_positive) {
    ++(actually_positive ? tp : fp);
  } else {
    ++(actually_positive ? fn : tn);
  }
}

ClassificationMetrics classification_metrics(const ConfusionCounts& c) {
  ClassificationMetrics m;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.f1 = harmonic(m.precision, m.recall);
  m.fpr = ratio(c.fp, c.fp + c.tn);
  m.fnr = ratio(c.fn, c.fn + c.tp);
  return m;
}

SemanticRates rates_from_tally(const SemanticTally& t) {
  SemanticRates r;
  r.tally = t;
  r.equivalence_accuracy = ratio(t.equivalent, t.meaningful());
  r.soundness = ratio(t.sound, t.meaningful());
  r.completeness = ratio(t.complete, t.meaningful());
  r.syntactic_correctness = ratio(t.syntactically_valid, t.total);
  r.not_meaningful_share = ratio(t.not_meaningful, t.total);
  return r;
}

SemanticRates aggregate_semantic(std::span<const SemanticOutcome> records) {
  SemanticTally t;
  for (const auto& r : records) {
    ++t.total;
    if (r.syntactically_valid) ++t.syntactically_valid;
    switch (r.status) {
      case SemanticOutcome::Status::Equivalent: ++t.equivalent; break;
      case SemanticOutcome::Status::NotEquivalent: ++t.not_equivalent; break;
      case SemanticOutcome::Status::NotMeaningful: ++t.not_meaningful; continue;
    }
    if (r.sound) ++t.sound;
    if (r.complete) ++t.complete;
  }
  return rates_from_tally(t);
}

}  // namespace ltlbench
