#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ltlbench/datasets.hpp"
#include "ltlbench/syntax.hpp"
#include "rng.hpp"

namespace ltlbench {

namespace {

using detail::uniform_index;
using detail::unit_double;

Op pick_weighted(std::mt19937_64& rng, const std::vector<std::pair<Op, double>>& options) {
  double total = 0;
  for (const auto& [op, w] : options) total += w;
  double x = unit_double(rng) * total;
  for (const auto& [op, w] : options) {
    if (x < w) return op;
    x -= w;
  }
  return options.back().first;
}

struct Productions {
  std::vector<std::pair<Op, double>> leaves;
  std::vector<std::pair<Op, double>> inner;
};

Productions productions(const SamplerConfig& cfg) {
  Productions p;
  for (const auto& [op, w] : cfg.weights) {
    if (w <= 0) continue;
    if (op == Op::Atom && cfg.vocabulary.empty()) continue;
    (is_unary(op) || is_binary(op) ? p.inner : p.leaves).emplace_back(op, w);
  }
  if (p.leaves.empty()) throw std::invalid_argument("sampler has no leaf production");
  return p;
}

Formula grow(const SamplerConfig& cfg, const Productions& p, std::size_t depth,
             std::mt19937_64& rng) {
  if (depth == 0 || p.inner.empty()) {
    Op leaf = pick_weighted(rng, p.leaves);
    if (leaf == Op::Atom) {
      return ap(cfg.vocabulary.names()[uniform_index(rng, cfg.vocabulary.size())]);
    }
    return Formula::literal(leaf == Op::True);
  }
  Op op = pick_weighted(rng, p.inner);
  if (is_unary(op)) return Formula::unary(op, grow(cfg, p, depth - 1, rng));
  // One operand carries the full remaining depth, the other any smaller depth.
  std::size_t other = uniform_index(rng, depth);
  bool deep_left = uniform_index(rng, 2) == 0;
  Formula deep = grow(cfg, p, depth - 1, rng);
  Formula shallow = grow(cfg, p, other, rng);
  return deep_left ? Formula::binary(op, deep, shallow) : Formula::binary(op, shallow, deep);
}

// print_ltl with one binary node altered. `target` counts binary nodes in preorder.
void print_mutated(const Formula& f, Mutation m, std::size_t target, std::size_t& seen,
                   std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Not:
      out += "(!";
      print_mutated(f.child(), m, target, seen, out);
      out += ')';
      return;
    default: break;
  }
  out += '(';
  if (is_unary(f.op())) {
    out += symbol(f.op());
    out += ' ';
    print_mutated(f.child(), m, target, seen, out);
    out += ')';
    return;
  }
  const bool here = seen++ == target;
  if (!(here && m == Mutation::DeleteLeftOperand)) {
    print_mutated(f.left(), m, target, seen, out);
    out += ' ';
  }
  out += symbol(f.op());
  if (here && m == Mutation::DuplicateBinaryOperator) {
    out += ' ';
    out += symbol(f.op());
  }
  if (!(here && m == Mutation::DeleteRightOperand)) {
    out += ' ';
    print_mutated(f.right(), m, target, seen, out);
  }
  out += ')';
}

std::size_t count_binary(const Formula& f) {
  if (is_binary(f.op())) return 1 + count_binary(f.left()) + count_binary(f.right());
  if (is_unary(f.op())) return count_binary(f.child());
  return 0;
}

}  // namespace

std::map<Op, double> SamplerConfig::default_weights() {
  std::map<Op, double> w;
  for (Op op : {Op::Not, Op::And, Op::Or, Op::Implies, Op::Equiv, Op::Next, Op::Eventually,
                Op::Globally, Op::Until, Op::Yesterday, Op::Once, Op::Historically, Op::Since}) {
    w[op] = 1.0;
  }
  w[Op::Atom] = 8.0;
  w[Op::True] = 1.0;
  w[Op::False] = 1.0;
  return w;
}

Formula sample_formula(const SamplerConfig& cfg, std::mt19937_64& rng) {
  if (cfg.min_depth > cfg.max_depth) throw std::invalid_argument("min_depth exceeds max_depth");
  Productions p = productions(cfg);
  std::size_t depth = cfg.min_depth + uniform_index(rng, cfg.max_depth - cfg.min_depth + 1);
  return grow(cfg, p, depth, rng);
}

Formula sample_formula(const SamplerConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_formula(cfg, rng);
}

std::size_t sample_geometric_depth(std::mt19937_64& rng, double p, std::size_t cap) {
  std::vector<double> mass(cap + 1);
  for (std::size_t d = 0; d <= cap; ++d) mass[d] = std::pow(1.0 - p, static_cast<double>(d));
  double x = unit_double(rng) * std::accumulate(mass.begin(), mass.end(), 0.0);
  for (std::size_t d = 0; d <= cap; ++d) {
    if (x < mass[d]) return d;
    x -= mass[d];
  }
  return cap;
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::DeleteLeftOperand: return "delete-left-operand";
    case Mutation::DeleteRightOperand: return "delete-right-operand";
    case Mutation::DropParenthesis: return "drop-parenthesis";
    case Mutation::DuplicateBinaryOperator: return "duplicate-binary-operator";
    case Mutation::TruncateSuffix: return "truncate-suffix";
  }
  return "";
}

std::size_t mutation_sites(const Formula& f, Mutation m) {
  switch (m) {
    case Mutation::DeleteLeftOperand:
    case Mutation::DeleteRightOperand:
    case Mutation::DuplicateBinaryOperator:
      return count_binary(f);
    case Mutation::DropParenthesis: {
      std::string s = print_ltl(f);
      return static_cast<std::size_t>(std::count_if(s.begin(), s.end(),
                                                     [](char c) { return c == '(' || c == ')'; }));
    }
    case Mutation::TruncateSuffix: {
      std::size_t n = print_ltl(f).size();
      return n > 1 ? n - 1 : 0;
    }
  }
  return 0;
}

std::string apply_mutation(const Formula& f, Mutation m, std::size_t site) {
  if (site >= mutation_sites(f, m)) throw std::out_of_range("mutation site out of range");
  std::string printed = print_ltl(f);
  switch (m) {
    case Mutation::DropParenthesis: {
      std::size_t seen = 0;
      for (std::size_t i = 0; i < printed.size(); ++i) {
        if ((printed[i] == '(' || printed[i] == ')') && seen++ == site) {
          return printed.erase(i, 1);
        }
      }
      break;
    }
    case Mutation::TruncateSuffix:
      return printed.substr(0, site + 1);
    default: {
      std::string out;
      std::size_t seen = 0;
      print_mutated(f, m, site, seen, out);
      return out;
    }
  }
  return printed;
}

MalformedString mutate_malformed(const Formula& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Mutation> order = {Mutation::DeleteLeftOperand, Mutation::DeleteRightOperand,
                                 Mutation::DropParenthesis, Mutation::DuplicateBinaryOperator,
                                 Mutation::TruncateSuffix};
  detail::shuffle(order, rng);
  for (Mutation m : order) {
    std::size_t sites = mutation_sites(f, m);
    if (sites == 0) continue;
    std::size_t start = uniform_index(rng, sites);
    for (std::size_t k = 0; k < sites; ++k) {
      std::size_t site = (start + k) % sites;
      std::string text = apply_mutation(f, m, site);
      if (!check_wff(text).well_formed) return {std::move(text), m, site};
    }
  }
  throw MutationExhausted("no mutation of '" + print_ltl(f) + "' is malformed");
}

std::vector<WffItem> generate_wff_corpus(std::size_t count, std::uint64_t seed,
                                         const SamplerConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::vector<WffItem> out;
  out.reserve(count);
  const std::size_t well_formed = (count + 1) / 2;
  for (std::size_t i = 0; i < count; ++i) {
    SamplerConfig depth_cfg = cfg;
    depth_cfg.min_depth = depth_cfg.max_depth =
        std::min(cfg.max_depth, sample_geometric_depth(rng, 0.3, cfg.max_depth));
    WffItem item;
    char id[32];
    std::snprintf(id, sizeof id, "wff-%04zu", i + 1);
    item.id = id;
    if (i < well_formed) {
      Formula f = sample_formula(depth_cfg, rng);
      item.formula_text = print_ltl(f);
      item.well_formed = true;
      item.ast_depth = f.depth();
    } else {
      // Bare atoms cannot be broken; resample until a mutation applies.
      for (int attempt = 0;; ++attempt) {
        if (attempt == 1000) throw MutationExhausted("sampler only produces unbreakable formulas");
        Formula f = sample_formula(depth_cfg, rng);
        try {
          item.formula_text = mutate_malformed(f, rng()).text;
          item.ast_depth = f.depth();
          break;
        } catch (const MutationExhausted&) {
          depth_cfg.min_depth = depth_cfg.max_depth = std::max<std::size_t>(1, depth_cfg.max_depth);
        }
      }
    }
    out.push_back(std::move(item));
  }
  detail::shuffle(out, rng);
  return out;
}

}  // namespace ltlbench
