#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace coflow {

enum class Rule { kFifo, kStpt, kSmpt, kSmct, kEct, kLp };

inline constexpr std::array<Rule, 6> kAllRules = {Rule::kFifo, Rule::kStpt, Rule::kSmpt,
                                                  Rule::kSmct, Rule::kEct,  Rule::kLp};

inline std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kFifo: return "FIFO";
    case Rule::kStpt: return "STPT";
    case Rule::kSmpt: return "SMPT";
    case Rule::kSmct: return "SMCT";
    case Rule::kEct: return "ECT";
    case Rule::kLp: return "LP";
  }
  return "?";
}

inline Rule parse_rule(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "fifo") return Rule::kFifo;
  if (lower == "stpt") return Rule::kStpt;
  if (lower == "smpt") return Rule::kSmpt;
  if (lower == "smct") return Rule::kSmct;
  if (lower == "ect") return Rule::kEct;
  if (lower == "lp") return Rule::kLp;
  throw std::invalid_argument("unknown ordering rule '" + std::string(text) + "' (expected fifo|stpt|smpt|smct|ect|lp)");
}

struct OrderingResult {
  Rule rule = Rule::kFifo;
  std::vector<CoflowIndex> permutation;  // coflow indices in scheduled order
  std::vector<double> scores;            // per coflow index

  bool is_permutation_of(std::size_t n) const {
    if (permutation.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (CoflowIndex k : permutation) {
      if (k >= n || seen[k]) return false;
      seen[k] = true;
    }
    return true;
  }

  bool scores_nondecreasing() const {
    for (std::size_t p = 1; p < permutation.size(); ++p) {
      if (scores[permutation[p]] < scores[permutation[p - 1]]) return false;
    }
    return true;
  }

  // 1-based ids in scheduled order, as printed in reports.
  std::vector<std::size_t> ids() const {
    std::vector<std::size_t> out;
    out.reserve(permutation.size());
    for (CoflowIndex k : permutation) out.push_back(k + 1);
    return out;
  }
};

// Sorts coflow indices by score ascending, ties by index.
inline OrderingResult order_by_scores(Rule rule, std::vector<double> scores) {
  OrderingResult result;
  result.rule = rule;
  result.permutation = identity_order(scores.size());
  std::stable_sort(result.permutation.begin(), result.permutation.end(),
                   [&](CoflowIndex a, CoflowIndex b) { return scores[a] < scores[b]; });
  result.scores = std::move(scores);
  return result;
}

}  // namespace coflow
