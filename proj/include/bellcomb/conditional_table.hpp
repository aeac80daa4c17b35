#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bellcomb/distribution.hpp"
#include "bellcomb/errors.hpp"

namespace bellcomb {

/// A map from condition labels to distributions over one shared outcome
/// support: the representation of P(outcome | condition).
class ConditionalTable {
 public:
  ConditionalTable(std::vector<std::string> conditions, std::vector<FiniteDistribution> rows)
      : conditions_(std::move(conditions)), rows_(std::move(rows)) {
    if (conditions_.size() != rows_.size()) {
      throw SupportMismatch("condition count differs from row count");
    }
    if (rows_.empty()) throw DegenerateDistribution("conditional table has no rows");
    for (const auto& r : rows_) {
      if (!r.same_support(rows_.front())) {
        throw SupportMismatch("conditional table rows have different outcome supports");
      }
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& c : conditions_) {
      if (!seen.insert(c).second) throw DuplicateLabel("condition '" + c + "' appears twice");
    }
  }

  /// Convenience: rows given as raw mass vectors over a shared support.
  static ConditionalTable from_rows(std::vector<std::string> conditions,
                                    std::vector<std::string> outcome_support,
                                    const std::vector<std::vector<double>>& masses) {
    std::vector<FiniteDistribution> rows;
    rows.reserve(masses.size());
    for (const auto& m : masses) rows.emplace_back(outcome_support, m);
    return ConditionalTable(std::move(conditions), std::move(rows));
  }

  const std::vector<std::string>& conditions() const { return conditions_; }
  const std::vector<std::string>& outcome_support() const {
    return rows_.front().support();
  }

  bool has_condition(std::string_view condition) const {
    return index_of(condition) != conditions_.size();
  }

  const FiniteDistribution& row(std::string_view condition) const {
    const std::size_t i = index_of(condition);
    if (i == conditions_.size()) {
      throw UnknownLabel("condition '" + std::string(condition) + "' not in table");
    }
    return rows_[i];
  }

  double probability(std::string_view condition, std::string_view outcome) const {
    return row(condition).mass_of(outcome);
  }

 private:
  std::size_t index_of(std::string_view condition) const {
    for (std::size_t i = 0; i < conditions_.size(); ++i) {
      if (conditions_[i] == condition) return i;
    }
    return conditions_.size();
  }

  std::vector<std::string> conditions_;
  std::vector<FiniteDistribution> rows_;
};

}  // namespace bellcomb
