#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "bellcomb/bell_game.hpp"

namespace bellcomb {

/// Fixed 9-digit fractional formatting with '.' separator, so emitted files
/// are byte-stable across platforms and locales.
inline std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", x);
  return buf;
}

/// One row per box pair, then a blank line and a one-row summary block.
inline void write_session_csv(const SessionRecord& record, std::ostream& out) {
  out << "pair_index,alice_colour,charlie_colour,product\n";
  for (std::size_t i = 0; i < record.settings.size(); ++i) {
    out << i << ',' << to_string(record.settings[i].first) << ','
        << to_string(record.settings[i].second) << ',' << record.products[i] << '\n';
  }
  out << "\nmean_rr,mean_rg,mean_gr,mean_gg,f_statistic,decision,payout\n";
  for (double m : record.cell_means) out << format_fixed(m) << ',';
  out << format_fixed(record.f_statistic) << ',' << to_string(record.decision) << ','
      << format_fixed(record.payout) << '\n';
}

/// One row per (agent, session) with the session statistics.
inline void write_ledger_csv(const BankrollLedger& ledger, std::ostream& out) {
  out << "agent,session_index,seed,decision,f_statistic,payout\n";
  for (const auto& agent : ledger.agents) {
    for (std::size_t s = 0; s < agent.payouts.size(); ++s) {
      out << agent.agent << ',' << s << ',' << agent.session_seeds[s] << ','
          << to_string(agent.decisions[s]) << ',' << format_fixed(agent.f_statistics[s])
          << ',' << format_fixed(agent.payouts[s]) << '\n';
    }
  }
}

}  // namespace bellcomb
