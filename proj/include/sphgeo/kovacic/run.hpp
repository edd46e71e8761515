#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sphgeo/kovacic/search.hpp"
#include "sphgeo/parallel.hpp"

namespace sphgeo {

enum class Verdict { solvable, unsolvable };

inline const char* to_string(Verdict v) { return v == Verdict::solvable ? "Solvable" : "Unsolvable"; }

struct LedgerEntry {
  CaseCandidate candidate;
  SearchResult result;
};

struct KovacicOutcome {
  Verdict verdict = Verdict::unsolvable;
  int case_number = 0;  // 1, 2 or 3 when solvable
  std::optional<Solution> solution;
  NecessaryConditions conditions;
  std::vector<int> skipped;  // case labels N ruled out by the necessary conditions
  std::vector<LedgerEntry> ledger;

  std::size_t candidates(int N) const {
    return static_cast<std::size_t>(
        std::count_if(ledger.begin(), ledger.end(), [N](const LedgerEntry& e) { return e.candidate.N == N; }));
  }
};

struct KovacicOptions {
  unsigned threads = 0;
  bool use_necessary_conditions = true;
};

inline int case_of(int N) { return N == 1 ? 1 : N == 2 ? 2 : 3; }

/// Cases are tried in the order 1, 2, 3 (N = 4, 6, 12). All candidates of a
/// label are searched; the first verified solution in ledger order wins.
inline KovacicOutcome run_kovacic(const FuchsianODE& f, const KovacicOptions& opt = {}) {
  KovacicOutcome out;
  out.conditions = necessary_conditions(f);
  for (int N : case_labels()) {
    const int cs = case_of(N);
    const bool allowed = cs == 1 ? out.conditions.case1 : cs == 2 ? out.conditions.case2 : out.conditions.case3;
    if (opt.use_necessary_conditions && !allowed) {
      out.skipped.push_back(N);
      continue;
    }
    const std::vector<CaseCandidate> cands = all_candidates(f, N);
    std::vector<SearchResult> results(cands.size());
    parallel_for(cands.size(), opt.threads, [&](std::size_t i) { results[i] = search(f, cands[i]); });
    const std::size_t first = out.ledger.size();
    for (std::size_t i = 0; i < cands.size(); ++i) out.ledger.push_back({cands[i], std::move(results[i])});
    for (std::size_t i = first; i < out.ledger.size(); ++i) {
      if (out.ledger[i].result.status == SearchStatus::solved) {
        out.verdict = Verdict::solvable;
        out.case_number = cs;
        out.solution = out.ledger[i].result.solution;
        return out;
      }
    }
  }
  return out;
}

}  // namespace sphgeo
