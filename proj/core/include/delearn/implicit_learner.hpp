#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delearn/domain.hpp"
#include "delearn/traces.hpp"

namespace delearn {

/// An observation trace annotated with one hypothesised valuation per
/// observation, each compatible with its observation.
struct History {
  std::vector<Valuation> states;
  ObservationTrace trace;

  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;
};

struct HistoryLimits {
  std::uint64_t budget = 1'000'000;
};

/// True iff the domain read off `h` has a function for both transitions and
/// observations.
bool history_is_deterministic(const History& h);

/// Every history for `trace` whose domain is deterministic, built front to
/// back and abandoning prefixes as soon as they become non-deterministic.
/// Sorted. Throws DomainError when more than `budget` histories survive.
std::vector<History> histories(const Signature& props, const ObservationTrace& trace,
                               const HistoryLimits& limits = {});

/// Reference implementation: every combination of compatible valuations,
/// filtered by history_is_deterministic. Throws DomainError when the number
/// of combinations exceeds the budget.
std::vector<History> histories_by_filter(const Signature& props, const ObservationTrace& trace,
                                         const HistoryLimits& limits = {});

/// Reference implementation: replays the trace under every total transition
/// function over 2^P and every initial valuation, keeping the runs that fit
/// the observations. Throws DomainError when the number of runs exceeds the
/// budget.
std::vector<History> histories_by_transition_functions(const Signature& props, const ObservationTrace& trace,
                                                       const HistoryLimits& limits = {});

/// Union of the histories' domains with the given action set, or nothing
/// if the union is not deterministic. Throws InputError when the histories
/// start at different valuations.
std::optional<Domain> domain_of_histories(const Signature& props, const std::vector<std::string>& actions,
                                          const std::vector<History>& hs);

struct LearnOptions {
  /// Extra actions; the traces' own actions are always included.
  std::vector<std::string> actions;
  /// Enumerate the full product of per-trace history sets instead of the
  /// incremental search.
  bool naive_product = false;
  /// Maximum histories per trace and combinations examined.
  std::uint64_t budget = 10'000'000;
};

/// Every deterministic domain obtained by choosing one history per trace,
/// all starting at the same valuation, sorted and deduplicated.
std::vector<Domain> learn_domains(const Signature& props, const std::vector<ObservationTrace>& traces,
                                  const LearnOptions& opts = {});

/// Synchronous composition of learn_domains. Throws DomainError if no domain
/// is consistent with the traces or the learned domains are not pairwise
/// bisimilar.
Domain learn_implicit(const Signature& props, const std::vector<ObservationTrace>& traces,
                      const LearnOptions& opts = {});

}  // namespace delearn
