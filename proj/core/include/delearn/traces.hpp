#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delearn/domain.hpp"

namespace delearn {

/// States s0..sn and the actions a0..a(n-1) taken between them.
struct ExecutionTrace {
  std::vector<std::size_t> states;
  std::vector<std::string> actions;
};

/// Observations o0..on and the actions a0..a(n-1) taken between them.
struct ObservationTrace {
  std::vector<Observation> observations;
  std::vector<std::string> actions;

  std::size_t length() const { return actions.size(); }

  friend bool operator==(const ObservationTrace&, const ObservationTrace&) = default;
  friend auto operator<=>(const ObservationTrace&, const ObservationTrace&) = default;
};

/// (Obs(s), a, Obs(t)) for a transition (s, a, t).
struct ObservedTransition {
  Observation from;
  std::string action;
  Observation to;

  friend bool operator==(const ObservedTransition&, const ObservedTransition&) = default;
  friend auto operator<=>(const ObservedTransition& x, const ObservedTransition& y) {
    if (auto c = x.action <=> y.action; c != 0) return c;
    if (auto c = x.to <=> y.to; c != 0) return c;
    return x.from <=> y.from;
  }
};

/// Throws InputError when a trace's observation and action counts disagree.
void check_trace(const ObservationTrace& t);

/// Runs `actions` from `start` in a deterministic domain.
ExecutionTrace execute(const Domain& d, std::size_t start, const std::vector<std::string>& actions);

ObservationTrace observe(const Domain& d, const ExecutionTrace& e);

/// Every observed transition of `d`, sorted and deduplicated.
std::vector<ObservedTransition> sound_complete_transitions(const Domain& d);

/// 2^(2|P|), the trace length guaranteeing completeness.
std::size_t completeness_bound(const Signature& props);

/// Observation traces of every action sequence of exactly `length` actions
/// from the initial state, sorted and deduplicated. `length` defaults to
/// completeness_bound. Throws DomainError when |A|^length exceeds `budget`.
std::vector<ObservationTrace> sound_complete_traces(const Domain& d, std::optional<std::size_t> length = {},
                                                    std::uint64_t budget = 1'000'000);

/// "o0 a0 o1 ..." with observations rendered as in render_observation and
/// wrapped in brackets: "[q] a [q] a [~q]".
std::string render_trace(const ObservationTrace& t, const Signature& sig);

}  // namespace delearn
