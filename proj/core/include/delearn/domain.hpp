#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "delearn/epistemic.hpp"
#include "delearn/formula.hpp"
#include "delearn/signature.hpp"

namespace delearn {

/// Raised when an operation's precondition on its domain arguments fails,
/// e.g. bisimulation checks on non-deterministic domains.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Propositions observed true (`pos`) and observed false (`neg`).
///
/// Ordered literal by literal in signature order, with observed-true before
/// observed-false before unobserved.
struct Observation {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;

  bool consistent() const { return (pos & neg) == 0; }
  std::uint32_t observed() const { return pos | neg; }
  /// Noiseless: every observed literal holds in `v`.
  bool compatible(Valuation v) const { return (pos & ~v.bits) == 0 && (neg & v.bits) == 0; }

  friend bool operator==(Observation, Observation) = default;
  friend std::strong_ordering operator<=>(Observation a, Observation b);
};

/// "~r ~s", "l r"; the empty observation renders "true".
std::string render_observation(Observation o, const Signature& sig);
/// Inverse of render_observation; unmentioned propositions are unobserved.
Observation parse_observation(std::string_view text, const Signature& sig);
/// Observation revealing every proposition of `v`.
Observation full_observation(Valuation v, const Signature& sig);

/// Set of valuations, the payload of compatibility-domain states.
struct CompSet {
  std::vector<Valuation> vals;
  friend bool operator==(const CompSet&, const CompSet&) = default;
};

/// Ordered tuple of valuations, the payload of synchronous-composition states.
struct GlobalState {
  std::vector<Valuation> parts;
  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

using StatePayload = std::variant<Valuation, CompSet, GlobalState, EpistemicModel>;

enum class StateKind { val, compset, tuple, model };

StateKind kind_of(const StatePayload& p);
const char* kind_name(StateKind k);

/// A partially observable domain over a finite signature.
///
/// States are indices; `succ[s][a]` lists the a-successors of s in
/// increasing order. `deterministic` records the intended reading: when set,
/// every state has exactly one successor per action.
struct Domain {
  Signature props;
  std::vector<std::string> actions;
  std::vector<StatePayload> states;
  std::vector<std::string> ids;
  std::vector<Observation> obs;
  std::vector<std::vector<std::vector<std::size_t>>> succ;
  std::size_t initial = 0;
  bool deterministic = true;

  Domain() = default;
  /// Sorts and deduplicates `actions`.
  Domain(Signature props, std::vector<std::string> actions);

  std::size_t size() const { return states.size(); }
  /// Appends a state; an empty id becomes "s<index>".
  std::size_t add_state(StatePayload payload, Observation o, std::string id = {});
  void add_transition(std::size_t from, std::size_t action, std::size_t to);

  std::optional<std::size_t> find_action(std::string_view name) const;
  /// Throws InputError for unknown actions.
  std::size_t action_index(std::string_view name) const;
  std::optional<std::size_t> find_state(std::string_view id) const;
  /// Throws InputError for unknown state ids.
  std::size_t state_index(std::string_view id) const;

  /// The unique a-successor; throws DomainError if there is none or several.
  std::size_t step(std::size_t s, std::size_t action) const;

  bool is_functional() const;
  bool is_total() const;
  std::size_t transition_count() const;
  StateKind kind() const;
  const Valuation& valuation(std::size_t s) const;
};

/// Every violation of the domain conditions, one message each; empty iff the
/// domain is valid.
std::vector<std::string> validate(const Domain& d);

/// Throws DomainError unless `d` is valid, deterministic and has
/// valuation states.
void require_deterministic_val_domain(const Domain& d, const char* operation);
/// Throws DomainError unless `d` is functional and total.
void require_deterministic(const Domain& d, const char* operation);

/// Valuations compatible with `o`, in canonical order.
std::vector<Valuation> comp(Observation o, const Signature& sig);

Domain compatibility_domain(const Domain& d);

/// Single-component model of a state's valuations; model payloads are
/// returned as they are.
EpistemicModel induced_epistemic_model(const Signature& props, const StatePayload& payload);
EpistemicModel induced_epistemic_model(const Domain& d, std::size_t s);

/// Propositions known true and known false throughout `m`.
Observation observation_of_model(const EpistemicModel& m);

/// Domain reachable from `m0` by following connected components of product
/// updates. Empty successors are dropped.
Domain induced_domain(const std::map<std::string, EventModel, std::less<>>& models, const EpistemicModel& m0);

/// Evaluates `f` on the induced model of `s`; `[a] g` holds iff `g` holds at
/// every a-successor of `s`.
bool eval_on_state(const Domain& d, std::size_t s, const Formula& f);

/// Human-readable payload: "p ~q", "{p q, ~p q}", "(p q, ~p q)".
std::string render_payload(const Domain& d, std::size_t s);

}  // namespace delearn
