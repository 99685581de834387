#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "delearn/formula.hpp"
#include "delearn/signature.hpp"

namespace delearn {

/// Raised when a formula cannot be evaluated in the given context.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-agent epistemic model. The indistinguishability relation is stored
/// as a partition of world indices into components.
struct EpistemicModel {
  Signature props;
  std::vector<Valuation> worlds;
  std::vector<std::vector<std::size_t>> partition;

  std::size_t size() const { return worlds.size(); }
  bool empty() const { return worlds.empty(); }
  /// Component index of every world. Throws InputError if `partition` is not
  /// a partition of the worlds.
  std::vector<std::size_t> component_of() const;

  friend bool operator==(const EpistemicModel&, const EpistemicModel&) = default;
};

/// A model with one component holding the given valuations, canonicalised.
EpistemicModel single_component_model(const Signature& props, std::vector<Valuation> vals);

enum class PostValue { set_true, set_false, keep };

struct Event {
  std::string id;
  Formula pre = Formula::top();
  std::uint32_t set_true = 0;
  std::uint32_t set_false = 0;

  PostValue post(std::size_t prop) const;
  Valuation apply(Valuation v) const { return Valuation{(v.bits | set_true) & ~set_false}; }
};

struct EventModel {
  Signature props;
  std::vector<Event> events;
  std::vector<std::vector<std::size_t>> partition;

  std::vector<std::size_t> component_of() const;
};

/// One event with precondition `true` and every postcondition `keep`.
EventModel identity_event_model(const Signature& props);

using EventEnv = std::map<std::string, EventModel, std::less<>>;

/// Resolves the dynamic modalities of a formula. `action_box` decides
/// `[a] body` independently of the world; it is supplied by domain-level
/// evaluation.
struct EvalContext {
  const EventEnv* events = nullptr;
  std::function<bool(const std::string& action, const Formula& body)> action_box;
};

/// Truth value of `f` at every world of `m`.
std::vector<bool> eval_worlds(const EpistemicModel& m, const Formula& f, const EvalContext& ctx = {});

bool eval(const EpistemicModel& m, std::size_t world, const Formula& f, const EventEnv& env = {});
bool eval_global(const EpistemicModel& m, const Formula& f, const EventEnv& env = {});

/// Uncontracted product: world i of `model` is the pair origin[i].
struct RawProduct {
  EpistemicModel model;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
};

RawProduct product_update_raw(const EpistemicModel& m, const EventModel& e, const EvalContext& ctx = {});

/// Product update followed by canonicalisation.
EpistemicModel product_update(const EpistemicModel& m, const EventModel& e, const EventEnv& env = {});

/// Bisimulation contraction with a unique representation: valuations within
/// a component deduplicated and sorted, components deduplicated and sorted by
/// their valuation lists, worlds numbered in that order.
EpistemicModel canonicalize(const EpistemicModel& m);

bool models_bisimilar(const EpistemicModel& a, const EpistemicModel& b);

/// Each connected component as its own canonical model.
std::vector<EpistemicModel> components(const EpistemicModel& m);

/// Sorted valuation set of a single-component model's worlds.
std::vector<Valuation> valuation_set(const EpistemicModel& m);

}  // namespace delearn
