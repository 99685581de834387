#pragma once

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "delearn/domain.hpp"
#include "delearn/epistemic.hpp"
#include "delearn/traces.hpp"

namespace fixtures {

using delearn::Domain;

struct StateSpec {
  std::string val;
  std::string obs;
};

using Edge = std::tuple<std::size_t, std::string, std::size_t>;

/// Valuation domain from literal strings; state 0 is initial. The
/// deterministic flag is set iff the result is functional and total.
Domain make_domain(const std::vector<std::string>& props, const std::vector<std::string>& actions,
                   const std::vector<StateSpec>& states, const std::vector<Edge>& edges);

/// Light switch over {l, r, s}: s0 = ~l~r~s, s1 = l~rs, s2 = lrs, s3 = ~lr~s.
/// With `flip_loops` the flip self-loops at s2 and s3 make it total.
Domain light_switch(bool flip_loops = true);

/// Door knocking over {p, q}: pq -> ~pq -> ~p~q -> pq, observing only q.
Domain door();

/// Door-knocking variant whose third state steps back to the second.
Domain door_broken();

/// Three-state cycle with observations q, q, ~q over the given valuations;
/// door() is door_cycle("p q", "~p q", "~p ~q").
Domain door_cycle(const std::string& v0, const std::string& v1, const std::string& v2);

/// The four domains bisimilar to the door-knocking domain, in canonical order.
std::vector<Domain> door_bisimilar();

/// Box over {p}: s0 = ~p observed as nothing, s1 = p observed as p, flip
/// toggles.
Domain box();

/// Coin with heads up: one world where h holds.
delearn::EpistemicModel coin_model();
/// Coin toss: events <true, h> and <true, ~h>, mutually distinguishable.
delearn::EventModel coin_toss();

/// (q, a, q, a, ~q, a, q, a, q) over {p, q}.
delearn::ObservationTrace door_trace();

/// Random valid deterministic domain: distinct valuation states, every
/// state reachable, noiseless observations with each proposition observed
/// with probability `observe_prob`.
Domain random_domain(std::mt19937& rng, std::size_t nprops, std::size_t max_states, std::size_t nactions,
                     double observe_prob = 0.5);

/// Random perturbation of `d`: either one transition redirected or one
/// observation changed (kept noiseless), keeping the domain valid.
Domain perturb(std::mt19937& rng, const Domain& d);

delearn::Signature signature(const std::vector<std::string>& names);

/// Random formula of at most `depth` nested operators over `atoms`, using
/// every connective, K and Kw, and `[name]` for each name in `boxes`.
delearn::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, int depth,
                                const std::vector<std::string>& boxes = {});

/// Random epistemic model with 1..max_worlds worlds in random components.
delearn::EpistemicModel random_model(std::mt19937& rng, const delearn::Signature& sig, std::size_t max_worlds);

/// Random event model with 1..max_events events, static
/// preconditions, and random postconditions including keep.
delearn::EventModel random_event_model(std::mt19937& rng, const delearn::Signature& sig, std::size_t max_events);

/// Observational bisimilarity by partition refinement on the disjoint union
/// of two deterministic domains.
bool bisimilar_by_refinement(const Domain& a, const Domain& b);

/// Every deterministic generated valuation domain bisimilar to `d`, found by
/// trying all state sets, observation choices and transition functions.
/// Sorted and deduplicated like enumerate_bisimilar. Meant for |A| = 1 or
/// tiny signatures.
std::vector<Domain> brute_force_bisimilar(const Domain& d);

}  // namespace fixtures
