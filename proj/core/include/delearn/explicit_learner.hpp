#pragma once

#include <map>
#include <string>
#include <vector>

#include "delearn/epistemic.hpp"
#include "delearn/traces.hpp"

namespace delearn {

/// K(observed literals) together with ~Kw p for every unobserved p:
/// the explicit knowledge carried by observation `o`. The K conjunct is
/// left out when nothing is observed.
Formula phi_obs(Observation o, const Signature& props);

/// One event model per action. Each model has one component per target
/// observation of the action in `sigma`; its events share the disjunction of
/// phi_obs over the source observations as precondition, and there is one
/// event per valuation compatible with the target observation.
///
/// Every action in `actions` gets a model, empty if it has no transitions.
/// Throws InputError when `sigma` mentions an action outside `actions`.
std::map<std::string, EventModel, std::less<>> learn_explicit(const Signature& props,
                                                              const std::vector<std::string>& actions,
                                                              const std::vector<ObservedTransition>& sigma);

}  // namespace delearn
