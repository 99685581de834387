#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delearn/domain.hpp"
#include "delearn/formula.hpp"

namespace delearn {

/// Shortest action sequence leading from `start` to a state satisfying
/// `goal` (evaluated with eval_on_state), searching breadth first with
/// actions in sorted order. `horizon` bounds the plan length and defaults to
/// the number of states. Throws InputError for a non-positive horizon and
/// DomainError when some action has several successors.
/// Actions missing from a state are simply not taken.
std::optional<std::vector<std::string>> plan(const Domain& d, std::size_t start, const Formula& goal,
                                             std::optional<long long> horizon = {});

}  // namespace delearn
