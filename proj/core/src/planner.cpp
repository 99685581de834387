#include "delearn/planner.hpp"

#include <algorithm>
#include <deque>

namespace delearn {

std::optional<std::vector<std::string>> plan(const Domain& d, std::size_t start, const Formula& goal,
                                             std::optional<long long> horizon) {
  if (horizon && *horizon <= 0) throw InputError("planning horizon must be positive");
  if (!d.is_functional()) throw DomainError("planning requires a deterministic domain");
  if (start >= d.size()) throw InputError("start state out of range");
  for (const auto& name : atoms_of(goal)) d.props.index(name);
  const std::size_t limit = horizon ? static_cast<std::size_t>(*horizon) : d.size();

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(d.size(), none);
  std::vector<std::size_t> via(d.size(), none);
  std::vector<std::size_t> depth(d.size(), 0);
  std::vector<bool> seen(d.size(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    if (eval_on_state(d, s, goal)) {
      std::vector<std::string> out;
      for (std::size_t t = s; t != start; t = parent[t]) out.push_back(d.actions[via[t]]);
      std::reverse(out.begin(), out.end());
      return out;
    }
    if (depth[s] == limit) continue;
    for (std::size_t a = 0; a < d.actions.size(); ++a) {
      for (std::size_t t : d.succ[s][a]) {
        if (seen[t]) continue;
        seen[t] = true;
        parent[t] = s;
        via[t] = a;
        depth[t] = depth[s] + 1;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace delearn
