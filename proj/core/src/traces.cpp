#include "delearn/traces.hpp"

#include <algorithm>

namespace delearn {

void check_trace(const ObservationTrace& t) {
  if (t.observations.size() != t.actions.size() + 1) {
    throw InputError("an observation trace needs exactly one more observation than actions");
  }
}

ExecutionTrace execute(const Domain& d, std::size_t start, const std::vector<std::string>& actions) {
  require_deterministic(d, "execution");
  if (start >= d.size()) throw InputError("start state out of range");
  ExecutionTrace e;
  e.states.push_back(start);
  for (const auto& name : actions) {
    const std::size_t a = d.action_index(name);
    e.states.push_back(d.step(e.states.back(), a));
    e.actions.push_back(name);
  }
  return e;
}

ObservationTrace observe(const Domain& d, const ExecutionTrace& e) {
  ObservationTrace t;
  for (std::size_t s : e.states) {
    if (s >= d.size()) throw InputError("execution trace leaves the domain");
    t.observations.push_back(d.obs[s]);
  }
  t.actions = e.actions;
  check_trace(t);
  return t;
}

std::vector<ObservedTransition> sound_complete_transitions(const Domain& d) {
  std::vector<ObservedTransition> out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (std::size_t a = 0; a < d.actions.size(); ++a) {
      for (std::size_t t : d.succ[s][a]) out.push_back({d.obs[s], d.actions[a], d.obs[t]});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t completeness_bound(const Signature& props) {
  if (props.size() > 15) throw DomainError("completeness bound overflows for more than 15 propositions");
  return std::size_t{1} << (2 * props.size());
}

std::vector<ObservationTrace> sound_complete_traces(const Domain& d, std::optional<std::size_t> length,
                                                    std::uint64_t budget) {
  require_deterministic(d, "trace generation");
  const std::size_t len = length ? *length : completeness_bound(d.props);
  const std::uint64_t nact = d.actions.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < len && nact > 1; ++i) {
    count *= nact;
    if (count > budget) {
      throw DomainError("trace generation would produce more than " + std::to_string(budget) + " traces");
    }
  }
  std::vector<ObservationTrace> out;
  if (nact == 0 && len > 0) return out;

  ObservationTrace current;
  current.observations.push_back(d.obs[d.initial]);
  // Depth-first over action sequences; `stack` holds the state after each prefix.
  std::vector<std::size_t> stack{d.initial};
  std::vector<std::size_t> choice;
  while (true) {
    if (current.actions.size() == len) {
      out.push_back(current);
    } else {
      choice.push_back(0);
      const std::size_t s = d.step(stack.back(), 0);
      stack.push_back(s);
      current.actions.push_back(d.actions[0]);
      current.observations.push_back(d.obs[s]);
      continue;
    }
    // Backtrack to the deepest position with an untried action.
    while (!choice.empty() && choice.back() + 1 == nact) {
      choice.pop_back();
      stack.pop_back();
      current.actions.pop_back();
      current.observations.pop_back();
    }
    if (choice.empty()) break;
    const std::size_t a = ++choice.back();
    stack.pop_back();
    const std::size_t s = d.step(stack.back(), a);
    stack.push_back(s);
    current.actions.back() = d.actions[a];
    current.observations.back() = d.obs[s];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string render_trace(const ObservationTrace& t, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < t.observations.size(); ++i) {
    if (i) out += ' ' + t.actions[i - 1] + ' ';
    out += '[' + render_observation(t.observations[i], sig) + ']';
  }
  return out;
}

}  // namespace delearn
