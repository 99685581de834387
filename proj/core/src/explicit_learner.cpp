#include "delearn/explicit_learner.hpp"

#include <algorithm>
#include <set>

#include "delearn/domain.hpp"

namespace delearn {

Formula phi_obs(Observation o, const Signature& props) {
  std::vector<Formula> literals;
  std::vector<Formula> unknown;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const Formula p = Formula::atom(props.name(i));
    if ((o.pos >> i) & 1u) {
      literals.push_back(p);
    } else if ((o.neg >> i) & 1u) {
      literals.push_back(Formula::negation(p));
    } else {
      unknown.push_back(Formula::negation(Formula::knows_whether(p)));
    }
  }
  std::vector<Formula> parts;
  if (!literals.empty()) parts.push_back(Formula::knows(Formula::all_of(literals)));
  parts.insert(parts.end(), unknown.begin(), unknown.end());
  return Formula::all_of(parts);
}

std::map<std::string, EventModel, std::less<>> learn_explicit(const Signature& props,
                                                              const std::vector<std::string>& actions,
                                                              const std::vector<ObservedTransition>& sigma) {
  std::map<std::string, EventModel, std::less<>> out;
  for (const auto& a : actions) {
    if (!is_identifier(a)) throw InputError("invalid action name '" + a + "'");
    out[a].props = props;
  }
  // action -> target -> sources
  std::map<std::string, std::map<Observation, std::set<Observation>>> table;
  for (const auto& tr : sigma) {
    if (!out.count(tr.action)) throw InputError("observed transition uses unknown action '" + tr.action + "'");
    for (Observation o : {tr.from, tr.to}) {
      if (!o.consistent() || (o.observed() & ~props.full_mask()) != 0) {
        throw InputError("observed transition carries an invalid observation");
      }
    }
    table[tr.action][tr.to].insert(tr.from);
  }
  const std::uint32_t full = props.full_mask();
  for (auto& [action, targets] : table) {
    EventModel& model = out[action];
    for (const auto& [target, sources] : targets) {
      std::vector<Formula> disjuncts;
      for (Observation src : sources) disjuncts.push_back(phi_obs(src, props));
      const Formula pre = Formula::any_of(disjuncts);
      std::vector<std::size_t> component;
      for (Valuation v : comp(target, props)) {
        component.push_back(model.events.size());
        model.events.push_back(
            Event{"e" + std::to_string(model.events.size()), pre, v.bits & full, ~v.bits & full});
      }
      model.partition.push_back(std::move(component));
    }
  }
  return out;
}

}  // namespace delearn
