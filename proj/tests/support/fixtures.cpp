#include "fixtures.hpp"

#include <algorithm>
#include <set>

#include "delearn/equivalence.hpp"

namespace fixtures {

using namespace delearn;

Signature signature(const std::vector<std::string>& names) { return Signature(names); }

Domain make_domain(const std::vector<std::string>& props, const std::vector<std::string>& actions,
                   const std::vector<StateSpec>& states, const std::vector<Edge>& edges) {
  Domain d(Signature(props), actions);
  for (const auto& s : states) {
    d.add_state(parse_valuation(s.val, d.props), parse_observation(s.obs, d.props));
  }
  for (const auto& [from, action, to] : edges) d.add_transition(from, d.action_index(action), to);
  d.initial = 0;
  d.deterministic = d.is_functional() && d.is_total();
  return d;
}

Domain light_switch(bool flip_loops) {
  std::vector<Edge> edges{
      {0, "flip", 1}, {1, "flip", 0}, {1, "move", 2}, {2, "move", 1}, {0, "move", 3}, {3, "move", 0},
  };
  if (flip_loops) {
    edges.emplace_back(2, "flip", 2);
    edges.emplace_back(3, "flip", 3);
  }
  return make_domain({"l", "r", "s"}, {"flip", "move"},
                     {{"~l ~r ~s", "~r ~s"}, {"l ~r s", "~r s"}, {"l r s", "l r"}, {"~l r ~s", "~l r"}}, edges);
}

Domain door_cycle(const std::string& v0, const std::string& v1, const std::string& v2) {
  return make_domain({"p", "q"}, {"a"}, {{v0, "q"}, {v1, "q"}, {v2, "~q"}}, {{0, "a", 1}, {1, "a", 2}, {2, "a", 0}});
}

Domain door() { return door_cycle("p q", "~p q", "~p ~q"); }

Domain door_broken() {
  return make_domain({"p", "q"}, {"a"}, {{"p q", "q"}, {"~p q", "q"}, {"~p ~q", "~q"}},
                     {{0, "a", 1}, {1, "a", 2}, {2, "a", 1}});
}

std::vector<Domain> door_bisimilar() {
  return {door_cycle("p q", "~p q", "p ~q"), door_cycle("p q", "~p q", "~p ~q"),
          door_cycle("~p q", "p q", "p ~q"), door_cycle("~p q", "p q", "~p ~q")};
}

Domain box() {
  return make_domain({"p"}, {"flip"}, {{"~p", "true"}, {"p", "p"}}, {{0, "flip", 1}, {1, "flip", 0}});
}

EpistemicModel coin_model() { return single_component_model(Signature({"h"}), {Valuation{1}}); }

EventModel coin_toss() {
  EventModel e;
  e.props = Signature({"h"});
  e.events.push_back(Event{"e1", Formula::top(), 1u, 0u});
  e.events.push_back(Event{"e2", Formula::top(), 0u, 1u});
  e.partition = {{0}, {1}};
  return e;
}

ObservationTrace door_trace() {
  const Signature sig({"p", "q"});
  const Observation q = parse_observation("q", sig);
  const Observation nq = parse_observation("~q", sig);
  return ObservationTrace{{q, q, nq, q, q}, {"a", "a", "a", "a"}};
}

namespace {

Observation random_observation(std::mt19937& rng, Valuation v, std::size_t nprops, double observe_prob) {
  std::bernoulli_distribution coin(observe_prob);
  Observation o;
  for (std::size_t i = 0; i < nprops; ++i) {
    if (!coin(rng)) continue;
    (v.holds(i) ? o.pos : o.neg) |= 1u << i;
  }
  return o;
}

}  // namespace

Domain random_domain(std::mt19937& rng, std::size_t nprops, std::size_t max_states, std::size_t nactions,
                     double observe_prob) {
  std::vector<std::string> props;
  for (std::size_t i = 0; i < nprops; ++i) props.push_back(std::string(1, static_cast<char>('p' + i)));
  std::vector<std::string> actions;
  for (std::size_t i = 0; i < nactions; ++i) actions.push_back(std::string(1, static_cast<char>('a' + i)));
  Domain d(Signature(props), actions);

  std::vector<std::uint32_t> pool(std::size_t{1} << nprops);
  for (std::uint32_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t cap = std::min(max_states, pool.size());
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
  for (std::size_t s = 0; s < n; ++s) {
    const Valuation v{pool[s]};
    d.add_state(v, random_observation(rng, v, nprops, observe_prob));
  }
  // Spanning tree from state 0 first, so every state is reachable, then
  // random targets for the remaining slots.
  std::vector<std::vector<bool>> filled(n, std::vector<bool>(nactions, false));
  for (std::size_t s = 1; s < n; ++s) {
    while (true) {
      const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, s - 1)(rng);
      const std::size_t a = std::uniform_int_distribution<std::size_t>(0, nactions - 1)(rng);
      if (filled[parent][a]) continue;
      filled[parent][a] = true;
      d.add_transition(parent, a, s);
      break;
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < nactions; ++a) {
      if (!filled[s][a]) d.add_transition(s, a, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    }
  }
  d.initial = 0;
  d.deterministic = true;
  return d;
}

Domain perturb(std::mt19937& rng, const Domain& d) {
  Domain out = d;
  std::uniform_int_distribution<std::size_t> pick_state(0, d.size() - 1);
  if (std::bernoulli_distribution(0.5)(rng)) {
    const std::size_t s = pick_state(rng);
    const Valuation v = d.valuation(s);
    out.obs[s] = random_observation(rng, v, d.props.size(), 0.5);
    return out;
  }
  // Redirect one transition; retry until the domain stays generated.
  for (int attempt = 0; attempt < 32; ++attempt) {
    Domain cand = d;
    const std::size_t s = pick_state(rng);
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, d.actions.size() - 1)(rng);
    cand.succ[s][a] = {pick_state(rng)};
    if (validate(cand).empty()) return cand;
  }
  return out;
}

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, int depth,
                       const std::vector<std::string>& boxes) {
  std::uniform_int_distribution<int> leaf(0, static_cast<int>(atoms.size()) + 1);
  if (depth <= 0 || std::bernoulli_distribution(0.2)(rng)) {
    const int k = leaf(rng);
    if (k == static_cast<int>(atoms.size())) return Formula::top();
    if (k == static_cast<int>(atoms.size()) + 1) return Formula::bottom();
    return Formula::atom(atoms[k]);
  }
  const int ops = boxes.empty() ? 8 : 9;
  switch (std::uniform_int_distribution<int>(0, ops - 1)(rng)) {
    case 0: return Formula::negation(random_formula(rng, atoms, depth - 1, boxes));
    case 1:
      return Formula::conjunction(random_formula(rng, atoms, depth - 1, boxes),
                                  random_formula(rng, atoms, depth - 1, boxes));
    case 2:
      return Formula::disjunction(random_formula(rng, atoms, depth - 1, boxes),
                                  random_formula(rng, atoms, depth - 1, boxes));
    case 3:
      return Formula::implication(random_formula(rng, atoms, depth - 1, boxes),
                                  random_formula(rng, atoms, depth - 1, boxes));
    case 4:
      return Formula::equivalence(random_formula(rng, atoms, depth - 1, boxes),
                                  random_formula(rng, atoms, depth - 1, boxes));
    case 5: return Formula::knows(random_formula(rng, atoms, depth - 1, boxes));
    case 6: return Formula::knows_whether(random_formula(rng, atoms, depth - 1, boxes));
    case 7: return Formula::negation(Formula::negation(random_formula(rng, atoms, depth - 1, boxes)));
    default: {
      const auto& name = boxes[std::uniform_int_distribution<std::size_t>(0, boxes.size() - 1)(rng)];
      return Formula::event_box(name, random_formula(rng, atoms, depth - 1, boxes));
    }
  }
}

EpistemicModel random_model(std::mt19937& rng, const Signature& sig, std::size_t max_worlds) {
  EpistemicModel m;
  m.props = sig;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_worlds)(rng);
  std::uniform_int_distribution<std::uint32_t> val(0, sig.full_mask());
  for (std::size_t i = 0; i < n; ++i) m.worlds.push_back(Valuation{val(rng)});
  const std::size_t ncomp = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  m.partition.resize(ncomp);
  for (std::size_t i = 0; i < n; ++i) {
    // The first ncomp worlds open the components so none is empty.
    const std::size_t c = i < ncomp ? i : std::uniform_int_distribution<std::size_t>(0, ncomp - 1)(rng);
    m.partition[c].push_back(i);
  }
  return m;
}

EventModel random_event_model(std::mt19937& rng, const Signature& sig, std::size_t max_events) {
  EventModel e;
  e.props = sig;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_events)(rng);
  std::uniform_int_distribution<int> post(0, 2);
  for (std::size_t i = 0; i < n; ++i) {
    Event ev;
    ev.id = "e" + std::to_string(i);
    ev.pre = random_formula(rng, sig.names(), 2);
    for (std::size_t p = 0; p < sig.size(); ++p) {
      const int k = post(rng);
      if (k == 0) ev.set_true |= 1u << p;
      if (k == 1) ev.set_false |= 1u << p;
    }
    e.events.push_back(std::move(ev));
  }
  const std::size_t ncomp = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  e.partition.resize(ncomp);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i < ncomp ? i : std::uniform_int_distribution<std::size_t>(0, ncomp - 1)(rng);
    e.partition[c].push_back(i);
  }
  return e;
}

bool bisimilar_by_refinement(const Domain& a, const Domain& b) {
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  const std::size_t nactions = a.actions.size();
  auto obs = [&](std::size_t s) { return s < na ? a.obs[s] : b.obs[s - na]; };
  auto next = [&](std::size_t s, std::size_t act) {
    return s < na ? a.succ[s][act].front() : na + b.succ[s - na][act].front();
  };
  std::vector<std::size_t> block(n, 0);
  {
    std::vector<Observation> seen;
    for (std::size_t s = 0; s < n; ++s) {
      auto it = std::find(seen.begin(), seen.end(), obs(s));
      if (it == seen.end()) it = seen.insert(seen.end(), obs(s));
      block[s] = static_cast<std::size_t>(it - seen.begin());
    }
  }
  while (true) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (std::size_t s = 0; s < n; ++s) {
      sig[s].push_back(block[s]);
      for (std::size_t act = 0; act < nactions; ++act) sig[s].push_back(block[next(s, act)]);
    }
    std::vector<std::vector<std::size_t>> distinct(sig.begin(), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> refined(n);
    for (std::size_t s = 0; s < n; ++s) {
      refined[s] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[s]) - distinct.begin());
    }
    const std::size_t before = std::set<std::size_t>(block.begin(), block.end()).size();
    block = refined;
    if (distinct.size() == before) break;
  }
  return block[a.initial] == block[na + b.initial];
}

namespace {

// Odometer over digits with per-position bases; false once it wraps.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& bases) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < bases[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<Domain> brute_force_bisimilar(const Domain& d) {
  std::set<Observation> observed(d.obs.begin(), d.obs.end());
  const std::vector<Observation> pool(observed.begin(), observed.end());
  const std::uint32_t nvals = 1u << d.props.size();
  const std::size_t nactions = d.actions.size();
  std::vector<Domain> out;
  for (std::uint32_t subset = 1; subset < (1u << nvals); ++subset) {
    std::vector<Valuation> members;
    for (std::uint32_t v = 0; v < nvals; ++v) {
      if ((subset >> v) & 1u) members.push_back(Valuation{v});
    }
    const std::size_t n = members.size();
    std::vector<std::vector<Observation>> choices(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (const auto& o : pool) {
        if (o.compatible(members[s])) choices[s].push_back(o);
      }
      if (choices[s].empty()) break;
    }
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) continue;
    std::vector<std::size_t> obs_bases(n);
    for (std::size_t s = 0; s < n; ++s) obs_bases[s] = choices[s].size();
    const std::vector<std::size_t> succ_bases(n * nactions, n);
    for (std::size_t init = 0; init < n; ++init) {
      std::vector<std::size_t> obs_pick(n, 0);
      do {
        if (choices[init][obs_pick[init]] != d.obs[d.initial]) continue;
        std::vector<std::size_t> succ(n * nactions, 0);
        do {
          Domain cand(d.props, d.actions);
          for (std::size_t s = 0; s < n; ++s) cand.add_state(members[s], choices[s][obs_pick[s]]);
          for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t act = 0; act < nactions; ++act) cand.add_transition(s, act, succ[s * nactions + act]);
          }
          cand.initial = init;
          cand.deterministic = true;
          if (!delearn::validate(cand).empty()) continue;
          if (bisimilar_by_refinement(d, cand)) out.push_back(std::move(cand));
        } while (advance(succ, succ_bases));
      } while (advance(obs_pick, obs_bases));
    }
  }
  delearn::sort_domains(out);
  return out;
}

}  // namespace fixtures
