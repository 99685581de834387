#include "delearn/domain.hpp"

#include <algorithm>
#include <deque>

namespace delearn {

namespace {

// 0 observed true, 1 observed false, 2 unobserved.
int literal_status(Observation o, std::size_t i) {
  if ((o.pos >> i) & 1u) return 0;
  if ((o.neg >> i) & 1u) return 1;
  return 2;
}

std::string render_valuations(const std::vector<Valuation>& vals, const Signature& sig, const char* open,
                              const char* close) {
  std::string out = open;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += render_valuation(vals[i], sig);
  }
  out += close;
  return out;
}

using ModelKey = std::vector<std::vector<std::uint32_t>>;

ModelKey model_key(const EpistemicModel& m) {
  ModelKey key;
  for (const auto& c : m.partition) {
    std::vector<std::uint32_t> part;
    for (std::size_t w : c) part.push_back(m.worlds[w].bits);
    key.push_back(std::move(part));
  }
  return key;
}

}  // namespace

std::strong_ordering operator<=>(Observation a, Observation b) {
  const std::uint32_t diff = (a.pos ^ b.pos) | (a.neg ^ b.neg);
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint32_t lowest = diff & (~diff + 1u);
  std::size_t i = 0;
  while (!((lowest >> i) & 1u)) ++i;
  return literal_status(a, i) <=> literal_status(b, i);
}

std::string render_observation(Observation o, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const int st = literal_status(o, i);
    if (st == 2) continue;
    if (!out.empty()) out += ' ';
    if (st == 1) out += '~';
    out += sig.name(i);
  }
  return out.empty() ? "true" : out;
}

Observation parse_observation(std::string_view text, const Signature& sig) {
  Observation o;
  std::size_t i = 0;
  bool negated = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == ',' || c == '\t') {
      if (negated) throw InputError("dangling '~' in observation '" + std::string(text) + "'");
      ++i;
      continue;
    }
    if (c == '~' || c == '!') {
      negated = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '~' && text[j] != '\t' &&
           text[j] != '!') {
      ++j;
    }
    const std::string_view name = text.substr(i, j - i);
    i = j;
    if (name == "true" && !negated) continue;
    const std::uint32_t bit = 1u << sig.index(name);
    if ((o.pos | o.neg) & bit) {
      if (((o.pos & bit) != 0) == negated) {
        throw InputError("observation '" + std::string(text) + "' contains both polarities of " + std::string(name));
      }
    }
    (negated ? o.neg : o.pos) |= bit;
    negated = false;
  }
  if (negated) throw InputError("dangling '~' in observation '" + std::string(text) + "'");
  return o;
}

Observation full_observation(Valuation v, const Signature& sig) {
  return Observation{v.bits & sig.full_mask(), ~v.bits & sig.full_mask()};
}

StateKind kind_of(const StatePayload& p) { return static_cast<StateKind>(p.index()); }

const char* kind_name(StateKind k) {
  switch (k) {
    case StateKind::val: return "val";
    case StateKind::compset: return "compset";
    case StateKind::tuple: return "tuple";
    case StateKind::model: return "model";
  }
  return "?";
}

Domain::Domain(Signature p, std::vector<std::string> acts) : props(std::move(p)), actions(std::move(acts)) {
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  for (const auto& a : actions) {
    if (!is_identifier(a)) throw InputError("invalid action name '" + a + "'");
  }
}

std::size_t Domain::add_state(StatePayload payload, Observation o, std::string id) {
  const std::size_t idx = states.size();
  if (id.empty()) id = "s" + std::to_string(idx);
  states.push_back(std::move(payload));
  ids.push_back(std::move(id));
  obs.push_back(o);
  succ.emplace_back(actions.size());
  return idx;
}

void Domain::add_transition(std::size_t from, std::size_t action, std::size_t to) {
  if (from >= size() || to >= size()) throw InputError("transition refers to an unknown state");
  if (action >= actions.size()) throw InputError("transition refers to an unknown action");
  auto& list = succ[from][action];
  auto it = std::lower_bound(list.begin(), list.end(), to);
  if (it == list.end() || *it != to) list.insert(it, to);
}

std::optional<std::size_t> Domain::find_action(std::string_view name) const {
  auto it = std::lower_bound(actions.begin(), actions.end(), name);
  if (it == actions.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - actions.begin());
}

std::size_t Domain::action_index(std::string_view name) const {
  if (auto a = find_action(name)) return *a;
  throw InputError("unknown action '" + std::string(name) + "'");
}

std::optional<std::size_t> Domain::find_state(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  return std::nullopt;
}

std::size_t Domain::state_index(std::string_view id) const {
  if (auto s = find_state(id)) return *s;
  throw InputError("unknown state '" + std::string(id) + "'");
}

std::size_t Domain::step(std::size_t s, std::size_t action) const {
  const auto& list = succ.at(s).at(action);
  if (list.size() != 1) {
    throw DomainError("state " + ids[s] + " has " + std::to_string(list.size()) + " successors for action " +
                      actions[action]);
  }
  return list.front();
}

bool Domain::is_functional() const {
  for (const auto& row : succ) {
    for (const auto& list : row) {
      if (list.size() > 1) return false;
    }
  }
  return true;
}

bool Domain::is_total() const {
  for (const auto& row : succ) {
    for (const auto& list : row) {
      if (list.empty()) return false;
    }
  }
  return true;
}

std::size_t Domain::transition_count() const {
  std::size_t n = 0;
  for (const auto& row : succ) {
    for (const auto& list : row) n += list.size();
  }
  return n;
}

StateKind Domain::kind() const { return states.empty() ? StateKind::val : kind_of(states.front()); }

const Valuation& Domain::valuation(std::size_t s) const {
  if (const auto* v = std::get_if<Valuation>(&states.at(s))) return *v;
  throw DomainError("state " + ids[s] + " is not a valuation state");
}

std::vector<std::string> validate(const Domain& d) {
  std::vector<std::string> out;
  if (!std::is_sorted(d.actions.begin(), d.actions.end()) ||
      std::adjacent_find(d.actions.begin(), d.actions.end()) != d.actions.end()) {
    out.push_back("actions are not sorted and unique");
  }
  if (d.states.empty()) {
    out.push_back("domain has no states");
    return out;
  }
  if (d.ids.size() != d.size() || d.obs.size() != d.size() || d.succ.size() != d.size()) {
    out.push_back("state tables have inconsistent sizes");
    return out;
  }
  if (d.initial >= d.size()) {
    out.push_back("initial state is out of range");
    return out;
  }
  const StateKind kind = d.kind();
  const std::uint32_t full = d.props.full_mask();
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (kind_of(d.states[s]) != kind) out.push_back("state " + d.ids[s] + " has a different kind from the others");
    for (std::size_t t = 0; t < s; ++t) {
      if (d.ids[t] == d.ids[s]) out.push_back("duplicate state id " + d.ids[s]);
      if (d.states[t] == d.states[s]) out.push_back("states " + d.ids[t] + " and " + d.ids[s] + " coincide");
    }
    const Observation o = d.obs[s];
    if (!o.consistent()) out.push_back("observation of " + d.ids[s] + " is contradictory");
    if ((o.observed() & ~full) != 0) out.push_back("observation of " + d.ids[s] + " mentions unknown propositions");
    if (d.succ[s].size() != d.actions.size()) {
      out.push_back("successor table of " + d.ids[s] + " does not match the action set");
      continue;
    }
    std::vector<Valuation> members;
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Valuation>) {
            members.push_back(p);
          } else if constexpr (std::is_same_v<T, CompSet>) {
            members = p.vals;
            if (members.empty()) out.push_back("compatibility state " + d.ids[s] + " is empty");
          } else if constexpr (std::is_same_v<T, GlobalState>) {
            members = p.parts;
            if (members.empty()) out.push_back("global state " + d.ids[s] + " is empty");
          } else {
            members = p.worlds;
          }
        },
        d.states[s]);
    for (Valuation v : members) {
      if ((v.bits & ~full) != 0) out.push_back("state " + d.ids[s] + " sets unknown propositions");
      if (!o.compatible(v)) {
        out.push_back("observation of " + d.ids[s] + " is not noiseless for " + render_valuation(v, d.props));
      }
    }
    for (std::size_t a = 0; a < d.actions.size(); ++a) {
      const auto& list = d.succ[s][a];
      for (std::size_t t : list) {
        if (t >= d.size()) out.push_back("transition from " + d.ids[s] + " leaves the state set");
      }
      if (d.deterministic && list.empty()) {
        out.push_back("action " + d.actions[a] + " is not applicable in " + d.ids[s]);
      }
      if (d.deterministic && list.size() > 1) {
        out.push_back("action " + d.actions[a] + " is not deterministic in " + d.ids[s]);
      }
    }
  }
  std::vector<bool> seen(d.size(), false);
  std::deque<std::size_t> queue{d.initial};
  seen[d.initial] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (const auto& list : d.succ[s]) {
      for (std::size_t t : list) {
        if (t < d.size() && !seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (!seen[s]) out.push_back("state " + d.ids[s] + " is not reachable from the initial state");
  }
  return out;
}

void require_deterministic(const Domain& d, const char* operation) {
  if (!d.is_functional() || !d.is_total()) {
    throw DomainError(std::string(operation) + " requires a deterministic, universally applicable domain");
  }
}

void require_deterministic_val_domain(const Domain& d, const char* operation) {
  const auto problems = validate(d);
  if (!problems.empty()) throw DomainError(std::string(operation) + ": invalid domain: " + problems.front());
  require_deterministic(d, operation);
  if (d.kind() != StateKind::val) throw DomainError(std::string(operation) + " requires valuation states");
}

std::vector<Valuation> comp(Observation o, const Signature& sig) {
  std::vector<Valuation> out;
  const std::uint32_t free = sig.full_mask() & ~o.observed();
  // Enumerate subsets of the unobserved propositions.
  std::uint32_t sub = 0;
  while (true) {
    out.push_back(Valuation{o.pos | sub});
    if (sub == free) break;
    sub = (sub - free) & free;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Domain compatibility_domain(const Domain& d) {
  require_deterministic_val_domain(d, "compatibility domain");
  Domain out(d.props, d.actions);
  out.deterministic = false;
  std::map<Observation, std::size_t> index;
  std::vector<std::size_t> image(d.size());
  std::vector<bool> seen(d.size(), false);
  std::deque<std::size_t> queue{d.initial};
  seen[d.initial] = true;
  std::vector<std::size_t> order;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    order.push_back(s);
    const Observation o = d.obs[s];
    auto it = index.find(o);
    if (it == index.end()) it = index.emplace(o, out.add_state(CompSet{comp(o, d.props)}, o)).first;
    image[s] = it->second;
    for (const auto& list : d.succ[s]) {
      for (std::size_t t : list) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  for (std::size_t s : order) {
    for (std::size_t a = 0; a < d.actions.size(); ++a) {
      for (std::size_t t : d.succ[s][a]) out.add_transition(image[s], a, image[t]);
    }
  }
  out.initial = image[d.initial];
  out.deterministic = out.is_functional() && out.is_total();
  return out;
}

EpistemicModel induced_epistemic_model(const Signature& props, const StatePayload& payload) {
  return std::visit(
      [&](const auto& p) -> EpistemicModel {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Valuation>) {
          return single_component_model(props, {p});
        } else if constexpr (std::is_same_v<T, CompSet>) {
          return single_component_model(props, p.vals);
        } else if constexpr (std::is_same_v<T, GlobalState>) {
          return single_component_model(props, p.parts);
        } else {
          return p;
        }
      },
      payload);
}

EpistemicModel induced_epistemic_model(const Domain& d, std::size_t s) {
  return induced_epistemic_model(d.props, d.states.at(s));
}

Observation observation_of_model(const EpistemicModel& m) {
  if (m.empty()) return {};
  std::uint32_t all_true = m.props.full_mask();
  std::uint32_t all_false = m.props.full_mask();
  for (Valuation v : m.worlds) {
    all_true &= v.bits;
    all_false &= ~v.bits;
  }
  return Observation{all_true, all_false};
}

Domain induced_domain(const std::map<std::string, EventModel, std::less<>>& models, const EpistemicModel& m0) {
  std::vector<std::string> actions;
  for (const auto& [name, model] : models) {
    if (!(model.props == m0.props)) throw InputError("event model " + name + " uses a different signature");
    actions.push_back(name);
  }
  Domain out(m0.props, actions);
  std::vector<const EventModel*> by_action;
  for (const auto& a : out.actions) by_action.push_back(&models.find(a)->second);

  std::map<ModelKey, std::size_t> index;
  auto intern = [&](EpistemicModel m) {
    ModelKey key = model_key(m);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const Observation o = observation_of_model(m);
    const std::size_t id = out.add_state(std::move(m), o);
    index.emplace(std::move(key), id);
    return id;
  };

  out.initial = intern(canonicalize(m0));
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t a = 0; a < out.actions.size(); ++a) {
      const auto& current = std::get<EpistemicModel>(out.states[s]);
      const EpistemicModel next = product_update(current, *by_action[a]);
      for (EpistemicModel& c : components(next)) {
        const std::size_t t = intern(std::move(c));
        out.add_transition(s, a, t);
      }
    }
  }
  out.deterministic = out.is_functional() && out.is_total();
  return out;
}

bool eval_on_state(const Domain& d, std::size_t s, const Formula& f) {
  if (s >= d.size()) throw InputError("state index out of range");
  const EpistemicModel m = induced_epistemic_model(d, s);
  EvalContext ctx;
  ctx.action_box = [&](const std::string& action, const Formula& body) {
    const std::size_t a = d.action_index(action);
    for (std::size_t t : d.succ[s][a]) {
      if (!eval_on_state(d, t, body)) return false;
    }
    return true;
  };
  const auto v = eval_worlds(m, f, ctx);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

std::string render_payload(const Domain& d, std::size_t s) {
  return std::visit(
      [&](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Valuation>) {
          return render_valuation(p, d.props);
        } else if constexpr (std::is_same_v<T, CompSet>) {
          return render_valuations(p.vals, d.props, "{", "}");
        } else if constexpr (std::is_same_v<T, GlobalState>) {
          return render_valuations(p.parts, d.props, "(", ")");
        } else {
          std::string out;
          for (const auto& c : p.partition) {
            std::vector<Valuation> vals;
            for (std::size_t w : c) vals.push_back(p.worlds[w]);
            if (!out.empty()) out += ' ';
            out += render_valuations(vals, d.props, "{", "}");
          }
          return out.empty() ? "{}" : out;
        }
      },
      d.states.at(s));
}

}  // namespace delearn
