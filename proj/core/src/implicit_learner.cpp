#include "delearn/implicit_learner.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "delearn/equivalence.hpp"

namespace delearn {

namespace {

constexpr std::size_t max_props = 20;

// Partial observation and transition functions over valuations, with an
// undo log so that search can back out of a choice.
class Table {
 public:
  Table(std::size_t nprops, std::size_t nactions)
      : nact_(nactions),
        obs_(std::size_t{1} << nprops),
        has_obs_(std::size_t{1} << nprops, false),
        next_((std::size_t{1} << nprops) * nactions, none) {}

  bool add_obs(Valuation v, Observation o) {
    if (has_obs_[v.bits]) return obs_[v.bits] == o;
    has_obs_[v.bits] = true;
    obs_[v.bits] = o;
    log_.push_back(v.bits);
    return true;
  }

  bool add_trans(Valuation v, std::size_t a, Valuation w) {
    std::uint32_t& slot = next_[v.bits * nact_ + a];
    if (slot != none) return slot == w.bits;
    slot = w.bits;
    log_.push_back(obs_.size() + v.bits * nact_ + a);
    return true;
  }

  std::size_t mark() const { return log_.size(); }

  void rollback(std::size_t m) {
    while (log_.size() > m) {
      const std::size_t e = log_.back();
      log_.pop_back();
      if (e < obs_.size()) {
        has_obs_[e] = false;
      } else {
        next_[e - obs_.size()] = none;
      }
    }
  }

  bool has_obs(Valuation v) const { return has_obs_[v.bits]; }
  Observation obs(Valuation v) const { return obs_[v.bits]; }
  std::optional<Valuation> next(Valuation v, std::size_t a) const {
    const std::uint32_t w = next_[v.bits * nact_ + a];
    if (w == none) return std::nullopt;
    return Valuation{w};
  }

 private:
  static constexpr std::uint32_t none = ~std::uint32_t{0};
  std::size_t nact_;
  std::vector<Observation> obs_;
  std::vector<bool> has_obs_;
  std::vector<std::uint32_t> next_;
  std::vector<std::size_t> log_;
};

void require_small(const Signature& props) {
  if (props.size() > max_props) {
    throw DomainError("history computations support at most " + std::to_string(max_props) + " propositions");
  }
}

std::vector<std::string> trace_actions(const std::vector<ObservationTrace>& traces) {
  std::vector<std::string> out;
  for (const auto& t : traces) out.insert(out.end(), t.actions.begin(), t.actions.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> action_indices(const ObservationTrace& t, const std::vector<std::string>& actions) {
  std::vector<std::size_t> out;
  for (const auto& a : t.actions) {
    auto it = std::lower_bound(actions.begin(), actions.end(), a);
    if (it == actions.end() || *it != a) throw InputError("history uses action '" + a + "' outside the action set");
    out.push_back(static_cast<std::size_t>(it - actions.begin()));
  }
  return out;
}

void check_observations(const Signature& props, const ObservationTrace& t) {
  check_trace(t);
  for (Observation o : t.observations) {
    if (!o.consistent() || (o.observed() & ~props.full_mask()) != 0) {
      throw InputError("trace carries an observation that is contradictory or outside the signature");
    }
  }
}

// Adds every state, observation and transition of `h`; false on conflict.
bool merge(Table& table, const History& h, const std::vector<std::size_t>& acts) {
  for (std::size_t i = 0; i < h.states.size(); ++i) {
    if (!table.add_obs(h.states[i], h.trace.observations[i])) return false;
    if (i > 0 && !table.add_trans(h.states[i - 1], acts[i - 1], h.states[i])) return false;
  }
  return true;
}

Domain build_domain(const Signature& props, const std::vector<std::string>& actions, const Table& table,
                    Valuation initial) {
  Domain d(props, actions);
  std::map<std::uint32_t, std::size_t> index;
  std::deque<Valuation> queue{initial};
  index.emplace(initial.bits, d.add_state(initial, table.obs(initial)));
  std::vector<Valuation> order;
  while (!queue.empty()) {
    const Valuation v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const auto w = table.next(v, a);
      if (!w || index.count(w->bits)) continue;
      index.emplace(w->bits, d.add_state(*w, table.obs(*w)));
      queue.push_back(*w);
    }
  }
  for (Valuation v : order) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (const auto w = table.next(v, a)) d.add_transition(index.at(v.bits), a, index.at(w->bits));
    }
  }
  d.initial = 0;
  d.deterministic = d.is_total();
  return d;
}

class HistorySearch {
 public:
  HistorySearch(const Signature& props, const ObservationTrace& trace, std::uint64_t budget)
      : props_(props),
        trace_(trace),
        actions_(trace_actions({trace})),
        acts_(action_indices(trace, actions_)),
        table_(props.size(), actions_.size()),
        budget_(budget) {
    for (Observation o : trace.observations) comps_.push_back(comp(o, props));
  }

  std::vector<History> run() {
    extend(0);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void extend(std::size_t i) {
    for (Valuation v : comps_[i]) {
      const std::size_t m = table_.mark();
      const bool ok = table_.add_obs(v, trace_.observations[i]) &&
                      (i == 0 || table_.add_trans(current_.back(), acts_[i - 1], v));
      if (ok) {
        current_.push_back(v);
        if (i + 1 == comps_.size()) {
          if (out_.size() >= budget_) {
            throw DomainError("more than " + std::to_string(budget_) + " histories for one trace");
          }
          out_.push_back(History{current_, trace_});
        } else {
          extend(i + 1);
        }
        current_.pop_back();
      }
      table_.rollback(m);
    }
  }

  const Signature& props_;
  const ObservationTrace& trace_;
  std::vector<std::string> actions_;
  std::vector<std::size_t> acts_;
  std::vector<std::vector<Valuation>> comps_;
  Table table_;
  std::uint64_t budget_;
  std::vector<Valuation> current_;
  std::vector<History> out_;
};

class DomainSearch {
 public:
  DomainSearch(const Signature& props, std::vector<std::string> actions,
               const std::vector<ObservationTrace>& traces, const std::vector<std::vector<History>>& hs,
               std::uint64_t budget)
      : props_(props), actions_(std::move(actions)), hs_(hs), table_(props.size(), actions_.size()), budget_(budget) {
    for (const auto& t : traces) acts_.push_back(action_indices(t, actions_));
  }

  std::vector<Domain> run() {
    if (hs_.empty()) return {};
    std::vector<Valuation> starts;
    for (const History& h : hs_.front()) starts.push_back(h.states.front());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (Valuation v0 : starts) {
      start_ = v0;
      descend(0);
    }
    return std::move(out_);
  }

 private:
  void descend(std::size_t i) {
    if (++steps_ > budget_) {
      throw DomainError("domain search exceeded " + std::to_string(budget_) + " combinations");
    }
    if (i == hs_.size()) {
      out_.push_back(build_domain(props_, actions_, table_, start_));
      return;
    }
    for (const History& h : hs_[i]) {
      if (h.states.front() != start_) continue;
      const std::size_t m = table_.mark();
      if (merge(table_, h, acts_[i])) descend(i + 1);
      table_.rollback(m);
    }
  }

  const Signature& props_;
  std::vector<std::string> actions_;
  const std::vector<std::vector<History>>& hs_;
  std::vector<std::vector<std::size_t>> acts_;
  Table table_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  Valuation start_;
  std::vector<Domain> out_;
};

std::vector<Domain> naive_product(const Signature& props, const std::vector<std::string>& actions,
                                  const std::vector<std::vector<History>>& hs, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (const auto& h : hs) {
    if (h.empty()) return {};
    total *= h.size();
    if (total > budget) throw DomainError("history product exceeds " + std::to_string(budget) + " combinations");
  }
  std::vector<Domain> out;
  std::vector<std::size_t> pick(hs.size(), 0);
  while (true) {
    std::vector<History> chosen;
    bool same_start = true;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      chosen.push_back(hs[i][pick[i]]);
      same_start = same_start && chosen.back().states.front() == chosen.front().states.front();
    }
    if (same_start) {
      if (auto d = domain_of_histories(props, actions, chosen)) out.push_back(std::move(*d));
    }
    std::size_t k = 0;
    while (k < hs.size() && ++pick[k] == hs[k].size()) pick[k++] = 0;
    if (k == hs.size()) break;
  }
  return out;
}

}  // namespace

bool history_is_deterministic(const History& h) {
  if (h.states.size() != h.trace.observations.size()) return false;
  std::map<std::uint32_t, Observation> obs;
  std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> next;
  for (std::size_t i = 0; i < h.states.size(); ++i) {
    const auto [it, fresh] = obs.emplace(h.states[i].bits, h.trace.observations[i]);
    if (!fresh && it->second != h.trace.observations[i]) return false;
    if (i == 0) continue;
    const auto [jt, added] = next.emplace(std::make_pair(h.states[i - 1].bits, h.trace.actions[i - 1]), h.states[i].bits);
    if (!added && jt->second != h.states[i].bits) return false;
  }
  return true;
}

std::vector<History> histories(const Signature& props, const ObservationTrace& trace, const HistoryLimits& limits) {
  require_small(props);
  check_observations(props, trace);
  HistorySearch search(props, trace, limits.budget);
  return search.run();
}

std::vector<History> histories_by_filter(const Signature& props, const ObservationTrace& trace,
                                         const HistoryLimits& limits) {
  require_small(props);
  check_observations(props, trace);
  std::vector<std::vector<Valuation>> comps;
  std::uint64_t total = 1;
  for (Observation o : trace.observations) {
    comps.push_back(comp(o, props));
    total *= comps.back().size();
    if (total > limits.budget) {
      throw DomainError("history filter exceeds " + std::to_string(limits.budget) + " combinations");
    }
  }
  std::vector<History> out;
  std::vector<std::size_t> pick(comps.size(), 0);
  while (true) {
    History h{{}, trace};
    for (std::size_t i = 0; i < comps.size(); ++i) h.states.push_back(comps[i][pick[i]]);
    if (history_is_deterministic(h)) out.push_back(std::move(h));
    std::size_t k = 0;
    while (k < comps.size() && ++pick[k] == comps[k].size()) pick[k++] = 0;
    if (k == comps.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<History> histories_by_transition_functions(const Signature& props, const ObservationTrace& trace,
                                                       const HistoryLimits& limits) {
  require_small(props);
  check_observations(props, trace);
  const std::vector<std::string> actions = trace_actions({trace});
  const std::vector<std::size_t> acts = action_indices(trace, actions);
  const std::uint64_t nvals = std::uint64_t{1} << props.size();
  const std::size_t slots = static_cast<std::size_t>(nvals * actions.size());
  std::uint64_t total = nvals;
  for (std::size_t i = 0; i < slots; ++i) {
    total *= nvals;
    if (total > limits.budget) {
      throw DomainError("transition-function enumeration exceeds " + std::to_string(limits.budget) + " runs");
    }
  }
  std::vector<History> out;
  std::vector<std::uint32_t> f(slots, 0);
  while (true) {
    for (std::uint32_t v0 = 0; v0 < nvals; ++v0) {
      History h{{Valuation{v0}}, trace};
      std::map<std::uint32_t, Observation> seen;
      bool fits = true;
      for (std::size_t i = 0; fits && i < trace.observations.size(); ++i) {
        if (i > 0) h.states.push_back(Valuation{f[h.states.back().bits * actions.size() + acts[i - 1]]});
        const Valuation v = h.states.back();
        const Observation o = trace.observations[i];
        const auto [it, fresh] = seen.emplace(v.bits, o);
        fits = o.compatible(v) && (fresh || it->second == o);
      }
      if (fits) out.push_back(std::move(h));
    }
    std::size_t k = 0;
    while (k < slots && ++f[k] == nvals) f[k++] = 0;
    if (k == slots) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Domain> domain_of_histories(const Signature& props, const std::vector<std::string>& actions,
                                          const std::vector<History>& hs) {
  require_small(props);
  if (hs.empty()) throw InputError("no histories to build a domain from");
  std::vector<std::string> sorted = actions;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const Valuation start = hs.front().states.front();
  Table table(props.size(), sorted.size());
  for (const History& h : hs) {
    if (h.states.empty() || h.states.size() != h.trace.observations.size()) {
      throw InputError("history does not match its trace");
    }
    if (h.states.front() != start) throw InputError("histories start at different valuations");
    if (!merge(table, h, action_indices(h.trace, sorted))) return std::nullopt;
  }
  return build_domain(props, sorted, table, start);
}

std::vector<Domain> learn_domains(const Signature& props, const std::vector<ObservationTrace>& traces,
                                  const LearnOptions& opts) {
  require_small(props);
  if (traces.empty()) throw InputError("no traces to learn from");
  std::vector<ObservationTrace> sigma = traces;
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  std::vector<std::string> actions = trace_actions(sigma);
  actions.insert(actions.end(), opts.actions.begin(), opts.actions.end());
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());

  std::vector<std::vector<History>> hs;
  for (const auto& t : sigma) hs.push_back(histories(props, t, HistoryLimits{opts.budget}));

  std::vector<Domain> out;
  if (opts.naive_product) {
    out = naive_product(props, actions, hs, opts.budget);
  } else {
    DomainSearch search(props, actions, sigma, hs, opts.budget);
    out = search.run();
  }
  sort_domains(out);
  return out;
}

Domain learn_implicit(const Signature& props, const std::vector<ObservationTrace>& traces, const LearnOptions& opts) {
  const std::vector<Domain> domains = learn_domains(props, traces, opts);
  if (domains.empty()) throw DomainError("no deterministic domain is consistent with the traces");
  return sync_compose(domains);
}

}  // namespace delearn
