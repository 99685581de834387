#include "delearn/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace delearn {

namespace {

constexpr std::size_t unset = static_cast<std::size_t>(-1);

// Integer rank agreeing with the Valuation order.
std::uint64_t valuation_rank(Valuation v) {
  std::uint32_t x = ~v.bits;
  std::uint32_t r = 0;
  for (int i = 0; i < 32; ++i) {
    r = (r << 1) | (x & 1u);
    x >>= 1;
  }
  return r;
}

// Integer rank agreeing with the Observation order.
std::uint64_t observation_rank(Observation o, std::size_t nprops) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < nprops; ++i) {
    std::uint64_t st = 2;
    if ((o.pos >> i) & 1u) st = 0;
    if ((o.neg >> i) & 1u) st = 1;
    r = r * 3 + st;
  }
  return r;
}

void encode_payload(const StatePayload& p, std::vector<std::uint64_t>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Valuation>) {
          out.push_back(valuation_rank(x));
        } else if constexpr (std::is_same_v<T, CompSet>) {
          out.push_back(x.vals.size());
          for (Valuation v : x.vals) out.push_back(valuation_rank(v));
        } else if constexpr (std::is_same_v<T, GlobalState>) {
          out.push_back(x.parts.size());
          for (Valuation v : x.parts) out.push_back(valuation_rank(v));
        } else {
          out.push_back(x.partition.size());
          for (const auto& c : x.partition) {
            out.push_back(c.size());
            for (std::size_t w : c) out.push_back(valuation_rank(x.worlds[w]));
          }
        }
      },
      p);
}

// Breadth-first numbering from the initial state, actions in sorted order.
std::vector<std::size_t> bfs_order(const Domain& d) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(d.size(), false);
  std::deque<std::size_t> queue{d.initial};
  seen[d.initial] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (const auto& list : d.succ[s]) {
      for (std::size_t t : list) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  return order;
}

std::vector<std::uint64_t> encode(const Domain& d, bool with_payload) {
  if (!d.is_functional()) throw DomainError("domain encoding requires a deterministic domain");
  const auto order = bfs_order(d);
  std::vector<std::size_t> number(d.size(), unset);
  for (std::size_t i = 0; i < order.size(); ++i) number[order[i]] = i;
  std::vector<std::uint64_t> out;
  for (std::size_t s : order) {
    if (with_payload) encode_payload(d.states[s], out);
    out.push_back(observation_rank(d.obs[s], d.props.size()));
    for (const auto& list : d.succ[s]) {
      out.push_back(list.empty() ? ~std::uint64_t{0} : number[list.front()]);
    }
  }
  out.push_back(d.size());
  return out;
}

bool has_edge(const Domain& d, std::size_t s, std::size_t a, std::size_t t) {
  const auto& list = d.succ[s][a];
  return std::binary_search(list.begin(), list.end(), t);
}

class IsoSearch {
 public:
  IsoSearch(const Domain& a, const Domain& b) : a_(a), b_(b), map_(a.size(), unset), used_(b.size(), false) {
    in_a_ = in_degrees(a);
    in_b_ = in_degrees(b);
    order_ = bfs_order(a);
    std::vector<bool> listed(a.size(), false);
    for (std::size_t s : order_) listed[s] = true;
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (!listed[s]) order_.push_back(s);
    }
  }

  std::optional<IsoWitness> run() {
    if (assign(0)) return IsoWitness{map_};
    return std::nullopt;
  }

 private:
  static std::vector<std::vector<std::size_t>> in_degrees(const Domain& d) {
    std::vector<std::vector<std::size_t>> deg(d.size(), std::vector<std::size_t>(d.actions.size(), 0));
    for (std::size_t s = 0; s < d.size(); ++s) {
      for (std::size_t a = 0; a < d.actions.size(); ++a) {
        for (std::size_t t : d.succ[s][a]) ++deg[t][a];
      }
    }
    return deg;
  }

  bool compatible(std::size_t s, std::size_t t) const {
    if (a_.obs[s] != b_.obs[t]) return false;
    if ((s == a_.initial) != (t == b_.initial)) return false;
    for (std::size_t a = 0; a < a_.actions.size(); ++a) {
      if (a_.succ[s][a].size() != b_.succ[t][a].size()) return false;
      if (in_a_[s][a] != in_b_[t][a]) return false;
    }
    for (std::size_t u = 0; u < a_.size(); ++u) {
      const std::size_t v = u == s ? t : map_[u];
      if (v == unset) continue;
      for (std::size_t a = 0; a < a_.actions.size(); ++a) {
        if (has_edge(a_, s, a, u) != has_edge(b_, t, a, v)) return false;
        if (has_edge(a_, u, a, s) != has_edge(b_, v, a, t)) return false;
      }
    }
    return true;
  }

  bool assign(std::size_t k) {
    if (k == order_.size()) return true;
    const std::size_t s = order_[k];
    for (std::size_t t = 0; t < b_.size(); ++t) {
      if (used_[t] || !compatible(s, t)) continue;
      map_[s] = t;
      used_[t] = true;
      if (assign(k + 1)) return true;
      map_[s] = unset;
      used_[t] = false;
    }
    return false;
  }

  const Domain& a_;
  const Domain& b_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> in_a_;
  std::vector<std::vector<std::size_t>> in_b_;
  std::vector<std::size_t> order_;
};

void require_comparable(const Domain& a, const Domain& b, const char* operation) {
  if (!(a.props == b.props)) throw DomainError(std::string(operation) + " requires the same signature");
  if (a.actions != b.actions) throw DomainError(std::string(operation) + " requires the same action set");
  require_deterministic(a, operation);
  require_deterministic(b, operation);
}

bool traces_agree(const Domain& a, const Domain& b, std::size_t s, std::size_t t, std::size_t remaining) {
  if (a.obs[s] != b.obs[t]) return false;
  if (remaining == 0) return true;
  for (std::size_t k = 0; k < a.actions.size(); ++k) {
    if (!traces_agree(a, b, a.succ[s][k].front(), b.succ[t][k].front(), remaining - 1)) return false;
  }
  return true;
}

// A candidate domain under construction, paired with states of the target.
struct Partial {
  std::vector<Valuation> vals;
  std::vector<Observation> obs;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<bool>> paired;
  std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> work;
  std::uint64_t used = 0;
};

class BisimEnumerator {
 public:
  explicit BisimEnumerator(const Domain& d) : d_(d), nact_(d.actions.size()) {}

  std::vector<Domain> run() {
    const Observation o0 = d_.obs[d_.initial];
    for (Valuation v : comp(o0, d_.props)) {
      Partial p;
      add_state(p, v, o0);
      pair(p, 0, d_.initial);
      search(std::move(p));
    }
    return std::move(results_);
  }

 private:
  void add_state(Partial& p, Valuation v, Observation o) const {
    p.vals.push_back(v);
    p.obs.push_back(o);
    p.succ.emplace_back(nact_, unset);
    p.paired.emplace_back(d_.size(), false);
    p.used |= std::uint64_t{1} << v.bits;
  }

  void pair(Partial& p, std::size_t x, std::size_t s) const {
    if (p.paired[x][s]) return;
    p.paired[x][s] = true;
    for (std::size_t a = 0; a < nact_; ++a) p.work.emplace_back(x, s, a);
  }

  void search(Partial p) {
    while (!p.work.empty()) {
      const auto [x, s, a] = p.work.front();
      p.work.pop_front();
      const std::size_t t = d_.succ[s][a].front();
      const Observation ot = d_.obs[t];
      if (p.succ[x][a] != unset) {
        const std::size_t y = p.succ[x][a];
        if (p.obs[y] != ot) return;
        pair(p, y, t);
        continue;
      }
      for (std::size_t y = 0; y < p.vals.size(); ++y) {
        if (p.obs[y] != ot) continue;
        Partial next = p;
        next.succ[x][a] = y;
        pair(next, y, t);
        search(std::move(next));
      }
      for (Valuation v : comp(ot, d_.props)) {
        if ((p.used >> v.bits) & 1u) continue;
        Partial next = p;
        add_state(next, v, ot);
        const std::size_t y = next.vals.size() - 1;
        next.succ[x][a] = y;
        pair(next, y, t);
        search(std::move(next));
      }
      return;
    }
    emit(p);
  }

  void emit(const Partial& p) {
    Domain out(d_.props, d_.actions);
    for (std::size_t x = 0; x < p.vals.size(); ++x) out.add_state(p.vals[x], p.obs[x]);
    for (std::size_t x = 0; x < p.vals.size(); ++x) {
      for (std::size_t a = 0; a < nact_; ++a) out.add_transition(x, a, p.succ[x][a]);
    }
    out.initial = 0;
    results_.push_back(std::move(out));
  }

  const Domain& d_;
  std::size_t nact_;
  std::vector<Domain> results_;
};

}  // namespace

std::optional<IsoWitness> isomorphic(const Domain& a, const Domain& b) {
  if (!(a.props == b.props) || a.actions != b.actions || a.size() != b.size()) return std::nullopt;
  const bool fast = a.is_functional() && a.is_total() && b.is_functional() && b.is_total() &&
                    bfs_order(a).size() == a.size() && bfs_order(b).size() == b.size();
  if (fast) {
    if (encode(a, false) != encode(b, false)) return std::nullopt;
    const auto oa = bfs_order(a);
    const auto ob = bfs_order(b);
    IsoWitness w{std::vector<std::size_t>(a.size())};
    for (std::size_t i = 0; i < oa.size(); ++i) w.map[oa[i]] = ob[i];
    return w;
  }
  IsoSearch search(a, b);
  return search.run();
}

std::optional<BisimWitness> obs_bisimilar(const Domain& a, const Domain& b) {
  require_comparable(a, b, "bisimulation check");
  std::vector<std::vector<bool>> seen(a.size(), std::vector<bool>(b.size(), false));
  std::deque<std::pair<std::size_t, std::size_t>> queue{{a.initial, b.initial}};
  seen[a.initial][b.initial] = true;
  BisimWitness w;
  while (!queue.empty()) {
    const auto [s, t] = queue.front();
    queue.pop_front();
    if (a.obs[s] != b.obs[t]) return std::nullopt;
    w.pairs.emplace_back(s, t);
    for (std::size_t k = 0; k < a.actions.size(); ++k) {
      const std::size_t s2 = a.succ[s][k].front();
      const std::size_t t2 = b.succ[t][k].front();
      if (!seen[s2][t2]) {
        seen[s2][t2] = true;
        queue.emplace_back(s2, t2);
      }
    }
  }
  std::sort(w.pairs.begin(), w.pairs.end());
  return w;
}

bool trace_equivalent(const Domain& a, const Domain& b, std::size_t max_actions) {
  require_comparable(a, b, "trace equivalence");
  return traces_agree(a, b, a.initial, b.initial, max_actions);
}

Domain sync_compose(const std::vector<Domain>& domains) {
  if (domains.empty()) throw DomainError("synchronous composition of no domains");
  const Domain& first = domains.front();
  for (const Domain& d : domains) {
    if (!(d.props == first.props) || d.actions != first.actions) {
      throw DomainError("synchronous composition requires the same signature and actions");
    }
    require_deterministic(d, "synchronous composition");
    if (d.kind() != StateKind::val) throw DomainError("synchronous composition requires valuation states");
  }
  Domain out(first.props, first.actions);
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> tuples;
  auto intern = [&](const std::vector<std::size_t>& tuple) {
    auto it = index.find(tuple);
    if (it != index.end()) return it->second;
    GlobalState g;
    const Observation o = first.obs[tuple[0]];
    for (std::size_t i = 0; i < domains.size(); ++i) {
      if (domains[i].obs[tuple[i]] != o) {
        throw DomainError("components of a global state disagree on their observation");
      }
      g.parts.push_back(domains[i].valuation(tuple[i]));
    }
    const std::size_t id = out.add_state(std::move(g), o);
    index.emplace(tuple, id);
    tuples.push_back(tuple);
    return id;
  };
  std::vector<std::size_t> start;
  for (const Domain& d : domains) start.push_back(d.initial);
  out.initial = intern(start);
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t a = 0; a < out.actions.size(); ++a) {
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < domains.size(); ++i) next.push_back(domains[i].succ[tuples[s][i]][a].front());
      const std::size_t t = intern(next);
      out.add_transition(s, a, t);
    }
  }
  out.deterministic = true;
  return out;
}

std::vector<Domain> enumerate_bisimilar(const Domain& d, const EnumerationLimits& limits) {
  require_deterministic_val_domain(d, "bisimilar-domain enumeration");
  if (d.props.size() > limits.max_props || d.actions.size() > limits.max_actions) {
    throw DomainError("bisimilar-domain enumeration limited to " + std::to_string(limits.max_props) +
                      " propositions and " + std::to_string(limits.max_actions) + " actions");
  }
  if (d.props.size() > 6) throw DomainError("bisimilar-domain enumeration supports at most 6 propositions");
  BisimEnumerator e(d);
  auto out = e.run();
  sort_domains(out);
  return out;
}

std::vector<std::uint64_t> domain_order_key(const Domain& d) { return encode(d, true); }

std::vector<std::uint64_t> shape_key(const Domain& d) { return encode(d, false); }

void sort_domains(std::vector<Domain>& domains) {
  std::vector<std::vector<std::uint64_t>> keys;
  keys.reserve(domains.size());
  for (const Domain& d : domains) keys.push_back(domain_order_key(d));
  std::vector<std::size_t> idx(domains.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
  std::vector<Domain> out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && keys[idx[k]] == keys[idx[k - 1]]) continue;
    out.push_back(std::move(domains[idx[k]]));
  }
  domains = std::move(out);
}

bool same_domain(const Domain& a, const Domain& b) {
  return a.props == b.props && a.actions == b.actions && domain_order_key(a) == domain_order_key(b);
}

Domain behavioural_equivalence_domain(const Domain& d, const EnumerationLimits& limits) {
  return sync_compose(enumerate_bisimilar(d, limits));
}

}  // namespace delearn
