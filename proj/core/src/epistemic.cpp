#include "delearn/epistemic.hpp"

#include <algorithm>

namespace delearn {

namespace {

std::vector<std::size_t> partition_index(const std::vector<std::vector<std::size_t>>& partition, std::size_t n,
                                         const char* what) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> out(n, unset);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    for (std::size_t w : partition[c]) {
      if (w >= n) throw InputError(std::string(what) + " partition mentions unknown index " + std::to_string(w));
      if (out[w] != unset) {
        throw InputError(std::string(what) + " partition lists index " + std::to_string(w) + " twice");
      }
      out[w] = c;
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (out[w] == unset) throw InputError(std::string(what) + " partition misses index " + std::to_string(w));
  }
  return out;
}

class Evaluator {
 public:
  Evaluator(const EpistemicModel& m, const EvalContext& ctx) : m_(m), ctx_(ctx), comp_(m.component_of()) {}

  std::vector<bool> run(const Formula& f) {
    using K = Formula::Kind;
    const std::size_t n = m_.size();
    switch (f.kind()) {
      case K::top: return std::vector<bool>(n, true);
      case K::bottom: return std::vector<bool>(n, false);
      case K::atom: {
        const auto idx = m_.props.find(f.name());
        if (!idx) throw EvalError("unknown proposition '" + f.name() + "'");
        std::vector<bool> out(n);
        for (std::size_t w = 0; w < n; ++w) out[w] = m_.worlds[w].holds(*idx);
        return out;
      }
      case K::negation: {
        auto v = run(f.lhs());
        v.flip();
        return v;
      }
      case K::conjunction:
      case K::disjunction:
      case K::implication:
      case K::equivalence: {
        const auto a = run(f.lhs());
        const auto b = run(f.rhs());
        std::vector<bool> out(n);
        for (std::size_t w = 0; w < n; ++w) {
          switch (f.kind()) {
            case K::conjunction: out[w] = a[w] && b[w]; break;
            case K::disjunction: out[w] = a[w] || b[w]; break;
            case K::implication: out[w] = !a[w] || b[w]; break;
            default: out[w] = a[w] == b[w]; break;
          }
        }
        return out;
      }
      case K::knows: return knows(run(f.lhs()));
      case K::knows_whether: {
        auto v = run(f.lhs());
        const auto pos = knows(v);
        v.flip();
        const auto neg = knows(v);
        std::vector<bool> out(n);
        for (std::size_t w = 0; w < n; ++w) out[w] = pos[w] || neg[w];
        return out;
      }
      case K::event_box: {
        if (!ctx_.events) throw EvalError("event model '" + f.name() + "' used without an event environment");
        const auto it = ctx_.events->find(f.name());
        if (it == ctx_.events->end()) throw EvalError("unresolved event model '" + f.name() + "'");
        const RawProduct prod = product_update_raw(m_, it->second, ctx_);
        const auto inner = eval_worlds(prod.model, f.lhs(), ctx_);
        std::vector<bool> out(n, true);
        for (std::size_t i = 0; i < prod.origin.size(); ++i) {
          if (!inner[i]) out[prod.origin[i].first] = false;
        }
        return out;
      }
      case K::action_box: {
        if (!ctx_.action_box) {
          throw EvalError("action modality [" + f.name() + "] needs a domain to be evaluated against");
        }
        return std::vector<bool>(n, ctx_.action_box(f.name(), f.lhs()));
      }
    }
    throw std::logic_error("unhandled formula kind");
  }

 private:
  std::vector<bool> knows(const std::vector<bool>& v) const {
    std::vector<bool> comp_ok(m_.partition.size(), true);
    for (std::size_t w = 0; w < v.size(); ++w) {
      if (!v[w]) comp_ok[comp_[w]] = false;
    }
    std::vector<bool> out(v.size());
    for (std::size_t w = 0; w < v.size(); ++w) out[w] = comp_ok[comp_[w]];
    return out;
  }

  const EpistemicModel& m_;
  const EvalContext& ctx_;
  std::vector<std::size_t> comp_;
};

}  // namespace

std::vector<std::size_t> EpistemicModel::component_of() const {
  return partition_index(partition, worlds.size(), "world");
}

std::vector<std::size_t> EventModel::component_of() const {
  return partition_index(partition, events.size(), "event");
}

PostValue Event::post(std::size_t prop) const {
  if ((set_true >> prop) & 1u) return PostValue::set_true;
  if ((set_false >> prop) & 1u) return PostValue::set_false;
  return PostValue::keep;
}

EpistemicModel single_component_model(const Signature& props, std::vector<Valuation> vals) {
  EpistemicModel m;
  m.props = props;
  m.worlds = std::move(vals);
  std::vector<std::size_t> all(m.worlds.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!all.empty()) m.partition.push_back(std::move(all));
  return canonicalize(m);
}

EventModel identity_event_model(const Signature& props) {
  EventModel e;
  e.props = props;
  e.events.push_back(Event{"e0", Formula::top(), 0, 0});
  e.partition = {{0}};
  return e;
}

std::vector<bool> eval_worlds(const EpistemicModel& m, const Formula& f, const EvalContext& ctx) {
  Evaluator ev(m, ctx);
  return ev.run(f);
}

bool eval(const EpistemicModel& m, std::size_t world, const Formula& f, const EventEnv& env) {
  if (world >= m.size()) throw EvalError("world " + std::to_string(world) + " is not in the model");
  EvalContext ctx;
  ctx.events = &env;
  return eval_worlds(m, f, ctx)[world];
}

bool eval_global(const EpistemicModel& m, const Formula& f, const EventEnv& env) {
  EvalContext ctx;
  ctx.events = &env;
  const auto v = eval_worlds(m, f, ctx);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

RawProduct product_update_raw(const EpistemicModel& m, const EventModel& e, const EvalContext& ctx) {
  if (!(m.props == e.props)) throw InputError("epistemic model and event model use different signatures");
  m.component_of();
  e.component_of();

  std::vector<std::vector<bool>> applicable;
  applicable.reserve(e.events.size());
  for (const Event& ev : e.events) applicable.push_back(eval_worlds(m, ev.pre, ctx));

  RawProduct out;
  out.model.props = m.props;
  // One component per (world component, event component) pair that is non-empty.
  for (const auto& wc : m.partition) {
    for (const auto& ec : e.partition) {
      std::vector<std::size_t> comp;
      for (std::size_t w : wc) {
        for (std::size_t k : ec) {
          if (!applicable[k][w]) continue;
          comp.push_back(out.model.worlds.size());
          out.model.worlds.push_back(e.events[k].apply(m.worlds[w]));
          out.origin.emplace_back(w, k);
        }
      }
      if (!comp.empty()) out.model.partition.push_back(std::move(comp));
    }
  }
  return out;
}

EpistemicModel product_update(const EpistemicModel& m, const EventModel& e, const EventEnv& env) {
  EvalContext ctx;
  ctx.events = &env;
  return canonicalize(product_update_raw(m, e, ctx).model);
}

EpistemicModel canonicalize(const EpistemicModel& m) {
  m.component_of();
  std::vector<std::vector<Valuation>> comps;
  for (const auto& c : m.partition) {
    std::vector<Valuation> vals;
    for (std::size_t w : c) vals.push_back(m.worlds[w]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (!vals.empty()) comps.push_back(std::move(vals));
  }
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());

  EpistemicModel out;
  out.props = m.props;
  for (const auto& vals : comps) {
    std::vector<std::size_t> idx;
    for (Valuation v : vals) {
      idx.push_back(out.worlds.size());
      out.worlds.push_back(v);
    }
    out.partition.push_back(std::move(idx));
  }
  return out;
}

bool models_bisimilar(const EpistemicModel& a, const EpistemicModel& b) {
  if (!(a.props == b.props)) return false;
  return canonicalize(a) == canonicalize(b);
}

std::vector<EpistemicModel> components(const EpistemicModel& m) {
  const EpistemicModel c = canonicalize(m);
  std::vector<EpistemicModel> out;
  for (const auto& part : c.partition) {
    std::vector<Valuation> vals;
    for (std::size_t w : part) vals.push_back(c.worlds[w]);
    out.push_back(single_component_model(c.props, std::move(vals)));
  }
  return out;
}

std::vector<Valuation> valuation_set(const EpistemicModel& m) {
  std::vector<Valuation> vals = m.worlds;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace delearn
