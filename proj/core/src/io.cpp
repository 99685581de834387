#include "delearn/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace delearn {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

Valuation valuation_from(const json& j, const Signature& sig) {
  if (j.is_string()) return parse_valuation(j.get<std::string>(), sig);
  if (j.is_array()) return Valuation{sig.mask_of(as_strings(j, "valuation"))};
  throw InputError("a valuation must be a literal string or a list of true propositions");
}

std::vector<Valuation> valuations_from(const json& j, const Signature& sig) {
  if (!j.is_array()) throw InputError("expected a list of valuations");
  std::vector<Valuation> out;
  for (const auto& x : j) out.push_back(valuation_from(x, sig));
  return out;
}

ojson valuations_to(const std::vector<Valuation>& vals, const Signature& sig) {
  ojson out = ojson::array();
  for (Valuation v : vals) out.push_back(render_valuation(v, sig));
  return out;
}

Observation observation_from(const json& j, const Signature& sig) {
  if (j.is_string()) return parse_observation(j.get<std::string>(), sig);
  if (!j.is_object()) throw InputError("an observation must be an object with \"pos\" and \"neg\"");
  Observation o;
  if (j.contains("pos")) o.pos = sig.mask_of(as_strings(j.at("pos"), "observation \"pos\""));
  if (j.contains("neg")) o.neg = sig.mask_of(as_strings(j.at("neg"), "observation \"neg\""));
  if (!o.consistent()) throw InputError("observation lists a proposition as both observed true and false");
  return o;
}

ojson observation_to(Observation o, const Signature& sig) {
  ojson out = ojson::object();
  out["pos"] = sig.names_of(o.pos);
  out["neg"] = sig.names_of(o.neg);
  return out;
}

StateKind kind_from(const std::string& name) {
  if (name == "val") return StateKind::val;
  if (name == "compset") return StateKind::compset;
  if (name == "tuple") return StateKind::tuple;
  if (name == "model") return StateKind::model;
  throw InputError("unknown state kind '" + name + "'");
}

EpistemicModel model_payload_from(const json& j, const Signature& sig) {
  if (j.is_object()) return epistemic_model_from_json(j.dump(), sig);
  if (!j.is_array()) throw InputError("a model state needs a list of components");
  EpistemicModel m;
  m.props = sig;
  for (const auto& c : j) {
    std::vector<std::size_t> part;
    for (Valuation v : valuations_from(c, sig)) {
      part.push_back(m.worlds.size());
      m.worlds.push_back(v);
    }
    m.partition.push_back(std::move(part));
  }
  return canonicalize(m);
}

ojson payload_to(const StatePayload& p, const Signature& sig) {
  return std::visit(
      [&](const auto& x) -> ojson {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Valuation>) {
          return render_valuation(x, sig);
        } else if constexpr (std::is_same_v<T, CompSet>) {
          return valuations_to(x.vals, sig);
        } else if constexpr (std::is_same_v<T, GlobalState>) {
          return valuations_to(x.parts, sig);
        } else {
          ojson comps = ojson::array();
          for (const auto& c : x.partition) {
            std::vector<Valuation> vals;
            for (std::size_t w : c) vals.push_back(x.worlds[w]);
            comps.push_back(valuations_to(vals, sig));
          }
          return comps;
        }
      },
      p);
}

ObservationTrace trace_from(const json& j, const Signature& sig) {
  if (!j.is_array() || j.empty()) throw InputError("a trace must be a non-empty array");
  ObservationTrace t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i % 2 == 0) {
      t.observations.push_back(observation_from(j[i], sig));
    } else {
      const std::string a = as_string(j[i], "trace action");
      if (!is_identifier(a)) throw InputError("invalid action name '" + a + "'");
      t.actions.push_back(a);
    }
  }
  check_trace(t);
  return t;
}

ojson trace_to(const ObservationTrace& t, const Signature& sig) {
  ojson out = ojson::array();
  for (std::size_t i = 0; i < t.observations.size(); ++i) {
    if (i) out.push_back(t.actions[i - 1]);
    out.push_back(observation_to(t.observations[i], sig));
  }
  return out;
}

Signature infer_signature(const std::set<std::string>& names) {
  return Signature(std::vector<std::string>(names.begin(), names.end()));
}

EventModel event_model_from(const json& j, const Signature& sig) {
  EventModel m;
  m.props = sig;
  const json& events = field(j, "events", "event model");
  if (!events.is_array()) throw InputError("\"events\" must be an array");
  std::map<std::string, std::size_t> index;
  for (const auto& ej : events) {
    Event e;
    e.id = ej.contains("id") ? as_string(ej.at("id"), "event id") : "e" + std::to_string(m.events.size());
    if (!index.emplace(e.id, m.events.size()).second) throw InputError("duplicate event id '" + e.id + "'");
    e.pre = ej.contains("pre") ? parse_formula(as_string(ej.at("pre"), "precondition"), BoxKind::event)
                               : Formula::top();
    for (const auto& name : atoms_of(e.pre)) sig.index(name);
    if (ej.contains("post")) {
      const json& post = ej.at("post");
      if (!post.is_object()) throw InputError("\"post\" must be an object");
      for (const auto& [prop, value] : post.items()) {
        const std::uint32_t bit = 1u << sig.index(prop);
        const std::string v = as_string(value, "postcondition");
        if (v == "T") {
          e.set_true |= bit;
        } else if (v == "F") {
          e.set_false |= bit;
        } else if (v != "keep") {
          throw InputError("postcondition must be \"T\", \"F\" or \"keep\", got \"" + v + "\"");
        }
      }
    }
    m.events.push_back(std::move(e));
  }
  if (j.contains("partition")) {
    for (const auto& part : j.at("partition")) {
      std::vector<std::size_t> comp;
      for (const auto& id : as_strings(part, "partition")) {
        auto it = index.find(id);
        if (it == index.end()) throw InputError("partition mentions unknown event '" + id + "'");
        comp.push_back(it->second);
      }
      m.partition.push_back(std::move(comp));
    }
  } else {
    for (std::size_t i = 0; i < m.events.size(); ++i) m.partition.push_back({i});
  }
  m.component_of();
  return m;
}

void collect_event_names(const json& j, std::set<std::string>& names) {
  if (!j.is_object() || !j.contains("events")) return;
  for (const auto& ej : j.at("events")) {
    if (ej.contains("post") && ej.at("post").is_object()) {
      for (const auto& [prop, value] : ej.at("post").items()) names.insert(prop);
    }
    if (ej.contains("pre") && ej.at("pre").is_string()) {
      for (const auto& a : atoms_of(parse_formula(ej.at("pre").get<std::string>()))) names.insert(a);
    }
  }
}

ojson event_model_to(const EventModel& m, const Signature& sig) {
  ojson events = ojson::array();
  for (const Event& e : m.events) {
    ojson ej = ojson::object();
    ej["id"] = e.id;
    ej["pre"] = render(e.pre);
    ojson post = ojson::object();
    for (std::size_t i = 0; i < sig.size(); ++i) {
      switch (e.post(i)) {
        case PostValue::set_true: post[sig.name(i)] = "T"; break;
        case PostValue::set_false: post[sig.name(i)] = "F"; break;
        case PostValue::keep: post[sig.name(i)] = "keep"; break;
      }
    }
    ej["post"] = post;
    events.push_back(ej);
  }
  ojson partition = ojson::array();
  for (const auto& c : m.partition) {
    ojson part = ojson::array();
    for (std::size_t k : c) part.push_back(m.events[k].id);
    partition.push_back(part);
  }
  ojson out = ojson::object();
  out["events"] = events;
  out["partition"] = partition;
  return out;
}

template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid ") + what + ": " + e.what());
  }
}

}  // namespace

Domain domain_from_json(const std::string& text) {
  return guarded("domain", [&] {
    const json j = parse_json(text, "domain");
    const Signature sig(as_strings(field(j, "props", "domain"), "\"props\""));
    Domain d(sig, as_strings(field(j, "actions", "domain"), "\"actions\""));
    d.deterministic = j.contains("deterministic") ? j.at("deterministic").get<bool>() : true;
    const json& states = field(j, "states", "domain");
    if (!states.is_array() || states.empty()) throw InputError("\"states\" must be a non-empty array");
    const json obs = j.contains("obs") ? j.at("obs") : json::object();
    for (const auto& sj : states) {
      const std::string id = as_string(field(sj, "id", "state"), "state id");
      if (d.find_state(id)) throw InputError("duplicate state id '" + id + "'");
      const StateKind kind = kind_from(sj.contains("kind") ? as_string(sj.at("kind"), "state kind") : "val");
      const json& val = field(sj, "val", "state");
      StatePayload payload;
      switch (kind) {
        case StateKind::val: payload = valuation_from(val, sig); break;
        case StateKind::compset: {
          auto vals = valuations_from(val, sig);
          std::sort(vals.begin(), vals.end());
          vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
          payload = CompSet{std::move(vals)};
          break;
        }
        case StateKind::tuple: payload = GlobalState{valuations_from(val, sig)}; break;
        case StateKind::model: payload = model_payload_from(val, sig); break;
      }
      Observation o;
      if (sj.contains("obs")) {
        o = observation_from(sj.at("obs"), sig);
      } else if (obs.contains(id)) {
        o = observation_from(obs.at(id), sig);
      } else if (kind == StateKind::model) {
        o = observation_of_model(std::get<EpistemicModel>(payload));
      } else {
        throw InputError("state '" + id + "' has no observation");
      }
      d.add_state(std::move(payload), o, id);
    }
    for (const auto& [id, value] : obs.items()) {
      if (!d.find_state(id)) throw InputError("observation given for unknown state '" + id + "'");
    }
    d.initial = j.contains("initial") ? d.state_index(as_string(j.at("initial"), "\"initial\"")) : 0;
    if (j.contains("transitions")) {
      for (const auto& tj : j.at("transitions")) {
        std::string from, action, to;
        if (tj.is_array() && tj.size() == 3) {
          from = as_string(tj[0], "transition source");
          action = as_string(tj[1], "transition action");
          to = as_string(tj[2], "transition target");
        } else if (tj.is_object()) {
          from = as_string(field(tj, "from", "transition"), "transition source");
          action = as_string(field(tj, "action", "transition"), "transition action");
          to = as_string(field(tj, "to", "transition"), "transition target");
        } else {
          throw InputError("a transition must be [from, action, to]");
        }
        d.add_transition(d.state_index(from), d.action_index(action), d.state_index(to));
      }
    }
    return d;
  });
}

std::string domain_to_json(const Domain& d) {
  ojson j = ojson::object();
  j["props"] = d.props.names();
  j["actions"] = d.actions;
  ojson states = ojson::array();
  for (std::size_t s = 0; s < d.size(); ++s) {
    ojson sj = ojson::object();
    sj["id"] = d.ids[s];
    sj["kind"] = kind_name(kind_of(d.states[s]));
    sj["val"] = payload_to(d.states[s], d.props);
    states.push_back(sj);
  }
  j["states"] = states;
  j["initial"] = d.ids.at(d.initial);
  ojson trans = ojson::array();
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (std::size_t a = 0; a < d.actions.size(); ++a) {
      for (std::size_t t : d.succ[s][a]) trans.push_back(ojson::array({d.ids[s], d.actions[a], d.ids[t]}));
    }
  }
  j["transitions"] = trans;
  ojson obs = ojson::object();
  for (std::size_t s = 0; s < d.size(); ++s) obs[d.ids[s]] = observation_to(d.obs[s], d.props);
  j["obs"] = obs;
  j["deterministic"] = d.deterministic;
  return dump(j);
}

EpistemicModel epistemic_model_from_json(const std::string& text, const std::optional<Signature>& props,
                                         std::vector<std::string>* ids) {
  return guarded("epistemic model", [&] {
    const json j = parse_json(text, "epistemic model");
    const json& worlds = field(j, "worlds", "epistemic model");
    if (!worlds.is_array()) throw InputError("\"worlds\" must be an array");
    Signature sig;
    if (j.contains("props")) {
      sig = Signature(as_strings(j.at("props"), "\"props\""));
    } else if (props) {
      sig = *props;
    } else {
      std::set<std::string> names;
      for (const auto& w : worlds) {
        const json& val = field(w, "val", "world");
        if (val.is_array()) {
          for (const auto& n : as_strings(val, "world valuation")) names.insert(n);
        } else {
          throw InputError("world valuations must list true propositions when no signature is given");
        }
      }
      sig = infer_signature(names);
    }
    EpistemicModel m;
    m.props = sig;
    std::map<std::string, std::size_t> index;
    for (const auto& w : worlds) {
      const std::string id = w.contains("id") ? as_string(w.at("id"), "world id") : "w" + std::to_string(m.size());
      if (!index.emplace(id, m.size()).second) throw InputError("duplicate world id '" + id + "'");
      if (ids) ids->push_back(id);
      m.worlds.push_back(valuation_from(field(w, "val", "world"), sig));
    }
    if (j.contains("partition")) {
      for (const auto& part : j.at("partition")) {
        std::vector<std::size_t> comp;
        for (const auto& id : as_strings(part, "partition")) {
          auto it = index.find(id);
          if (it == index.end()) throw InputError("partition mentions unknown world '" + id + "'");
          comp.push_back(it->second);
        }
        m.partition.push_back(std::move(comp));
      }
    } else if (!m.worlds.empty()) {
      std::vector<std::size_t> all;
      for (std::size_t i = 0; i < m.size(); ++i) all.push_back(i);
      m.partition.push_back(std::move(all));
    }
    m.component_of();
    return m;
  });
}

std::string epistemic_model_to_json(const EpistemicModel& m) {
  ojson j = ojson::object();
  j["props"] = m.props.names();
  ojson worlds = ojson::array();
  for (std::size_t w = 0; w < m.size(); ++w) {
    ojson wj = ojson::object();
    wj["id"] = "w" + std::to_string(w);
    wj["val"] = m.props.names_of(m.worlds[w].bits);
    worlds.push_back(wj);
  }
  j["worlds"] = worlds;
  ojson partition = ojson::array();
  for (const auto& c : m.partition) {
    ojson part = ojson::array();
    for (std::size_t w : c) part.push_back("w" + std::to_string(w));
    partition.push_back(part);
  }
  j["partition"] = partition;
  return dump(j);
}

EventModels event_models_from_json(const std::string& text, const std::optional<Signature>& props) {
  return guarded("event models", [&] {
    const json j = parse_json(text, "event model");
    Signature sig;
    if (j.contains("props")) {
      sig = Signature(as_strings(j.at("props"), "\"props\""));
    } else if (props) {
      sig = *props;
    } else {
      std::set<std::string> names;
      if (j.contains("models")) {
        for (const auto& [name, mj] : j.at("models").items()) collect_event_names(mj, names);
      } else {
        collect_event_names(j, names);
      }
      sig = infer_signature(names);
    }
    EventModels out;
    if (j.contains("models")) {
      const json& models = j.at("models");
      if (!models.is_object()) throw InputError("\"models\" must map names to event models");
      for (const auto& [name, mj] : models.items()) {
        if (!is_identifier(name)) throw InputError("invalid event model name '" + name + "'");
        out.emplace(name, event_model_from(mj, sig));
      }
    } else {
      const std::string name = j.contains("name") ? as_string(j.at("name"), "\"name\"") : "E";
      if (!is_identifier(name)) throw InputError("invalid event model name '" + name + "'");
      out.emplace(name, event_model_from(j, sig));
    }
    return out;
  });
}

std::string event_models_to_json(const EventModels& models, const Signature& props) {
  ojson j = ojson::object();
  j["props"] = props.names();
  ojson ms = ojson::object();
  for (const auto& [name, m] : models) ms[name] = event_model_to(m, props);
  j["models"] = ms;
  return dump(j);
}

std::vector<ObservationTrace> traces_from_json(const std::string& text, const Signature& props) {
  return guarded("traces", [&] {
    const json j = parse_json(text, "trace");
    if (!j.is_array()) throw InputError("a trace file must be an array of traces");
    std::vector<ObservationTrace> out;
    for (const auto& t : j) out.push_back(trace_from(t, props));
    return out;
  });
}

std::string traces_to_json(const std::vector<ObservationTrace>& traces, const Signature& props) {
  ojson j = ojson::array();
  for (const auto& t : traces) j.push_back(trace_to(t, props));
  return dump(j);
}

std::vector<ObservedTransition> transitions_from_json(const std::string& text, const Signature& props) {
  return guarded("observed transitions", [&] {
    const json j = parse_json(text, "observed transition");
    if (!j.is_array()) throw InputError("observed transitions must be an array");
    std::vector<ObservedTransition> out;
    for (const auto& tj : j) {
      const std::string a = as_string(field(tj, "action", "observed transition"), "action");
      if (!is_identifier(a)) throw InputError("invalid action name '" + a + "'");
      out.push_back({observation_from(field(tj, "from", "observed transition"), props), a,
                     observation_from(field(tj, "to", "observed transition"), props)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  });
}

std::string transitions_to_json(const std::vector<ObservedTransition>& sigma, const Signature& props) {
  ojson j = ojson::array();
  for (const auto& t : sigma) {
    ojson tj = ojson::object();
    tj["from"] = observation_to(t.from, props);
    tj["action"] = t.action;
    tj["to"] = observation_to(t.to, props);
    j.push_back(tj);
  }
  return dump(j);
}

std::string histories_to_json(const std::vector<History>& hs, const Signature& props) {
  ojson j = ojson::array();
  for (const History& h : hs) {
    ojson hj = ojson::array();
    for (std::size_t i = 0; i < h.states.size(); ++i) {
      if (i) hj.push_back(h.trace.actions[i - 1]);
      ojson step = ojson::object();
      step["state"] = render_valuation(h.states[i], props);
      step["obs"] = observation_to(h.trace.observations[i], props);
      hj.push_back(step);
    }
    j.push_back(hj);
  }
  return dump(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace delearn
