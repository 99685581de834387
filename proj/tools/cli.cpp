#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "delearn/domain.hpp"
#include "delearn/equivalence.hpp"
#include "delearn/explicit_learner.hpp"
#include "delearn/implicit_learner.hpp"
#include "delearn/io.hpp"
#include "delearn/planner.hpp"
#include "delearn/traces.hpp"

namespace delearn::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::vector<std::string> props;
  std::vector<std::string> actions;
  std::string domain;
  std::string traces;
  std::string sigma;
  std::string model;
  std::string events;
  std::string world;
  std::string state;
  std::string start;
  std::string formula;
  std::string goal;
  std::string a;
  std::string b;
  std::string out;
  std::optional<std::size_t> length;
  std::optional<long long> horizon;
  std::uint64_t budget = 1'000'000;
  std::string knowledge = "state";
  bool json = false;
  bool all = false;
};

// Writes an artifact to --out when given, else to stdout.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
  } else {
    write_file(opt.out, text);
  }
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Domain load_domain(const std::string& path) {
  if (path.empty()) throw InputError("missing --domain");
  return domain_from_json(read_file(path));
}

Signature require_props(const Options& opt) {
  if (opt.props.empty()) throw InputError("missing --props");
  return Signature(opt.props);
}

// "explicit" and "implicit" replace the domain by its compatibility or
// behavioural equivalence domain.
Domain knowledge_view(Domain d, const std::string& knowledge) {
  if (knowledge == "explicit") return compatibility_domain(d);
  if (knowledge == "implicit") return behavioural_equivalence_domain(d);
  return d;
}

std::size_t resolve_state(const Domain& d, const std::string& id) { return id.empty() ? d.initial : d.state_index(id); }

int cmd_validate(const Options& opt, std::ostream& out) {
  const Domain d = load_domain(opt.domain);
  const auto problems = validate(d);
  if (opt.json) {
    ojson j = ojson::object();
    j["valid"] = problems.empty();
    j["diagnostics"] = problems;
    out << j.dump(2) << "\n";
  } else if (problems.empty()) {
    out << "valid: " << d.size() << " states, " << d.transition_count() << " transitions"
        << (d.deterministic ? ", deterministic" : "") << "\n";
  } else {
    for (const auto& p : problems) out << "invalid: " << p << "\n";
  }
  return problems.empty() ? ok : negative;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const Domain d = load_domain(opt.domain);
  const ExecutionTrace e = execute(d, resolve_state(d, opt.start), opt.actions);
  const ObservationTrace t = observe(d, e);
  if (opt.json) {
    ojson j = ojson::object();
    std::vector<std::string> ids;
    for (std::size_t s : e.states) ids.push_back(d.ids[s]);
    j["states"] = ids;
    j["actions"] = e.actions;
    j["trace"] = ojson::parse(traces_to_json({t}, d.props))[0];
    out << j.dump(2) << "\n";
    return ok;
  }
  std::string line;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    if (i) line += " " + e.actions[i - 1] + " ";
    line += d.ids[e.states[i]] + " (" + render_payload(d, e.states[i]) + ")";
  }
  out << "states: " << line << "\n";
  out << "observations: " << render_trace(t, d.props) << "\n";
  return ok;
}

int cmd_traces(const Options& opt, std::ostream& out) {
  const Domain d = load_domain(opt.domain);
  const auto traces = sound_complete_traces(d, opt.length, opt.budget);
  if (opt.json || !opt.out.empty()) {
    emit(opt, out, traces_to_json(traces, d.props));
  } else {
    for (const auto& t : traces) out << render_trace(t, d.props) << "\n";
  }
  return ok;
}

int cmd_learn_explicit(const Options& opt, std::ostream& out) {
  Signature props;
  std::vector<std::string> actions = opt.actions;
  std::vector<ObservedTransition> sigma;
  if (!opt.domain.empty()) {
    const Domain d = load_domain(opt.domain);
    props = d.props;
    actions.insert(actions.end(), d.actions.begin(), d.actions.end());
    sigma = sound_complete_transitions(d);
  } else if (!opt.sigma.empty()) {
    props = require_props(opt);
    sigma = transitions_from_json(read_file(opt.sigma), props);
    for (const auto& t : sigma) actions.push_back(t.action);
  } else {
    throw InputError("learn-explicit needs --sigma or --domain");
  }
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  emit(opt, out, event_models_to_json(learn_explicit(props, actions, sigma), props));
  return ok;
}

int cmd_learn_implicit(const Options& opt, std::ostream& out) {
  const Signature props = require_props(opt);
  if (opt.traces.empty()) throw InputError("missing --traces");
  const auto traces = traces_from_json(read_file(opt.traces), props);
  LearnOptions lo;
  lo.actions = opt.actions;
  lo.budget = opt.budget;
  if (opt.all) {
    const auto domains = learn_domains(props, traces, lo);
    std::string text = "[\n";
    for (std::size_t i = 0; i < domains.size(); ++i) {
      if (i) text += ",\n";
      text += domain_to_json(domains[i]);
      text.pop_back();
    }
    text += "\n]\n";
    emit(opt, out, domains.empty() ? "[]\n" : text);
    return ok;
  }
  emit(opt, out, domain_to_json(learn_implicit(props, traces, lo)));
  return ok;
}

int cmd_comp_domain(const Options& opt, std::ostream& out) {
  emit(opt, out, domain_to_json(compatibility_domain(load_domain(opt.domain))));
  return ok;
}

int cmd_beq_domain(const Options& opt, std::ostream& out) {
  emit(opt, out, domain_to_json(behavioural_equivalence_domain(load_domain(opt.domain))));
  return ok;
}

int cmd_bisim(const Options& opt, std::ostream& out) {
  const Domain a = load_domain(opt.a);
  const Domain b = load_domain(opt.b);
  if (opt.length) {
    const bool eq = trace_equivalent(a, b, *opt.length);
    out << (opt.json ? "{\"trace_equivalent\": " + bool_text(eq) + "}" : bool_text(eq)) << "\n";
    return eq ? ok : negative;
  }
  const auto w = obs_bisimilar(a, b);
  if (opt.json) {
    ojson j = ojson::object();
    j["bisimilar"] = w.has_value();
    ojson pairs = ojson::array();
    if (w) {
      for (const auto& [s, t] : w->pairs) pairs.push_back(ojson::array({a.ids[s], b.ids[t]}));
    }
    j["pairs"] = pairs;
    out << j.dump(2) << "\n";
  } else {
    out << bool_text(w.has_value()) << "\n";
  }
  return w ? ok : negative;
}

int cmd_iso(const Options& opt, std::ostream& out) {
  const Domain a = load_domain(opt.a);
  const Domain b = load_domain(opt.b);
  const auto w = isomorphic(a, b);
  if (opt.json) {
    ojson j = ojson::object();
    j["isomorphic"] = w.has_value();
    ojson map = ojson::object();
    if (w) {
      for (std::size_t s = 0; s < a.size(); ++s) map[a.ids[s]] = b.ids[w->map[s]];
    }
    j["map"] = map;
    out << j.dump(2) << "\n";
  } else {
    out << bool_text(w.has_value()) << "\n";
  }
  return w ? ok : negative;
}

int cmd_eval(const Options& opt, std::ostream& out) {
  if (opt.formula.empty()) throw InputError("missing --formula");
  bool result = false;
  if (!opt.domain.empty()) {
    const Domain d = knowledge_view(load_domain(opt.domain), opt.knowledge);
    const Formula f = parse_formula(opt.formula, BoxKind::action);
    result = eval_on_state(d, resolve_state(d, opt.state), f);
  } else if (!opt.model.empty()) {
    const Formula f = parse_formula(opt.formula, BoxKind::event);
    std::optional<Signature> props;
    if (!opt.props.empty()) props = Signature(opt.props);
    std::vector<std::string> ids;
    const EpistemicModel m = epistemic_model_from_json(read_file(opt.model), props, &ids);
    const EventModels env = opt.events.empty() ? EventModels{} : event_models_from_json(read_file(opt.events), m.props);
    if (opt.world.empty()) {
      result = eval_global(m, f, env);
    } else {
      const auto it = std::find(ids.begin(), ids.end(), opt.world);
      if (it == ids.end()) throw InputError("unknown world '" + opt.world + "'");
      result = eval(m, static_cast<std::size_t>(it - ids.begin()), f, env);
    }
  } else {
    throw InputError("eval needs --model or --domain");
  }
  out << (opt.json ? "{\"value\": " + bool_text(result) + "}" : bool_text(result)) << "\n";
  return result ? ok : negative;
}

int cmd_plan(const Options& opt, std::ostream& out) {
  const Domain d = knowledge_view(load_domain(opt.domain), opt.knowledge);
  if (opt.goal.empty()) throw InputError("missing --goal");
  const Formula goal = parse_formula(opt.goal, BoxKind::action);
  const auto p = plan(d, resolve_state(d, opt.start), goal, opt.horizon);
  if (!p) {
    out << (opt.json ? "null" : "no plan") << "\n";
    return negative;
  }
  out << ojson(*p).dump() << "\n";
  if (!opt.json) {
    std::string line;
    for (const auto& a : *p) line += (line.empty() ? "" : ", ") + a;
    out << "plan (" << p->size() << " steps): " << (line.empty() ? "(empty)" : line) << "\n";
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn partially observable deterministic domains with dynamic epistemic logic", "delearn"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "Machine-readable output");
    sub->add_option("--out", opt.out, "Write the result to this file");
  };
  auto add_domain = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--domain", opt.domain, "Domain JSON file");
    if (required) o->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the domain conditions");
  add_domain(validate_cmd, true);
  add_common(validate_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run an action sequence and print its observations");
  add_domain(simulate_cmd, true);
  simulate_cmd->add_option("--actions", opt.actions, "Comma-separated actions")->delimiter(',');
  simulate_cmd->add_option("--start", opt.start, "Start state id (default: initial)");
  add_common(simulate_cmd);

  auto* traces_cmd = app.add_subcommand("traces", "All observation traces of a given length");
  add_domain(traces_cmd, true);
  traces_cmd->add_option("--length", opt.length, "Actions per trace (default 2^(2|P|))");
  traces_cmd->add_option("--budget", opt.budget, "Maximum number of traces");
  add_common(traces_cmd);

  auto* explicit_cmd = app.add_subcommand("learn-explicit", "Learn one event model per action");
  add_domain(explicit_cmd, false);
  explicit_cmd->add_option("--sigma", opt.sigma, "Observed transitions JSON file");
  explicit_cmd->add_option("--props", opt.props, "Comma-separated propositions")->delimiter(',');
  explicit_cmd->add_option("--actions", opt.actions, "Additional actions")->delimiter(',');
  add_common(explicit_cmd);

  auto* implicit_cmd = app.add_subcommand("learn-implicit", "Learn the behavioural equivalence domain");
  implicit_cmd->add_option("--props", opt.props, "Comma-separated propositions")->delimiter(',')->required();
  implicit_cmd->add_option("--traces", opt.traces, "Observation traces JSON file")->required();
  implicit_cmd->add_option("--actions", opt.actions, "Additional actions")->delimiter(',');
  implicit_cmd->add_option("--budget", opt.budget, "Search budget");
  implicit_cmd->add_flag("--all", opt.all, "Print every learned domain instead of their composition");
  add_common(implicit_cmd);

  auto* comp_cmd = app.add_subcommand("comp-domain", "Compatibility domain");
  add_domain(comp_cmd, true);
  add_common(comp_cmd);

  auto* beq_cmd = app.add_subcommand("beq-domain", "Behavioural equivalence domain");
  add_domain(beq_cmd, true);
  add_common(beq_cmd);

  auto* bisim_cmd = app.add_subcommand("bisim", "Observational bisimilarity of two domains");
  bisim_cmd->add_option("--a", opt.a, "First domain")->required();
  bisim_cmd->add_option("--b", opt.b, "Second domain")->required();
  bisim_cmd->add_option("--length", opt.length, "Compare observation traces up to this many actions instead");
  add_common(bisim_cmd);

  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism of two domains");
  iso_cmd->add_option("--a", opt.a, "First domain")->required();
  iso_cmd->add_option("--b", opt.b, "Second domain")->required();
  add_common(iso_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula");
  eval_cmd->add_option("--formula", opt.formula, "Formula text")->required();
  eval_cmd->add_option("--model", opt.model, "Epistemic model JSON file");
  eval_cmd->add_option("--events", opt.events, "Event models JSON file");
  eval_cmd->add_option("--world", opt.world, "World id (default: every world)");
  eval_cmd->add_option("--props", opt.props, "Signature for the model")->delimiter(',');
  add_domain(eval_cmd, false);
  eval_cmd->add_option("--state", opt.state, "State id (default: initial)");
  eval_cmd->add_option("--knowledge", opt.knowledge, "Evaluate on the domain itself, its explicit or its implicit knowledge")
      ->check(CLI::IsMember({"state", "explicit", "implicit"}));
  add_common(eval_cmd);

  auto* plan_cmd = app.add_subcommand("plan", "Shortest plan reaching a goal");
  add_domain(plan_cmd, true);
  plan_cmd->add_option("--start", opt.start, "Start state id (default: initial)");
  plan_cmd->add_option("--goal", opt.goal, "Goal formula")->required();
  plan_cmd->add_option("--horizon", opt.horizon, "Maximum plan length");
  plan_cmd->add_option("--knowledge", opt.knowledge, "Plan over the domain itself, its explicit or its implicit knowledge")
      ->check(CLI::IsMember({"state", "explicit", "implicit"}));
  add_common(plan_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt, out);
    if (simulate_cmd->parsed()) return cmd_simulate(opt, out);
    if (traces_cmd->parsed()) return cmd_traces(opt, out);
    if (explicit_cmd->parsed()) return cmd_learn_explicit(opt, out);
    if (implicit_cmd->parsed()) return cmd_learn_implicit(opt, out);
    if (comp_cmd->parsed()) return cmd_comp_domain(opt, out);
    if (beq_cmd->parsed()) return cmd_beq_domain(opt, out);
    if (bisim_cmd->parsed()) return cmd_bisim(opt, out);
    if (iso_cmd->parsed()) return cmd_iso(opt, out);
    if (eval_cmd->parsed()) return cmd_eval(opt, out);
    if (plan_cmd->parsed()) return cmd_plan(opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  err << "error: no command\n";
  return input_error;
}

}  // namespace delearn::cli
