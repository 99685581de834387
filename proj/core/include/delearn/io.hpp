#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delearn/domain.hpp"
#include "delearn/epistemic.hpp"
#include "delearn/implicit_learner.hpp"
#include "delearn/traces.hpp"

namespace delearn {

/// JSON readers throw InputError on malformed input; writers produce
/// pretty-printed JSON with a fixed key order, ending in a newline.

using EventModels = std::map<std::string, EventModel, std::less<>>;

/// {"props", "actions", "states":[{"id","kind","val"}], "initial",
///  "transitions":[[from, action, to]], "obs":{id:{"pos","neg"}},
///  "deterministic"}. Valuations are literal strings ("p ~q") or lists of
/// true propositions.
Domain domain_from_json(const std::string& text);
std::string domain_to_json(const Domain& d);

/// {"worlds":[{"id","val"}], "partition":[[ids]], "props"?}. Without a
/// "props" field the signature is `props`, or else the propositions the
/// worlds mention.
/// When `ids` is given it receives the world ids in world order.
EpistemicModel epistemic_model_from_json(const std::string& text, const std::optional<Signature>& props = {},
                                         std::vector<std::string>* ids = nullptr);
std::string epistemic_model_to_json(const EpistemicModel& m);

/// Either {"props", "models":{name: model}} or a single model
/// {"events":[{"id","pre","post":{p:"T"|"F"|"keep"}}], "partition", "name"?}
/// whose name defaults to "E". Propositions missing from a post are kept.
EventModels event_models_from_json(const std::string& text, const std::optional<Signature>& props = {});
std::string event_models_to_json(const EventModels& models, const Signature& props);

/// Array of traces, each alternating {"pos","neg"} objects and action names.
std::vector<ObservationTrace> traces_from_json(const std::string& text, const Signature& props);
std::string traces_to_json(const std::vector<ObservationTrace>& traces, const Signature& props);

/// Array of {"from":{"pos","neg"}, "action", "to":{"pos","neg"}}.
std::vector<ObservedTransition> transitions_from_json(const std::string& text, const Signature& props);
std::string transitions_to_json(const std::vector<ObservedTransition>& sigma, const Signature& props);

std::string histories_to_json(const std::vector<History>& hs, const Signature& props);

/// Whole-file read; throws InputError if the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace delearn
