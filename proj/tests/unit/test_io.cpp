#include <doctest.h>

#include <random>

#include "delearn/equivalence.hpp"
#include "delearn/explicit_learner.hpp"
#include "delearn/io.hpp"
#include "fixtures.hpp"

using namespace delearn;

namespace {

std::string data(const std::string& name) { return read_file(std::string(DELEARN_DATA_DIR) + "/" + name); }

void check_round_trip(const Domain& d) {
  const std::string text = domain_to_json(d);
  const Domain back = domain_from_json(text);
  CHECK(domain_to_json(back) == text);
  CHECK(back.ids == d.ids);
  CHECK(back.obs == d.obs);
  CHECK(back.succ == d.succ);
  CHECK(back.states == d.states);
  CHECK(back.initial == d.initial);
  CHECK(back.deterministic == d.deterministic);
}

}  // namespace

TEST_CASE("data files load as the fixtures") {
  CHECK(same_domain(domain_from_json(data("light_switch.json")), fixtures::light_switch()));
  CHECK(same_domain(domain_from_json(data("door.json")), fixtures::door()));
  CHECK(same_domain(domain_from_json(data("door_d1.json")), fixtures::door_bisimilar()[0]));
  CHECK(same_domain(domain_from_json(data("door_broken.json")), fixtures::door_broken()));
  CHECK(same_domain(domain_from_json(data("box.json")), fixtures::box()));
  const Signature pq({"p", "q"});
  CHECK(traces_from_json(data("door_trace.json"), pq) == std::vector<ObservationTrace>{fixtures::door_trace()});
  const auto sigma = transitions_from_json(data("light_switch_sigma.json"), Signature({"l", "r", "s"}));
  CHECK(sigma == sound_complete_transitions(fixtures::light_switch(false)));
  CHECK(epistemic_model_from_json(data("coin_model.json")) == fixtures::coin_model());
  const auto models = event_models_from_json(data("coin_toss.json"));
  REQUIRE(models.count("E") == 1);
  CHECK(models.at("E").events.size() == 2);
  CHECK(models.at("E").partition == fixtures::coin_toss().partition);
}

TEST_CASE("domains of every state kind round-trip") {
  check_round_trip(fixtures::light_switch());
  check_round_trip(fixtures::light_switch(false));
  check_round_trip(compatibility_domain(fixtures::light_switch()));
  check_round_trip(sync_compose(fixtures::door_bisimilar()));
  check_round_trip(induced_domain({{"E", fixtures::coin_toss()}}, fixtures::coin_model()));
  std::mt19937 rng(101);
  for (int i = 0; i < 100; ++i) check_round_trip(fixtures::random_domain(rng, 3, 6, 2));
}

TEST_CASE("models, traces and transitions round-trip") {
  std::mt19937 rng(103);
  const Signature sig({"p", "q", "r"});
  for (int i = 0; i < 50; ++i) {
    const EpistemicModel m = fixtures::random_model(rng, sig, 5);
    CHECK(epistemic_model_from_json(epistemic_model_to_json(m)) == m);
    const EventModels env{{"E", fixtures::random_event_model(rng, sig, 4)}};
    const std::string text = event_models_to_json(env, sig);
    CHECK(event_models_to_json(event_models_from_json(text), sig) == text);
    const Domain d = fixtures::random_domain(rng, 3, 6, 2);
    const auto ts = sound_complete_traces(d, 3);
    CHECK(traces_from_json(traces_to_json(ts, d.props), d.props) == ts);
    const auto sigma = sound_complete_transitions(d);
    CHECK(transitions_from_json(transitions_to_json(sigma, d.props), d.props) == sigma);
  }
}

TEST_CASE("learned event models survive serialisation") {
  const Domain d = fixtures::light_switch();
  const auto models = learn_explicit(d.props, d.actions, sound_complete_transitions(d));
  const EventModels env(models.begin(), models.end());
  const EventModels back = event_models_from_json(event_models_to_json(env, d.props));
  const Domain c = compatibility_domain(d);
  const Domain induced = induced_domain(back, induced_epistemic_model(c, c.initial));
  CHECK(isomorphic(induced, c).has_value());
}

TEST_CASE("domain JSON accepts inline and string observations") {
  const std::string text = R"({
    "props": ["p"], "actions": ["a"],
    "states": [{"id": "x", "val": "p", "obs": "p"}, {"id": "y", "val": [], "obs": {"pos": [], "neg": []}}],
    "initial": "x", "transitions": [["x", "a", "y"], ["y", "a", "x"]]
  })";
  const Domain d = domain_from_json(text);
  CHECK(d.size() == 2);
  CHECK(d.obs[0] == Observation{1, 0});
  CHECK(d.obs[1] == Observation{});
  CHECK(validate(d).empty());
}

TEST_CASE("malformed JSON is an input error") {
  CHECK_THROWS_AS(domain_from_json("{"), InputError);
  CHECK_THROWS_AS(domain_from_json("{}"), InputError);
  CHECK_THROWS_AS(domain_from_json(R"({"props": ["p"], "actions": [], "states": [], "initial": "x",
                                      "transitions": []})"),
                  InputError);
  CHECK_THROWS_AS(domain_from_json(R"({"props": ["p"], "actions": ["a"],
      "states": [{"id": "x", "val": "p", "obs": "p"}], "initial": "x", "transitions": [["x", "a"]]})"),
                  InputError);
  CHECK_THROWS_AS(domain_from_json(R"({"props": ["p"], "actions": ["a"],
      "states": [{"id": "x", "val": "p", "obs": "p"}, {"id": "x", "val": "~p", "obs": "true"}],
      "initial": "x", "transitions": []})"),
                  InputError);
  CHECK_THROWS_AS(event_models_from_json(R"({"props": ["h"], "events": [{"id": "e", "pre": "true",
      "post": {"h": "maybe"}}]})"),
                  InputError);
  CHECK_THROWS_AS(traces_from_json(R"([["a"]])", Signature({"p"})), InputError);
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), InputError);
}
