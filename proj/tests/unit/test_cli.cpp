#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "delearn/equivalence.hpp"
#include "delearn/io.hpp"
#include "fixtures.hpp"

using namespace delearn;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DELEARN_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("validate") {
  const auto r = run({"validate", "--domain", data("light_switch.json")});
  CHECK(r.code == cli::ok);
  CHECK(r.out == "valid: 4 states, 8 transitions, deterministic\n");
  const auto j = run({"validate", "--domain", data("door.json"), "--json"});
  CHECK(j.out.find("\"valid\": true") != std::string::npos);
}

TEST_CASE("simulate") {
  const auto r = run({"simulate", "--domain", data("light_switch.json"), "--actions", "flip,move"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("observations: [~r ~s] flip [~r s] move [l r]") != std::string::npos);
  CHECK(run({"simulate", "--domain", data("light_switch.json"), "--actions", "jump"}).code == cli::input_error);
}

TEST_CASE("traces") {
  const auto r = run({"traces", "--domain", data("door.json"), "--length", "4"});
  CHECK(r.out == "[q] a [q] a [~q] a [q] a [q]\n");
  const auto j = run({"traces", "--domain", data("door.json"), "--json"});
  const auto ts = traces_from_json(j.out, Signature({"p", "q"}));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].length() == 16);
}

TEST_CASE("learn-explicit from a domain and from observed transitions agree") {
  const auto a = run({"learn-explicit", "--domain", data("light_switch.json")});
  const auto b = run({"learn-explicit", "--sigma", data("light_switch_sigma.json"), "--props", "l,r,s",
                      "--actions", "flip,move"});
  CHECK(a.code == cli::ok);
  CHECK(b.code == cli::ok);
  const auto ma = event_models_from_json(a.out);
  const auto mb = event_models_from_json(b.out);
  CHECK(ma.at("move").events.size() == mb.at("move").events.size());
  // The eight-edge domain adds the flip self-loops as two more components.
  CHECK(ma.at("flip").partition.size() == 4);
  CHECK(mb.at("flip").partition.size() == 2);
  CHECK(run({"learn-explicit", "--props", "l"}).code == cli::input_error);
}

TEST_CASE("learn-implicit") {
  const auto r = run({"learn-implicit", "--props", "p,q", "--traces", data("door_trace.json")});
  REQUIRE(r.code == cli::ok);
  const Domain g = domain_from_json(r.out);
  CHECK(same_domain(g, sync_compose(fixtures::door_bisimilar())));
  const auto all = run({"learn-implicit", "--props", "p,q", "--traces", data("door_trace.json"), "--all"});
  CHECK(all.out.find("\"kind\": \"val\"") != std::string::npos);
  CHECK(run({"learn-implicit", "--traces", data("door_trace.json")}).code == cli::input_error);
}

TEST_CASE("comp-domain and beq-domain") {
  const auto c = run({"comp-domain", "--domain", data("box.json")});
  CHECK(same_domain(domain_from_json(c.out), compatibility_domain(fixtures::box())));
  const auto b = run({"beq-domain", "--domain", data("door.json")});
  CHECK(same_domain(domain_from_json(b.out), sync_compose(fixtures::door_bisimilar())));
}

TEST_CASE("bisim and iso exit codes") {
  CHECK(run({"bisim", "--a", data("door.json"), "--b", data("door_d1.json")}).code == cli::ok);
  CHECK(run({"bisim", "--a", data("door.json"), "--b", data("door_broken.json")}).code == cli::negative);
  CHECK(run({"bisim", "--a", data("door.json"), "--b", data("door_broken.json"), "--length", "2"}).code == cli::ok);
  CHECK(run({"iso", "--a", data("door.json"), "--b", data("door_d1.json")}).code == cli::ok);
  CHECK(run({"iso", "--a", data("door.json"), "--b", data("box.json")}).code == cli::negative);
  const auto j = run({"iso", "--a", data("door.json"), "--b", data("door_d1.json"), "--json"});
  CHECK(j.out.find("\"isomorphic\": true") != std::string::npos);
}

TEST_CASE("eval") {
  CHECK(run({"eval", "--model", data("coin_model.json"), "--events", data("coin_toss.json"), "--formula",
             "K(h & ~[E]h & ~[E]~h & [E](K h | K ~h))"})
            .out == "true\n");
  CHECK(run({"eval", "--model", data("coin_model.json"), "--formula", "K ~h"}).code == cli::negative);
  CHECK(run({"eval", "--model", data("coin_model.json"), "--formula", "h", "--world", "w"}).code == cli::ok);
  CHECK(run({"eval", "--model", data("coin_model.json"), "--formula", "h", "--world", "v"}).code ==
        cli::input_error);
  CHECK(run({"eval", "--domain", data("box.json"), "--formula", "K ~p", "--knowledge", "implicit"}).code == cli::ok);
  CHECK(run({"eval", "--domain", data("box.json"), "--formula", "K ~p", "--knowledge", "explicit"}).code ==
        cli::negative);
  CHECK(run({"eval", "--domain", data("door.json"), "--formula", "p &"}).code == cli::input_error);
  CHECK(run({"eval", "--formula", "p"}).code == cli::input_error);
}

TEST_CASE("plan") {
  const auto r = run({"plan", "--domain", data("light_switch.json"), "--goal", "K l", "--knowledge", "explicit"});
  CHECK(r.out == "[\"flip\",\"move\"]\nplan (2 steps): flip, move\n");
  const auto j = run({"plan", "--domain", data("light_switch.json"), "--goal", "l", "--knowledge", "explicit",
                      "--json"});
  CHECK(j.out == "[\"flip\",\"move\"]\n");
  CHECK(run({"plan", "--domain", data("door.json"), "--goal", "p & ~q"}).code == cli::negative);
  CHECK(run({"plan", "--domain", data("door.json"), "--goal", "q", "--horizon", "0"}).code == cli::input_error);
  CHECK(run({"plan", "--domain", data("door.json"), "--goal", "q", "--knowledge", "psychic"}).code ==
        cli::input_error);
}

TEST_CASE("--out writes the artifact to a file") {
  const auto path = std::filesystem::temp_directory_path() / "delearn_cli_out.json";
  const auto r = run({"comp-domain", "--domain", data("door.json"), "--out", path.string()});
  CHECK(r.code == cli::ok);
  CHECK(r.out.empty());
  CHECK(validate(domain_from_json(read_file(path.string()))).empty());
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::input_error);
  CHECK(run({"frobnicate"}).code == cli::input_error);
  CHECK(run({"validate"}).code == cli::input_error);
  CHECK(run({"validate", "--domain", data("missing.json")}).code == cli::input_error);
  const auto h = run({"--help"});
  CHECK(h.code == cli::ok);
  CHECK(h.out.find("learn-implicit") != std::string::npos);
}
