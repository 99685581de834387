#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "delearn/domain.hpp"

namespace delearn {

/// State bijection: `map[s]` is the image of state s of the first domain.
struct IsoWitness {
  std::vector<std::size_t> map;
};

/// Reachable pairs of an observational bisimulation, sorted.
struct BisimWitness {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Isomorphism of shape and observations; state payloads are ignored.
/// Domains with different signatures or action sets are never isomorphic.
std::optional<IsoWitness> isomorphic(const Domain& a, const Domain& b);

/// Observational bisimulation between deterministic domains, by exploring
/// the product from the initial pair. Throws DomainError on
/// non-deterministic input or mismatched signatures/actions.
std::optional<BisimWitness> obs_bisimilar(const Domain& a, const Domain& b);

/// Compares the observation traces of every action sequence of at most
/// `max_actions` actions. Throws DomainError on non-deterministic input.
bool trace_equivalent(const Domain& a, const Domain& b, std::size_t max_actions);

/// Tuple-state product stepping every component with the same action.
/// Components must have valuation states. Throws DomainError when the
/// components disagree on an observation.
Domain sync_compose(const std::vector<Domain>& domains);

struct EnumerationLimits {
  std::size_t max_props = 2;
  std::size_t max_actions = 2;
};

/// Every deterministic, generated, noiseless valuation domain over the
/// signature and actions of `d` that is observationally bisimilar to `d`,
/// sorted by domain_order_key.
std::vector<Domain> enumerate_bisimilar(const Domain& d, const EnumerationLimits& limits = {});

/// Breadth-first encoding of a deterministic domain (actions in sorted
/// order) including payloads and observations. Equal keys mean equal
/// domains up to state numbering; key order is the canonical domain order.
std::vector<std::uint64_t> domain_order_key(const Domain& d);

/// Same encoding without payloads: equal for isomorphic deterministic
/// domains.
std::vector<std::uint64_t> shape_key(const Domain& d);

/// Sorts by domain_order_key and removes duplicates.
void sort_domains(std::vector<Domain>& domains);

bool same_domain(const Domain& a, const Domain& b);

/// Synchronous composition of every domain bisimilar to `d`.
Domain behavioural_equivalence_domain(const Domain& d, const EnumerationLimits& limits = {});

}  // namespace delearn
