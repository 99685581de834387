#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delearn {

/// Raised for malformed input: bad names, unknown propositions, parse errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite, sorted set of proposition names. Proposition i is bit i of a
/// Valuation or Observation mask.
class Signature {
 public:
  static constexpr std::size_t max_size = 31;

  Signature() = default;
  explicit Signature(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InputError if the name is not in the signature.
  std::size_t index(std::string_view name) const;

  std::uint32_t full_mask() const {
    return size() == 0 ? 0u : (size() == 32 ? ~0u : ((1u << size()) - 1u));
  }
  std::uint32_t mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(std::uint32_t mask) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_identifier(std::string_view text);

/// A propositional state: the set of true propositions, as a bitmask over a
/// Signature.
///
/// Valuations are totally ordered by their literal sequence in signature
/// order, with a positive literal before the negative one: over {p,q} the
/// order is pq < p~q < ~pq < ~p~q.
struct Valuation {
  std::uint32_t bits = 0;

  bool holds(std::size_t prop) const { return (bits >> prop) & 1u; }

  friend bool operator==(Valuation, Valuation) = default;
  friend std::strong_ordering operator<=>(Valuation a, Valuation b) {
    const std::uint32_t diff = a.bits ^ b.bits;
    if (diff == 0) return std::strong_ordering::equal;
    const std::uint32_t lowest = diff & (~diff + 1u);
    return (a.bits & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

/// Every valuation over `sig`, in canonical order.
std::vector<Valuation> all_valuations(const Signature& sig);

/// Literal-sequence rendering, e.g. "p ~q r". Empty signature renders "true".
std::string render_valuation(Valuation v, const Signature& sig);

/// Parses "p ~q r", "p~q r" or "p,~q". Propositions not mentioned are false.
Valuation parse_valuation(std::string_view text, const Signature& sig);

}  // namespace delearn
