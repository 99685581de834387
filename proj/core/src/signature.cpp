#include "delearn/signature.hpp"

#include <algorithm>
#include <cctype>

namespace delearn {

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  const auto head = static_cast<unsigned char>(text.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u == '\'';
  });
}

Signature::Signature(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InputError("invalid proposition name '" + n + "'");
    if (n == "K" || n == "Kw" || n == "true" || n == "false") {
      throw InputError("proposition name '" + n + "' is reserved");
    }
  }
  if (names_.size() > max_size) throw InputError("signature exceeds 31 propositions");
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Signature::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown proposition '" + std::string(name) + "'");
}

std::uint32_t Signature::mask_of(const std::vector<std::string>& names) const {
  std::uint32_t mask = 0;
  for (const auto& n : names) mask |= 1u << index(n);
  return mask;
}

std::vector<std::string> Signature::names_of(std::uint32_t mask) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if ((mask >> i) & 1u) out.push_back(names_[i]);
  }
  return out;
}

std::vector<Valuation> all_valuations(const Signature& sig) {
  std::vector<Valuation> out;
  const std::uint64_t count = std::uint64_t{1} << sig.size();
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t b = 0; b < count; ++b) out.push_back(Valuation{static_cast<std::uint32_t>(b)});
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_valuation(Valuation v, const Signature& sig) {
  if (sig.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ' ';
    if (!v.holds(i)) out += '~';
    out += sig.name(i);
  }
  return out;
}

Valuation parse_valuation(std::string_view text, const Signature& sig) {
  Valuation v;
  std::size_t i = 0;
  bool negated = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == ',' || c == '\t') {
      if (negated) throw InputError("dangling '~' in state literal '" + std::string(text) + "'");
      ++i;
      continue;
    }
    if (c == '~' || c == '!') {
      negated = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '~' && text[j] != '\t' &&
           text[j] != '!') {
      ++j;
    }
    const std::string_view name = text.substr(i, j - i);
    if (name == "true" && !negated) {
      i = j;
      continue;
    }
    const std::size_t idx = sig.index(name);
    if (!negated) v.bits |= 1u << idx;
    negated = false;
    i = j;
  }
  if (negated) throw InputError("dangling '~' in state literal '" + std::string(text) + "'");
  return v;
}

}  // namespace delearn
