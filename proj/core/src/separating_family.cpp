#include "pseudolinear/separating_family.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pseudolinear/errors.hpp"
#include "pseudolinear/rng.hpp"

namespace pseudolinear {

namespace {

// Signature of element u: bit i set iff u is in S_i.
std::vector<BitVector> signatures(const SeparatingFamily& family) {
  std::vector<BitVector> sig(family.universe_size, BitVector(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) {
    const BitVector& s = family.subsets[i];
    for (std::size_t u = s.find_first(); u < s.size(); ++u) {
      if (s.test(u)) sig[u].set(i);
    }
  }
  return sig;
}

void validate(const SeparatingFamily& family) {
  for (const BitVector& s : family.subsets) {
    if (s.size() != family.universe_size) throw InvalidArgument("subset mask length differs from universe size");
  }
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> find_unseparated_pair(const SeparatingFamily& family,
                                                                              double guard) {
  validate(family);
  const double u = static_cast<double>(family.universe_size);
  const double required = u * (u - 1.0) * static_cast<double>(family.size());
  if (required > guard) throw GuardExceeded("separation check too large", required, guard);
  if (family.universe_size < 2) return std::nullopt;

  const std::vector<BitVector> sig = signatures(family);
  const std::size_t stride = BitVector::word_count(family.size());
  for (std::size_t a = 0; a < family.universe_size; ++a) {
    const auto wa = sig[a].words();
    for (std::size_t b = 0; b < family.universe_size; ++b) {
      if (a == b) continue;
      const auto wb = sig[b].words();
      bool separated = false;
      for (std::size_t w = 0; w < stride && !separated; ++w) separated = (wa[w] & ~wb[w]) != 0;
      if (!separated) return std::pair<std::uint64_t, std::uint64_t>{a, b};
    }
  }
  return std::nullopt;
}

bool verify(const SeparatingFamily& family, double guard) { return !find_unseparated_pair(family, guard); }

std::variant<SeparatingFamily, SeparationFailure> build_random(std::size_t universe_size, std::size_t count,
                                                               std::uint64_t seed, double guard) {
  SeparatingFamily family;
  family.universe_size = universe_size;
  family.subsets.reserve(count);
  Rng rng(derive_seed(seed, streams::kFamily, 0));
  for (std::size_t i = 0; i < count; ++i) family.subsets.push_back(random_bits(rng, universe_size));
  if (const auto pair = find_unseparated_pair(family, guard)) {
    return SeparationFailure{std::move(family), pair->first, pair->second};
  }
  return family;
}

SeparatingFamily build_deterministic(unsigned message_bits) {
  if (message_bits == 0 || message_bits > 24) throw InvalidArgument("build_deterministic needs 1 <= Rn <= 24");
  const std::size_t universe = std::size_t{1} << message_bits;
  SeparatingFamily family;
  family.universe_size = universe;
  family.subsets.assign(2 * message_bits, BitVector(universe));
  for (std::size_t u = 0; u < universe; ++u) {
    for (unsigned i = 0; i < message_bits; ++i) {
      family.subsets[((u >> i) & 1U) ? i : message_bits + i].set(u);
    }
  }
  return family;
}

double failure_bound(unsigned message_bits, std::size_t count) {
  const double log2_bound = 2.0 * message_bits + static_cast<double>(count) * std::log2(0.75);
  return std::exp2(log2_bound);
}

void write_family(std::ostream& out, const SeparatingFamily& family) {
  validate(family);
  out << "separating-family v1\n";
  out << "U " << family.universe_size << '\n';
  out << "S " << family.size() << '\n';
  for (const BitVector& s : family.subsets) out << s.to_hex() << '\n';
}

SeparatingFamily read_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "separating-family v1") throw ParseError("not a separating family file");
  auto read_count = [&](const char* key) {
    if (!std::getline(in, line)) throw ParseError(std::string("family file truncated before ") + key);
    std::istringstream ls(line);
    std::string got;
    std::size_t value = 0;
    if (!(ls >> got >> value) || got != key) throw ParseError(std::string("expected '") + key + "' line");
    return value;
  };
  SeparatingFamily family;
  family.universe_size = read_count("U");
  const std::size_t count = read_count("S");
  family.subsets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ParseError("family file truncated inside subsets");
    if (family.universe_size == 0 && line.empty()) {
      family.subsets.emplace_back(0);
      continue;
    }
    family.subsets.push_back(BitVector::from_hex(line, family.universe_size));
  }
  return family;
}

}  // namespace pseudolinear
