#include "pseudolinear/plcode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "pseudolinear/errors.hpp"
#include "pseudolinear/independence_lab.hpp"
#include "pseudolinear/rng.hpp"

namespace pseudolinear {

std::string_view to_string(MessageMode mode) {
  return mode == MessageMode::ZeroFree ? "zero-free" : "paper-faithful";
}

MessageMode parse_message_mode(std::string_view text) {
  if (text == "zero-free") return MessageMode::ZeroFree;
  if (text == "paper-faithful") return MessageMode::PaperFaithful;
  throw InvalidArgument("unknown message mode '" + std::string(text) + "'");
}

namespace {

void validate_code_parameters(std::size_t n, unsigned message_bits, unsigned k, bool rate_at_most_one = true) {
  if (n == 0) throw InvalidArgument("blocklength n must be positive");
  if (rate_at_most_one && message_bits > n) throw InvalidArgument("Rn must not exceed n");
  if (message_bits < FiniteField::kMinWidth || message_bits > FiniteField::kMaxWidth) {
    throw InvalidArgument("Rn must be in [2, 16]");
  }
  if (k < 2) throw InvalidArgument("k must be at least 2");
  if (k > (1U << message_bits) - 1) throw InvalidArgument("k must not exceed 2^Rn - 1");
}

}  // namespace

PseudolinearCode::PseudolinearCode(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode,
                                   BitMatrix generator, std::optional<std::uint64_t> seed,
                                   std::optional<std::uint32_t> polynomial)
    : n_(n),
      message_bits_(message_bits),
      mode_(mode),
      seed_(seed),
      parity_((validate_code_parameters(n, message_bits, k), message_bits), k, polynomial),
      generator_(std::move(generator)) {
  if (generator_.rows() != n_ || generator_.cols() != parity_.rows()) {
    throw InvalidArgument("generator must be n x (k * Rn)");
  }
}

Message PseudolinearCode::message_at(std::uint64_t position) const {
  if (position >= message_count()) throw InvalidArgument("message position out of range");
  return first_message() + position;
}

std::uint64_t PseudolinearCode::position_of(Message u) const {
  if (!contains(u)) throw InvalidArgument("message " + std::to_string(u) + " is not in the message set");
  return u - first_message();
}

BitVector PseudolinearCode::encode(Message u) const {
  if (!contains(u)) throw InvalidArgument("message " + std::to_string(u) + " is not in the message set");
  return mat_vec_mul(generator_, parity_.column(u));
}

PseudolinearCode sample_code(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode,
                             std::uint64_t seed, std::optional<std::uint32_t> polynomial) {
  validate_code_parameters(n, message_bits, k);
  const std::size_t m = static_cast<std::size_t>(k) * message_bits;
  Rng rng(derive_seed(seed, streams::kGenerator, 0));
  std::vector<BitVector> rows;
  rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) rows.push_back(random_bits(rng, m));
  return PseudolinearCode(n, message_bits, k, mode, BitMatrix::from_rows(std::move(rows), m), seed, polynomial);
}

Codebook::Codebook(PseudolinearCode code, std::uint64_t guard)
    : code_(std::move(code)), stride_(BitVector::word_count(code_.n())) {
  const double required = std::ldexp(1.0, static_cast<int>(code_.message_bits()));
  if (required > static_cast<double>(guard)) {
    throw GuardExceeded("codebook too large to enumerate", required, static_cast<double>(guard));
  }
  const std::uint64_t count = code_.message_count();
  messages_.reserve(count);
  codewords_.reserve(count);
  packed_.reserve(count * stride_);
  for (std::uint64_t pos = 0; pos < count; ++pos) {
    const Message u = code_.message_at(pos);
    messages_.push_back(u);
    codewords_.push_back(code_.encode(u));
    const auto w = codewords_.back().words();
    packed_.insert(packed_.end(), w.begin(), w.end());
  }
}

Message Codebook::decode(const BitVector& y) const {
  if (y.size() != code_.n()) throw InvalidArgument("received word has wrong length");
  const auto yw = y.words();
  std::size_t best_pos = 0;
  std::size_t best = SIZE_MAX;
  for (std::size_t pos = 0; pos < messages_.size(); ++pos) {
    const std::size_t d = hamming_distance(words(pos), yw);
    if (d < best) {
      best = d;
      best_pos = pos;
      if (d == 0) break;
    }
  }
  return messages_[best_pos];
}

std::size_t Codebook::minimum_distance() const {
  std::size_t best = code_.n() + 1;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) best = std::min(best, hamming_distance(words(a), words(b)));
  }
  return best;
}

std::vector<std::pair<Message, BitVector>> codebook(const PseudolinearCode& code, std::uint64_t guard) {
  const double required = std::ldexp(1.0, static_cast<int>(code.message_bits()));
  if (required > static_cast<double>(guard)) {
    throw GuardExceeded("codebook too large to enumerate", required, static_cast<double>(guard));
  }
  std::vector<std::pair<Message, BitVector>> out;
  out.reserve(code.message_count());
  for (std::uint64_t pos = 0; pos < code.message_count(); ++pos) {
    const Message u = code.message_at(pos);
    out.emplace_back(u, code.encode(u));
  }
  return out;
}

Message min_distance_decode(const PseudolinearCode& code, const BitVector& y) {
  if (y.size() != code.n()) throw InvalidArgument("received word has wrong length");
  Message best_u = code.first_message();
  std::size_t best = SIZE_MAX;
  for (std::uint64_t pos = 0; pos < code.message_count(); ++pos) {
    const Message u = code.message_at(pos);
    const std::size_t d = hamming_distance(code.encode(u), y);
    if (d < best) {
      best = d;
      best_u = u;
    }
  }
  return best_u;
}

std::uint64_t CodewordHistogram::count(std::uint64_t outcome) const {
  const auto it = counts.find(outcome);
  return it == counts.end() ? 0 : it->second;
}

JointDistribution CodewordHistogram::to_distribution() const {
  std::vector<std::pair<std::uint64_t, double>> table;
  table.reserve(counts.size());
  for (const auto& [outcome, c] : counts) {
    table.emplace_back(outcome, static_cast<double>(c) / static_cast<double>(total));
  }
  return JointDistribution::bipartite(messages.size(), n, std::move(table));
}

CodewordHistogram joint_codeword_distribution(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode,
                                              std::span<const Message> messages, double guard) {
  // The law of G h(u) is defined at any rate, so Rn > n is allowed here.
  validate_code_parameters(n, message_bits, k, false);
  const ParityCheck pc(message_bits, k);
  const std::size_t m = pc.rows();
  const std::size_t generator_bits = n * m;
  const double required = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(generator_bits, 1000)));
  if (required > guard || generator_bits >= 63) {
    throw GuardExceeded("too many generator matrices to enumerate", required, guard);
  }
  if (messages.empty()) throw InvalidArgument("joint_codeword_distribution needs at least one message");
  if (n * messages.size() > 64) throw InvalidArgument("joint outcome does not fit in 64 bits");

  const Message first = mode == MessageMode::ZeroFree ? 1 : 0;
  std::vector<std::uint64_t> columns;
  for (Message u : messages) {
    if (u < first || u >= (std::uint64_t{1} << message_bits)) {
      throw InvalidArgument("message " + std::to_string(u) + " is not in the message set");
    }
    columns.push_back(pc.column(u).to_word());
  }
  std::vector<Message> sorted(messages.begin(), messages.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("messages must be distinct");
  }

  const std::uint64_t row_mask = (std::uint64_t{1} << m) - 1;
  const std::uint64_t generators = std::uint64_t{1} << generator_bits;
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  for (std::uint64_t g = 0; g < generators; ++g) {
    std::uint64_t outcome = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint64_t row = (g >> (r * m)) & row_mask;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (std::popcount(row & columns[i]) & 1) outcome |= std::uint64_t{1} << (i * n + r);
      }
    }
    ++acc[outcome];
  }

  CodewordHistogram hist;
  hist.n = n;
  hist.messages.assign(messages.begin(), messages.end());
  hist.counts.insert(acc.begin(), acc.end());
  hist.total = generators;
  return hist;
}

void write_code(std::ostream& out, const PseudolinearCode& code) {
  out << "pseudolinear-code v1\n";
  out << "n " << code.n() << '\n';
  out << "Rn " << code.message_bits() << '\n';
  out << "k " << code.k() << '\n';
  out << "mode " << to_string(code.mode()) << '\n';
  if (code.seed()) {
    out << "seed " << *code.seed() << '\n';
  } else {
    out << "seed none\n";
  }
  std::ostringstream poly;
  poly << std::hex << code.parity_check().field().polynomial();
  out << "poly 0x" << poly.str() << '\n';
  out << "G " << code.generator().rows() << ' ' << code.generator().cols() << '\n';
  for (std::size_t r = 0; r < code.generator().rows(); ++r) out << code.generator().row(r).to_hex() << '\n';
}

namespace {

std::string expect_field(std::istream& in, std::string_view key) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("code file truncated before '" + std::string(key) + "'");
  std::istringstream ls(line);
  std::string got;
  std::string value;
  ls >> got;
  std::getline(ls >> std::ws, value);
  if (got != key) throw ParseError("expected '" + std::string(key) + "' but found '" + got + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& text, int base = 10) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, base);
    if (used != text.size()) throw ParseError("trailing characters in '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: '" + text + "'");
  }
}

}  // namespace

PseudolinearCode read_code(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic) || magic != "pseudolinear-code v1") throw ParseError("not a pseudolinear code file");
  const std::size_t n = parse_uint(expect_field(in, "n"));
  const auto rn = static_cast<unsigned>(parse_uint(expect_field(in, "Rn")));
  const auto k = static_cast<unsigned>(parse_uint(expect_field(in, "k")));
  const MessageMode mode = parse_message_mode(expect_field(in, "mode"));
  const std::string seed_text = expect_field(in, "seed");
  std::optional<std::uint64_t> seed;
  if (seed_text != "none") seed = parse_uint(seed_text);
  std::string poly_text = expect_field(in, "poly");
  if (poly_text.rfind("0x", 0) != 0) throw ParseError("polynomial must be written as 0x<hex>");
  const auto poly = static_cast<std::uint32_t>(parse_uint(poly_text.substr(2), 16));

  std::istringstream dims(expect_field(in, "G"));
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(dims >> rows >> cols)) throw ParseError("malformed G dimensions");
  if (rows != n || cols != static_cast<std::size_t>(k) * rn) throw ParseError("G dimensions disagree with header");
  std::vector<BitVector> g;
  g.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("code file truncated inside G");
    g.push_back(BitVector::from_hex(line, cols));
  }
  return PseudolinearCode(n, rn, k, mode, BitMatrix::from_rows(std::move(g), cols), seed, poly);
}

}  // namespace pseudolinear
