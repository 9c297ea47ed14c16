#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pseudolinear/bch_parity.hpp"
#include "pseudolinear/bitlinalg.hpp"

namespace pseudolinear {

class JointDistribution;

using Message = std::uint64_t;

/// Which message set a code uses.
///
/// ZeroFree uses {1, ..., 2^Rn - 1}, one message per nonzero parity-check
/// column. PaperFaithful also admits message 0, encoded through the zero
/// column, so its codeword is always the all-zero word.
enum class MessageMode { ZeroFree, PaperFaithful };

std::string_view to_string(MessageMode mode);
MessageMode parse_message_mode(std::string_view text);

/// An (n, Rn, k) pseudolinear code: u -> G h(u).
class PseudolinearCode {
 public:
  PseudolinearCode(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode, BitMatrix generator,
                   std::optional<std::uint64_t> seed = std::nullopt,
                   std::optional<std::uint32_t> polynomial = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  unsigned message_bits() const noexcept { return message_bits_; }
  unsigned k() const noexcept { return parity_.k(); }
  std::size_t m() const noexcept { return parity_.rows(); }
  MessageMode mode() const noexcept { return mode_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  double rate() const noexcept { return static_cast<double>(message_bits_) / static_cast<double>(n_); }

  const ParityCheck& parity_check() const noexcept { return parity_; }
  const BitMatrix& generator() const noexcept { return generator_; }

  Message first_message() const noexcept { return mode_ == MessageMode::ZeroFree ? 1 : 0; }
  std::uint64_t message_count() const noexcept {
    return (std::uint64_t{1} << message_bits_) - first_message();
  }
  bool contains(Message u) const noexcept { return u >= first_message() && u < (std::uint64_t{1} << message_bits_); }
  Message message_at(std::uint64_t position) const;
  std::uint64_t position_of(Message u) const;

  BitVector encode(Message u) const;

 private:
  std::size_t n_;
  unsigned message_bits_;
  MessageMode mode_;
  std::optional<std::uint64_t> seed_;
  ParityCheck parity_;
  BitMatrix generator_;
};

/// Code with G drawn i.i.d. uniform from the seeded generator.
PseudolinearCode sample_code(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode,
                             std::uint64_t seed, std::optional<std::uint32_t> polynomial = std::nullopt);

inline BitVector encode(const PseudolinearCode& code, Message u) { return code.encode(u); }

inline constexpr std::uint64_t kDefaultCodebookGuard = std::uint64_t{1} << 20;

/// All codewords of a code, materialized once, in message order.
class Codebook {
 public:
  explicit Codebook(PseudolinearCode code, std::uint64_t guard = kDefaultCodebookGuard);

  const PseudolinearCode& code() const noexcept { return code_; }
  std::size_t size() const noexcept { return messages_.size(); }
  std::size_t n() const noexcept { return code_.n(); }
  std::size_t words_per_codeword() const noexcept { return stride_; }

  Message message(std::size_t position) const { return messages_.at(position); }
  std::span<const Message> messages() const noexcept { return messages_; }
  const BitVector& codeword(std::size_t position) const { return codewords_.at(position); }
  const BitVector& codeword_of(Message u) const { return codewords_.at(code_.position_of(u)); }
  std::span<const BitVector::Word> words(std::size_t position) const noexcept {
    return {packed_.data() + position * stride_, stride_};
  }

  /// Nearest codeword's message; ties go to the smallest message index.
  Message decode(const BitVector& y) const;

  /// Minimum pairwise distance (0 when two messages share a codeword).
  std::size_t minimum_distance() const;

 private:
  PseudolinearCode code_;
  std::vector<Message> messages_;
  std::vector<BitVector> codewords_;
  std::vector<BitVector::Word> packed_;
  std::size_t stride_;
};

/// (message, codeword) pairs in message order. Rejects 2^Rn > guard.
std::vector<std::pair<Message, BitVector>> codebook(const PseudolinearCode& code,
                                                    std::uint64_t guard = kDefaultCodebookGuard);

/// Min-distance decoding by scanning every codeword; ties go to the smallest
/// message index.
Message min_distance_decode(const PseudolinearCode& code, const BitVector& y);

inline constexpr double kDefaultGeneratorGuard = 16777216.0;  // 2^24

/// Exact joint law of (X(u_1), ..., X(u_t)) over every n x m generator.
///
/// Outcome bit (i * n + r) is coordinate r of the codeword of messages[i].
struct CodewordHistogram {
  std::size_t n = 0;
  std::vector<Message> messages;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t outcome_bits() const noexcept { return n * messages.size(); }
  std::uint64_t count(std::uint64_t outcome) const;
  /// Variables indexed (message, coordinate): M1 = #messages, M2 = n.
  JointDistribution to_distribution() const;
};

/// Enumerates all 2^(n*m) generators. Messages must be distinct members of
/// the mode's message set; more than k messages are allowed, though
/// the uniformity guarantee only covers up to k. Rn may exceed n.
CodewordHistogram joint_codeword_distribution(std::size_t n, unsigned message_bits, unsigned k, MessageMode mode,
                                              std::span<const Message> messages,
                                              double guard = kDefaultGeneratorGuard);

/// Text serialization: a header (n, Rn, k, mode, seed, primitive polynomial)
/// followed by n hex rows of G. Round trips are bit-exact.
void write_code(std::ostream& out, const PseudolinearCode& code);
PseudolinearCode read_code(std::istream& in);

}  // namespace pseudolinear
