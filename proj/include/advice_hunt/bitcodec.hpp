#pragma once

// Bit strings, the self-delimiting advice encoding, and sector arithmetic.
//
// Advice layout: every payload bit is doubled (0 -> 00, 1 -> 11) and
// consecutive substrings are separated by the pair 01. The last substring
// carries the binary value of LogSum; the preceding ones are the per-step
// sector codes A_0..A_{D-1}.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace advice_hunt {

class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<bool> bits) : bits_(bits) {}

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (const char c : text) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("BitString: unexpected character '" + std::string(1, c) + "'");
      }
      out.bits_.push_back(c == '1');
    }
    return out;
  }

  /// `value` written in exactly `width` bits, most significant first.
  static BitString from_value(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
      throw std::invalid_argument("BitString: value does not fit in width");
    }
    BitString out;
    out.bits_.resize(width, false);
    for (std::size_t i = 0; i < width && i < 64; ++i) {
      out.bits_[width - 1 - i] = ((value >> i) & 1U) != 0;
    }
    return out;
  }

  /// Shortest binary representation; zero is the single bit "0".
  static BitString minimal_binary(std::uint64_t value) {
    const auto width = value == 0 ? std::size_t{1} : static_cast<std::size_t>(std::bit_width(value));
    return from_value(value, width);
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool bit) { bits_.push_back(bit); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  BitString substr(std::size_t pos) const {
    BitString out;
    if (pos < bits_.size()) out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos), bits_.end());
    return out;
  }

  /// Unsigned value of the bits; nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> value() const noexcept {
    std::uint64_t v = 0;
    for (const bool b : bits_) {
      if (v >> 63) return std::nullopt;
      v = (v << 1) | (b ? 1U : 0U);
    }
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (const bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

  friend std::ostream& operator<<(std::ostream& os, const BitString& b) { return os << b.to_string(); }

 private:
  std::vector<bool> bits_;
};

/// Raised when an advice string is not a valid encoding.
class MalformedAdvice : public std::runtime_error {
 public:
  MalformedAdvice(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at bit offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Decoded advice: the sector codes and the LogSum field.
struct AdvicePayload {
  std::vector<BitString> substrings;
  BitString logsum_bits;

  std::size_t distance() const noexcept { return substrings.size(); }

  std::uint64_t total_substring_bits() const noexcept {
    std::uint64_t total = 0;
    for (const auto& s : substrings) total += s.size();
    return total;
  }

  /// Integer value of LS. Throws MalformedAdvice when it exceeds 64 bits.
  std::uint64_t logsum() const {
    const auto v = logsum_bits.value();
    if (!v) throw MalformedAdvice("LogSum field wider than 64 bits", 0);
    return *v;
  }

  friend bool operator==(const AdvicePayload&, const AdvicePayload&) = default;
};

namespace detail {
inline void append_doubled(BitString& out, const BitString& in) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    out.push_back(in[i]);
    out.push_back(in[i]);
  }
}
}  // namespace detail

inline BitString concat(std::span<const BitString> substrings, const BitString& logsum_bits) {
  BitString out;
  for (const auto& s : substrings) {
    detail::append_doubled(out, s);
    out.push_back(false);
    out.push_back(true);
  }
  detail::append_doubled(out, logsum_bits);
  return out;
}

inline BitString concat(const AdvicePayload& payload) {
  return concat(payload.substrings, payload.logsum_bits);
}

inline AdvicePayload decode(const BitString& bits) {
  if (bits.size() % 2 != 0) throw MalformedAdvice("odd advice length", bits.size() - 1);
  AdvicePayload payload;
  BitString current;
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    const bool hi = bits[i];
    const bool lo = bits[i + 1];
    if (hi == lo) {
      current.push_back(hi);
    } else if (!hi && lo) {
      payload.substrings.push_back(std::move(current));
      current = BitString{};
    } else {
      throw MalformedAdvice("invalid pair 10", i);
    }
  }
  payload.logsum_bits = std::move(current);
  return payload;
}

/// ceil(log2(x)) for x >= 1.
constexpr std::uint32_t ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0U : static_cast<std::uint32_t>(std::bit_width(x - 1));
}

/// Number of advice bits the oracle spends at a node of degree `deg`:
/// floor(ceil(log2 deg) * ell / logsum). nullopt signals a mismatch
/// (a branching node while LogSum is zero).
constexpr std::optional<std::uint64_t> expected_substring_length(std::uint64_t deg, std::uint64_t ell,
                                                                 std::uint64_t logsum) noexcept {
  const std::uint64_t bits = ceil_log2(deg);
  if (bits == 0) return 0;
  if (logsum == 0) return std::nullopt;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * ell) / logsum);
}

/// ceil(deg / 2^z); at least 1 for every deg >= 1.
constexpr std::uint64_t sector_size(std::uint64_t deg, std::uint64_t z) noexcept {
  if (z >= 64) return deg == 0 ? 0 : 1;
  const std::uint64_t sectors = std::uint64_t{1} << z;
  return deg / sectors + (deg % sectors != 0 ? 1 : 0);
}

inline BitString encode_sector_number(std::uint64_t deg, std::uint64_t port, std::uint64_t z) {
  if (port >= deg) throw std::invalid_argument("encode_sector_number: port out of range");
  const std::uint64_t number = port / sector_size(deg, z);
  return BitString::from_value(number, static_cast<std::size_t>(z));
}

/// Closed interval of port numbers. Bounds may exceed the node's degree.
struct PortRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;

  std::uint64_t size() const noexcept { return last - first + 1; }
  bool contains(std::uint64_t p) const noexcept { return first <= p && p <= last; }
  friend bool operator==(const PortRange&, const PortRange&) = default;
};

inline PortRange get_sector(std::uint64_t deg, const BitString& code) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (deg == 0) throw std::invalid_argument("get_sector: degree must be positive");
  const std::uint64_t size = sector_size(deg, code.size());
  const std::uint64_t number = code.value().value_or(kMax);
  if (number != 0 && size > kMax / number) return {kMax, kMax};
  const std::uint64_t first = number * size;
  const std::uint64_t last = size - 1 > kMax - first ? kMax : first + (size - 1);
  return {first, last};
}

}  // namespace advice_hunt
