#pragma once

// Exponential padding: a payload of n bytes followed by pseudo-blanks up to
// a total length of exactly 2^(n^k).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bsat/text.hpp"

namespace bsat {

inline constexpr std::uint64_t kDefaultMaxPaddedBytes = std::uint64_t{1} << 20;

/// 2^(n^k), or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> padded_length(std::uint64_t n, unsigned k);

struct PaddedBlob {
  std::string payload;
  unsigned k = 1;
  std::uint64_t total_length = 0;

  /// Payload followed by total_length - |payload| pseudo-blanks.
  std::string serialize() const;
};

/// Throws ReservedByte if the payload holds a pseudo-blank and
/// PaddingOverflow when 2^(n^k) > max_bytes.
PaddedBlob pad(std::string_view payload, unsigned k,
               std::uint64_t max_bytes = kDefaultMaxPaddedBytes);

/// Strip the maximal pseudo-blank suffix and check the total length is
/// 2^(n^k) for the remaining n bytes. Throws MalformedPadding.
std::string unpad(std::string_view blob, unsigned k);

/// Pad arbitrary output to `target` bytes, doubling the target until the
/// text fits.
std::string pad_to(std::string text, std::uint64_t target);

}  // namespace bsat
