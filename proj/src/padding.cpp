#include "bsat/padding.hpp"

#include "bsat/error.hpp"

namespace bsat {

namespace {

// n^k, or nullopt on overflow.
std::optional<std::uint64_t> int_pow(std::uint64_t n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n != 0 && r > UINT64_MAX / n) return std::nullopt;
    r *= n;
  }
  return r;
}

std::string describe_length(std::uint64_t n, unsigned k) {
  auto e = int_pow(n, k);
  if (!e) return "2^(" + std::to_string(n) + "^" + std::to_string(k) + ")";
  if (*e < 64) return std::to_string(std::uint64_t{1} << *e);
  return "2^" + std::to_string(*e);
}

}  // namespace

std::optional<std::uint64_t> padded_length(std::uint64_t n, unsigned k) {
  auto e = int_pow(n, k);
  if (!e || *e >= 64) return std::nullopt;
  return std::uint64_t{1} << *e;
}

std::string PaddedBlob::serialize() const {
  std::string out = payload;
  out.append(total_length - payload.size(), kPseudoBlank);
  return out;
}

PaddedBlob pad(std::string_view payload, unsigned k, std::uint64_t max_bytes) {
  if (k == 0) throw Error(ErrorKind::PaddingOverflow, "padding exponent k must be positive");
  if (auto at = payload.find(kPseudoBlank); at != std::string_view::npos) {
    throw Error(ErrorKind::ReservedByte, "payload contains the pseudo-blank byte at offset " + std::to_string(at), at);
  }
  const auto total = padded_length(payload.size(), k);
  if (!total || *total > max_bytes) {
    throw Error(ErrorKind::PaddingOverflow,
                "padding " + std::to_string(payload.size()) + " bytes with k=" + std::to_string(k) + " requires " +
                    describe_length(payload.size(), k) + " bytes, limit is " + std::to_string(max_bytes));
  }
  return PaddedBlob{std::string(payload), k, *total};
}

std::string unpad(std::string_view blob, unsigned k) {
  if (k == 0) throw Error(ErrorKind::MalformedPadding, "padding exponent k must be positive");
  std::size_t n = blob.size();
  while (n > 0 && blob[n - 1] == kPseudoBlank) --n;
  const auto payload = blob.substr(0, n);
  if (auto at = payload.find(kPseudoBlank); at != std::string_view::npos) {
    throw Error(ErrorKind::MalformedPadding, "interior pseudo-blank at offset " + std::to_string(at), at);
  }
  const auto expected = padded_length(n, k);
  if (!expected || *expected != blob.size()) {
    throw Error(ErrorKind::MalformedPadding,
                "blob of " + std::to_string(blob.size()) + " bytes is not padded to " + describe_length(n, k) +
                    " for a " + std::to_string(n) + "-byte payload");
  }
  return std::string(payload);
}

std::string pad_to(std::string text, std::uint64_t target) {
  if (target == 0) target = 1;
  while (target < text.size()) target *= 2;
  text.append(target - text.size(), kPseudoBlank);
  return text;
}

}  // namespace bsat
