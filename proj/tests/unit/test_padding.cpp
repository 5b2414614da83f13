#include "bsat/error.hpp"
#include "bsat/padding.hpp"
#include "doctest.h"

using namespace bsat;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("padded_length") {
  CHECK(padded_length(0, 1) == 1);
  CHECK(padded_length(3, 1) == 8);
  CHECK(padded_length(3, 2) == 512);
  CHECK(padded_length(63, 1) == std::uint64_t{1} << 63);
  CHECK_FALSE(padded_length(64, 1));
  CHECK_FALSE(padded_length(9, 2));
}

TEST_CASE("pad and unpad") {
  const auto blob = pad("abc", 1);
  CHECK(blob.total_length == 8);
  CHECK(blob.serialize() == "abc#####");
  CHECK(unpad(blob.serialize(), 1) == "abc");

  CHECK(pad("abc", 2).serialize().size() == 512);
  CHECK(pad("", 1).serialize().empty() == false);
  CHECK(pad("", 1).serialize() == "#");
  CHECK(unpad("#", 1).empty());
}

TEST_CASE("pad length is 2^n for n in 1..10 and unpad inverts it") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::string payload(n, 'x');
    const auto text = pad(payload, 1).serialize();
    CHECK(text.size() == (std::size_t{1} << n));
    CHECK(unpad(text, 1) == payload);
  }
}

TEST_CASE("padding errors") {
  CHECK(kind_of([] { pad("a#b", 1); }) == ErrorKind::ReservedByte);
  CHECK(kind_of([] { pad(std::string(21, 'x'), 1); }) == ErrorKind::PaddingOverflow);
  CHECK(pad(std::string(20, 'x'), 1).total_length == (std::uint64_t{1} << 20));
  CHECK(kind_of([] { pad("abcd", 2, 1 << 15); }) == ErrorKind::PaddingOverflow);
  CHECK(pad("abcd", 2, 1 << 16).total_length == 65536);

  CHECK(kind_of([] { unpad("abc####", 1); }) == ErrorKind::MalformedPadding);
  CHECK(kind_of([] { unpad("abc######", 1); }) == ErrorKind::MalformedPadding);
  CHECK(kind_of([] { unpad("ab#c####", 1); }) == ErrorKind::MalformedPadding);
}

TEST_CASE("overflow fires exactly when 2^(n^k) exceeds the limit") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (std::size_t n = 0; n <= 24; ++n) {
      for (std::uint64_t max_bytes : {std::uint64_t{1}, std::uint64_t{1000}, std::uint64_t{1} << 16,
                                      kDefaultMaxPaddedBytes}) {
        const auto len = padded_length(n, k);
        const bool too_big = !len || *len > max_bytes;
        const std::string payload(n, 'x');
        bool threw = false;
        try {
          pad(payload, k, max_bytes);
        } catch (const Error& e) {
          threw = e.kind() == ErrorKind::PaddingOverflow;
        }
        CHECK(threw == too_big);
      }
    }
  }
}

TEST_CASE("pad_to") {
  CHECK(pad_to("ab", 4) == "ab##");
  CHECK(pad_to("abcde", 4) == "abcde###");
  CHECK(pad_to("", 1) == "#");
}
