#include "twisted/random.hpp"

#include "twisted/errors.hpp"

namespace twisted {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

std::uint64_t StreamRng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InvalidInput("uniform_int with empty range");
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return engine_();
  // Rejection sampling keeps the draw unbiased and independent of the
  // standard library's distribution implementation.
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + x % n;
}

}  // namespace twisted
