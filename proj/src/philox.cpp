#include "prophet_lab/philox.hpp"

namespace prophet_lab {
namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline Philox4x32::Counter round(const Philox4x32::Counter& c, const Philox4x32::Key& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMulA, c[0], hi0, lo0);
  mulhilo(kMulB, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::encrypt(Counter ctr, Key key) {
  ctr = round(ctr, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeylA;
    key[1] += kWeylB;
    ctr = round(ctr, key);
  }
  return ctr;
}

ReplicationRng::ReplicationRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

void ReplicationRng::refill() {
  const Philox4x32::Counter ctr{
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = Philox4x32::encrypt(ctr, key_);
  ++block_;
  used_ = 0;
}

ReplicationRng::result_type ReplicationRng::operator()() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

std::uint64_t ReplicationRng::next_u64() {
  const std::uint64_t hi = (*this)();
  const std::uint64_t lo = (*this)();
  return (hi << 32) | lo;
}

std::uint32_t ReplicationRng::uniform_below(std::uint32_t bound) {
  std::uint64_t m = static_cast<std::uint64_t>((*this)()) * bound;
  auto low = static_cast<std::uint32_t>(m);
  if (low < bound) {
    const std::uint32_t threshold = (0u - bound) % bound;
    while (low < threshold) {
      m = static_cast<std::uint64_t>((*this)()) * bound;
      low = static_cast<std::uint32_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 32);
}

double ReplicationRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace prophet_lab
