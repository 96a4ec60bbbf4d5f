#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace prophet_lab {

// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11). Stateless:
// the same (counter, key) always maps to the same 128 output bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key);
};

// A UniformRandomBitGenerator over one Philox stream. Streams are addressed by
// (seed, stream id); stream ids are typically replication indices, so any
// replication can be regenerated independently of every other one.
class ReplicationRng {
 public:
  using result_type = std::uint32_t;

  ReplicationRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  std::uint64_t next_u64();

  // Uniform integer in [0, bound). Lemire's multiply-and-reject method; the
  // output sequence is fully specified here, not by the standard library.
  std::uint32_t uniform_below(std::uint32_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

}  // namespace prophet_lab
