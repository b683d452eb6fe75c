#pragma once

#include <cstdint>
#include <random>

namespace nbpk {

/// A reproducible, value-typed random stream.
///
/// Every stream is identified by a (seed, stream id) pair; two streams with
/// the same pair produce identical sequences. Child streams derived with
/// `split` are independent of the parent for practical purposes and can be
/// handed to other threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Deterministic child stream keyed by `child_id`.
  RandomStream split(std::uint64_t child_id) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52; }

  /// Unit-rate exponential.
  double exponential();

  /// Standard normal (Marsaglia polar method, no cached second variate).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Stable 64-bit mixing of a string, for keying streams by test name.
std::uint64_t hash_name(const char* name) noexcept;

}  // namespace nbpk
