#include "nbpk/random.hpp"

#include <cmath>

namespace nbpk {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(stream_id ^ 0x5851f42d4c957f2dULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RandomStream RandomStream::split(std::uint64_t child_id) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(stream_id_)), child_id);
}

double RandomStream::exponential() { return -std::log(uniform_open()); }

double RandomStream::normal() {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

std::uint64_t hash_name(const char* name) noexcept {
  // FNV-1a, then mixed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p = name; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

}  // namespace nbpk
