#pragma once

#include <cstdint>
#include <random>

namespace adabench {

/// Deterministic random stream identified by (master_seed, stream_id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Real-valued variates are derived here rather than through the
/// <random> distributions, whose algorithms differ between standard
/// libraries, so sample sequences are bit-identical across platforms.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal();
  /// Exponential with unit mean.
  double exponential();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Child stream for (master_seed, stream_id). Same arguments, same sequence.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

}  // namespace adabench
