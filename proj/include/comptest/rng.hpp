// rng.hpp
// Splittable random streams. A stream is addressed by (seed, stream_id);
// the same address always reproduces the same draw sequence, and distinct
// stream ids give independently seeded generators. The simulation harness
// derives one stream per replication so results do not depend on thread
// count or execution order.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace comptest {

// SplitMix64 finalizer, used to whiten seeds and derive substream ids.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a over the bytes of a label; stable across platforms.
std::uint64_t hash_label(std::string_view label) noexcept;

// Order-sensitive combination of stream id parts.
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) noexcept;

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double normal();
  double gamma(double shape);  // Gamma(shape, scale = 1)
  double uniform01();
  std::uint64_t below(std::uint64_t n);  // uniform on {0, ..., n-1}

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// n-by-p matrix of iid standard normal entries, filled row by row.
Eigen::MatrixXd sample_std_normal_matrix(RngStream& rng, Eigen::Index n,
                                         Eigen::Index p);

// n-by-p matrix of iid Gamma(shape, 1) entries, filled row by row.
Eigen::MatrixXd sample_std_gamma_matrix(RngStream& rng, Eigen::Index n,
                                        Eigen::Index p, double shape);

}  // namespace comptest
