#pragma once

#include <cstddef>
#include <cstdint>

namespace liquifbm {

// Identifies one random scenario: a master seed and a path index.
struct SeedRecord {
    std::uint64_t seed = 42;
    std::uint64_t path = 0;
};

namespace rng {

// Independent sub-streams derived from one master seed.
enum class Stream : std::uint64_t { Volterra = 0, Cholesky = 1, Perturbation = 2 };

std::uint64_t mix64(std::uint64_t x);

// Counter-based: the value depends only on (seed, stream, path, counter),
// never on call order or thread.
double uniform(const SeedRecord& rec, Stream stream, std::uint64_t counter);
double normal(const SeedRecord& rec, Stream stream, std::uint64_t counter);

// out[k] = normal(rec, stream, k) for k < n, computed pairwise.
void fill_normals(const SeedRecord& rec, Stream stream, std::size_t n, double* out);

}  // namespace rng
}  // namespace liquifbm
