#include "liquifbm/rng.hpp"

#include <cmath>
#include <numbers>

namespace liquifbm::rng {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t key(const SeedRecord& rec, Stream stream, std::uint64_t counter) {
    std::uint64_t h = mix64(rec.seed);
    h = mix64(h ^ static_cast<std::uint64_t>(stream));
    h = mix64(h ^ rec.path);
    return mix64(h ^ counter);
}

double to_open_unit(std::uint64_t bits) {
    // 53 random bits, shifted off both endpoints
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

void box_muller(const SeedRecord& rec, Stream stream, std::uint64_t pair, double& z0, double& z1) {
    const double u1 = to_open_unit(key(rec, stream, 2 * pair));
    const double u2 = to_open_unit(key(rec, stream, 2 * pair + 1));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(th);
    z1 = r * std::sin(th);
}

}  // namespace

double uniform(const SeedRecord& rec, Stream stream, std::uint64_t counter) {
    return to_open_unit(key(rec, stream, counter));
}

double normal(const SeedRecord& rec, Stream stream, std::uint64_t counter) {
    double z0, z1;
    box_muller(rec, stream, counter / 2, z0, z1);
    return (counter % 2 == 0) ? z0 : z1;
}

void fill_normals(const SeedRecord& rec, Stream stream, std::size_t n, double* out) {
    for (std::size_t k = 0; k < n; k += 2) {
        double z0, z1;
        box_muller(rec, stream, k / 2, z0, z1);
        out[k] = z0;
        if (k + 1 < n) out[k + 1] = z1;
    }
}

}  // namespace liquifbm::rng
