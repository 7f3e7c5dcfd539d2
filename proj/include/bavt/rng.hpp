#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bavt {

// splitmix64 finalizer, used to derive independent child seeds from a base
// seed plus stream indices. Derived seeding keeps every consumer a pure
// function of (base seed, index), which is what makes checkpointed training
// resumable without serializing generator state.
uint64_t mix_seed(uint64_t seed, uint64_t stream);
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b);

// mt19937_64 with hand-rolled distribution mappings. The standard
// distributions are implementation-defined sequences; these are not.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, two uniforms per call, no cached spare
    double normal();

    // [0, n), multiply-shift bound
    uint64_t below(uint64_t n);

  private:
    std::mt19937_64 gen_;
};

// Fisher-Yates with Rng::below; deterministic for a given seed.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace bavt
