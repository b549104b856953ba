#include "annealpath/rng.hpp"

namespace annealpath {

static_assert(mix64(0) == 0, "SplitMix64 finalizer fixes zero");
static_assert(CounterRng(0).at(0) == 0xe220a8397b1dcdafULL, "first SplitMix64 output for seed 0");

}  // namespace annealpath
