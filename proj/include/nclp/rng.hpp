#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace nclp {

// Counter-based random stream.  Every (seed, stream name, trial index)
// triple yields an independent deterministic sequence, so trials can run
// in any order -- or in parallel -- and still reproduce bit-identical
// results.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

  std::uint64_t next_u64();
  double uniform();                          // in [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);           // inclusive bounds
  double normal();
  std::complex<double> cnormal();            // standard complex Gaussian

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nclp
