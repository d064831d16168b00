#include "netinf/random.hpp"

#include <cmath>

namespace netinf {

double exponential_from_uniform(double u, double mean) { return -mean * std::log1p(-u); }

double Rng::exponential(double mean) {
  double delay;
  do {
    delay = exponential_from_uniform(uniform(), mean);
  } while (!(delay > 0.0));
  return delay;
}

}  // namespace netinf
