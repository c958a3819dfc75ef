#include "padhyp/config.hpp"

#include <string>

#include "padhyp/error.hpp"
#include "padhyp/rational.hpp"

namespace padhyp {

void PadicConfig::validate() const {
  if (!is_prime(p)) fail(ErrorKind::InvalidConfig, "p = " + std::to_string(p) + " is not prime");
  unsigned long t = q;
  if (t < p) fail(ErrorKind::InvalidConfig, "q must be a power of p");
  while (t % p == 0) t /= p;
  if (t != 1) fail(ErrorKind::InvalidConfig, "q = " + std::to_string(q) + " is not a power of p");
  if (q > 4096) fail(ErrorKind::InvalidConfig, "q too large for the pi-basis representation");
  if (precision < 1) fail(ErrorKind::InvalidConfig, "precision must be >= 1");
  if (lmax < 0 || kmax < 0) fail(ErrorKind::InvalidConfig, "truncation window must be non-negative");
}

}  // namespace padhyp
