#include "padhyp/field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "padhyp/config.hpp"
#include "padhyp/error.hpp"

namespace padhyp {

DworkField::DworkField(unsigned long p, unsigned long q) : p_(p), q_(q), degree_(static_cast<int>(q - 1)) {
  PadicConfig probe;
  probe.p = p;
  probe.q = q;
  probe.validate();
  unsigned long exponent = (q - 1) / (p - 1);
  Integer minus_p_pow = ipow(p, exponent);
  if (exponent % 2 == 1) minus_p_pow = -minus_p_pow;
  top_ = Rational(-minus_p_pow);
}

const DworkField& DworkField::get(unsigned long p, unsigned long q) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned long, unsigned long>, std::unique_ptr<DworkField>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, q);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<DworkField>(p, q)).first;
  }
  return *it->second;
}

}  // namespace padhyp
