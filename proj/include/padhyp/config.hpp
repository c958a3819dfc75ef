#pragma once

namespace padhyp {

/// Ambient data: residue characteristic p, residue field size q = p^f,
/// scalar precision (in pi-adic digits, i.e. units of valuation 1/(p-1)) and
/// the (|x|-degree, d-order) truncation window for operators.
struct PadicConfig {
  unsigned long p = 3;
  unsigned long q = 3;
  long precision = 20;
  int lmax = 32;
  int kmax = 32;

  /// Throws InvalidConfig.
  void validate() const;
};

}  // namespace padhyp
