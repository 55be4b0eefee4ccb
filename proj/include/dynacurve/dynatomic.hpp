#pragma once
// Exact construction of the iterate differences Phi_{n,p}, the dynatomic
// polynomials Q_{n,p} and their factors q^j_{n,p} for f_c(z) = z^d + c.

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "dynacurve/cycpoly.hpp"

namespace dynacurve {

struct ResourceLimits {
  long max_degree = 1L << 14;        // refuse d^(n+p) above this
  double max_bytes = 4.0 * (1ull << 30);  // rough ceiling for one Phi_{n,p}
};

class FamilyContext {
 public:
  explicit FamilyContext(int d, ResourceLimits limits = {});

  int d() const { return d_; }
  const ResourceLimits& limits() const { return limits_; }

  // Throws ResourceCapExceeded if the (n, p) cell is out of reach.
  void check_cap(int n, int p) const;
  // Upper estimate of the storage for Phi_{n,p} in bytes.
  static double estimated_bytes(int d, int n, int p);

  const CycPoly2& iterate(int k);          // f_c^k(z)
  const CycPoly2& phi(int n, int p);       // f^(n+p) - f^n
  const CycPoly2& Q(int n, int p);         // composition for n >= 2, division below
  const CycPoly2& factor(int n, int p, int j);  // q^j_{n,p}, 1 <= j <= d-1

  CycPoly2 Q_by_division(int n, int p);
  CycPoly2 Q_by_composition(int n, int p);  // n >= 2

  void clear();

 private:
  int d_;
  ResourceLimits limits_;
  std::recursive_mutex mu_;
  std::deque<CycPoly2> iterates_;  // references stay valid as it grows
  std::map<std::pair<int, int>, CycPoly2> phi_, Q_;
  std::map<std::tuple<int, int, int>, CycPoly2> factor_;
};

struct IdentityCheck {
  std::string name;
  bool applicable = true;
  bool pass = false;
  std::string detail;
};

struct IdentityReport {
  int d = 0, n = 0, p = 0;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

IdentityReport verify_identities(FamilyContext& ctx, int n, int p);

}  // namespace dynacurve
