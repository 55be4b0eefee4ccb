#include "dynacurve/cycpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dynacurve/errors.hpp"
#include "internal.hpp"

namespace dynacurve {

using detail::reduce_cyclotomic;

namespace {

struct NZ {
  int pos;  // b * E + k in the unreduced layout
  const mpz_class* v;
};

std::vector<NZ> nonzeros(const CycPoly1& p, int E) {
  std::vector<NZ> out;
  const auto& r = p.raw();
  int phi = p.phi();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (sgn(r[i]) != 0) out.push_back({static_cast<int>(i / phi) * E + static_cast<int>(i % phi), &r[i]});
  return out;
}

void addmul_nz(std::vector<mpz_class>& acc, const std::vector<NZ>& a, const std::vector<NZ>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      mpz_addmul(acc[x.pos + y.pos].get_mpz_t(), x.v->get_mpz_t(), y.v->get_mpz_t());
}

// Collapse an unreduced accumulator (coordinate stride E) into a CycPoly1.
CycPoly1 from_unreduced(int d, std::vector<mpz_class>& acc, int E) {
  CycPoly1 out(d);
  int phi = out.phi();
  int nb = static_cast<int>(acc.size()) / E;
  auto& raw = out.raw();
  raw.resize(static_cast<std::size_t>(nb) * phi);
  std::vector<mpz_class> t;
  for (int b = 0; b < nb; ++b) {
    bool any = false;
    for (int k = 0; k < E && !any; ++k) any = sgn(acc[b * E + k]) != 0;
    if (!any) continue;
    if (E == phi) {
      for (int k = 0; k < phi; ++k) mpz_swap(raw[b * phi + k].get_mpz_t(), acc[b * E + k].get_mpz_t());
      continue;
    }
    t.assign(E, mpz_class());
    for (int k = 0; k < E; ++k) mpz_swap(t[k].get_mpz_t(), acc[b * E + k].get_mpz_t());
    reduce_cyclotomic(t, d);
    for (int k = 0; k < phi; ++k) mpz_swap(raw[b * phi + k].get_mpz_t(), t[k].get_mpz_t());
  }
  out.trim();
  return out;
}

std::size_t bitlen(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

void require_same_ring(int a, int b) {
  if (a != b) throw RingMismatch("operands live over different cyclotomic rings");
}

}  // namespace

// ---------------------------------------------------------------- CycPoly1

CycPoly1::CycPoly1(int d) : d_(d), phi_(cyc_rank(d)) {
  if (d < 2) throw MalformedInput("ring order must be at least 2");
}

CycPoly1::CycPoly1(int d, std::vector<CycInt> coeffs) : CycPoly1(d) {
  v_.resize(coeffs.size() * phi_);
  for (std::size_t b = 0; b < coeffs.size(); ++b) {
    require_same_ring(coeffs[b].d(), d);
    for (int k = 0; k < phi_; ++k) v_[b * phi_ + k] = coeffs[b][k];
  }
  trim();
}

CycPoly1 CycPoly1::constant(const CycInt& v) { return CycPoly1(v.d(), {v}); }

CycPoly1 CycPoly1::variable(int d) { return CycPoly1(d, {CycInt(d, 0), CycInt(d, 1)}); }

bool CycPoly1::is_rational() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (i % phi_ != 0 && sgn(v_[i]) != 0) return false;
  return true;
}

CycInt CycPoly1::coeff(int b) const {
  if (b < 0 || b > degree()) return CycInt(d_);
  return CycInt(d_, std::vector<mpz_class>(v_.begin() + b * phi_, v_.begin() + (b + 1) * phi_));
}

void CycPoly1::set_coeff(int b, const CycInt& x) {
  require_same_ring(x.d(), d_);
  if (b > degree()) {
    if (x.is_zero()) return;
    v_.resize(static_cast<std::size_t>(b + 1) * phi_);
  }
  for (int k = 0; k < phi_; ++k) v_[b * phi_ + k] = x[k];
  trim();
}

void CycPoly1::trim() {
  while (!v_.empty()) {
    bool zero = true;
    for (int k = 0; k < phi_; ++k)
      if (sgn(v_[v_.size() - phi_ + k]) != 0) zero = false;
    if (!zero) break;
    v_.resize(v_.size() - phi_);
  }
}

std::size_t CycPoly1::max_bits() const {
  std::size_t m = 0;
  for (const auto& x : v_)
    if (sgn(x) != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

std::size_t CycPoly1::nnz() const {
  std::size_t n = 0;
  for (const auto& x : v_) n += sgn(x) != 0;
  return n;
}

CycPoly1 CycPoly1::operator-() const {
  CycPoly1 r = *this;
  for (auto& x : r.v_) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
  return r;
}

CycPoly1& CycPoly1::operator+=(const CycPoly1& o) {
  require_same_ring(d_, o.d_);
  if (o.v_.size() > v_.size()) v_.resize(o.v_.size());
  for (std::size_t i = 0; i < o.v_.size(); ++i)
    if (sgn(o.v_[i]) != 0) v_[i] += o.v_[i];
  trim();
  return *this;
}

CycPoly1& CycPoly1::operator-=(const CycPoly1& o) {
  require_same_ring(d_, o.d_);
  if (o.v_.size() > v_.size()) v_.resize(o.v_.size());
  for (std::size_t i = 0; i < o.v_.size(); ++i)
    if (sgn(o.v_[i]) != 0) v_[i] -= o.v_[i];
  trim();
  return *this;
}

CycPoly1 operator*(const CycPoly1& a, const CycPoly1& b) {
  require_same_ring(a.d_, b.d_);
  if (a.is_zero() || b.is_zero()) return CycPoly1(a.d_);
  int E = 2 * a.phi_ - 1;
  std::vector<mpz_class> acc(static_cast<std::size_t>(a.degree() + b.degree() + 1) * E);
  addmul_nz(acc, nonzeros(a, E), nonzeros(b, E));
  return from_unreduced(a.d_, acc, E);
}

bool operator==(const CycPoly1& a, const CycPoly1& b) { return a.d_ == b.d_ && a.v_ == b.v_; }

CycPoly1 CycPoly1::scale(const CycInt& s) const { return *this * constant(s); }

CycPoly1 CycPoly1::shift(int k) const {
  if (is_zero() || k == 0) return *this;
  CycPoly1 r(d_);
  r.v_.resize(v_.size() + static_cast<std::size_t>(k) * phi_);
  std::copy(v_.begin(), v_.end(), r.v_.begin() + static_cast<std::size_t>(k) * phi_);
  return r;
}

CycPoly1 CycPoly1::pow(unsigned e) const {
  CycPoly1 r = constant(CycInt(d_, 1)), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

CycPoly1 CycPoly1::derivative() const {
  CycPoly1 r(d_);
  if (degree() < 1) return r;
  r.v_.resize(v_.size() - phi_);
  for (int b = 1; b <= degree(); ++b)
    for (int k = 0; k < phi_; ++k) r.v_[(b - 1) * phi_ + k] = v_[b * phi_ + k] * b;
  r.trim();
  return r;
}

CycPoly1 CycPoly1::divexact(const CycInt& s) const {
  require_same_ring(d_, s.d());
  CycPoly1 r(d_);
  r.v_.resize(v_.size());
  if (s.is_rational()) {
    const mpz_class& q = s[0];
    if (sgn(q) == 0) throw NonZeroRemainder("division by zero");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!mpz_divisible_p(v_[i].get_mpz_t(), q.get_mpz_t()))
        throw NonZeroRemainder("coefficient not divisible");
      mpz_divexact(r.v_[i].get_mpz_t(), v_[i].get_mpz_t(), q.get_mpz_t());
    }
    return r;
  }
  for (int b = 0; b <= degree(); ++b) r.set_coeff(b, coeff(b).divexact(s));
  return r;
}

CycPoly1 CycPoly1::divexact(const CycPoly1& b) const {
  require_same_ring(d_, b.d_);
  if (b.is_zero()) throw NonZeroRemainder("division by the zero polynomial");
  if (is_zero()) return CycPoly1(d_);
  int db = b.degree();
  if (degree() < db) throw NonZeroRemainder("dividend degree below divisor degree");
  if (db == 0) return divexact(b.coeff(0));
  CycInt lc = b.lead();
  CycPoly1 rem = *this, q(d_);
  q.v_.resize(static_cast<std::size_t>(degree() - db + 1) * phi_);
  for (int i = degree(); i >= db; --i) {
    CycInt top = rem.coeff(i);
    if (top.is_zero()) continue;
    CycInt t = top.divexact(lc);
    for (int k = 0; k < phi_; ++k) q.v_[(i - db) * phi_ + k] = t[k];
    rem -= b.scale(t).shift(i - db);
  }
  if (!rem.is_zero()) throw NonZeroRemainder("polynomial in c is not divisible");
  q.trim();
  return q;
}

CycInt CycPoly1::eval(const CycInt& x) const {
  CycInt r(d_);
  for (int b = degree(); b >= 0; --b) r = r * x + coeff(b);
  return r;
}

std::vector<lcplx> CycPoly1::embed(int bits) const {
  std::vector<lcplx> out(degree() + 1);
  for (int b = 0; b <= degree(); ++b) out[b] = detail::embed_coords(&v_[b * phi_], phi_, d_, bits);
  return out;
}

std::string CycPoly1::str() const {
  std::ostringstream os;
  bool first = true;
  for (int b = degree(); b >= 0; --b) {
    CycInt x = coeff(b);
    if (x.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << x.str() << ")";
    if (b > 0) os << "*c^" << b;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- CycPoly2

CycPoly2::CycPoly2(int d, std::vector<CycPoly1> zc) : d_(d), z_(std::move(zc)) {
  for (const auto& p : z_) require_same_ring(p.d(), d);
  trim();
}

CycPoly2 CycPoly2::z(int d) {
  CycPoly2 r(d);
  r.set_coeff(1, 0, CycInt(d, 1));
  return r;
}

CycPoly2 CycPoly2::c(int d) {
  CycPoly2 r(d);
  r.set_coeff(0, 1, CycInt(d, 1));
  return r;
}

CycPoly2 CycPoly2::constant(const CycInt& v) {
  CycPoly2 r(v.d());
  r.set_coeff(0, 0, v);
  return r;
}

CycPoly2 CycPoly2::from_c(const CycPoly1& p) { return CycPoly2(p.d(), {p}); }

CycPoly2 CycPoly2::quadratic_family(int d) {
  CycPoly2 r(d);
  r.set_coeff(d, 0, CycInt(d, 1));
  r.set_coeff(0, 1, CycInt(d, 1));
  return r;
}

int CycPoly2::deg_c() const {
  int m = -1;
  for (const auto& p : z_) m = std::max(m, p.degree());
  return m;
}

bool CycPoly2::is_rational() const {
  return std::all_of(z_.begin(), z_.end(), [](const CycPoly1& p) { return p.is_rational(); });
}

bool CycPoly2::is_monic_z() const { return !z_.empty() && z_.back().degree() == 0 && z_.back().lead().is_one(); }

CycInt CycPoly2::coeff(int a, int b) const {
  if (a < 0 || a > deg_z()) return CycInt(d_);
  return z_[a].coeff(b);
}

void CycPoly2::set_coeff(int a, int b, const CycInt& x) {
  require_same_ring(d_, x.d());
  if (a > deg_z()) {
    if (x.is_zero()) return;
    z_.resize(a + 1, CycPoly1(d_));
  }
  z_[a].set_coeff(b, x);
  trim();
}

void CycPoly2::trim() {
  while (!z_.empty() && z_.back().is_zero()) z_.pop_back();
}

std::size_t CycPoly2::nnz() const {
  std::size_t n = 0;
  for (const auto& p : z_) n += p.nnz();
  return n;
}

std::size_t CycPoly2::max_bits() const {
  std::size_t m = 0;
  for (const auto& p : z_) m = std::max(m, p.max_bits());
  return m;
}

int CycPoly2::z_stride() const {
  int g = 0;
  for (int a = 0; a <= deg_z(); ++a)
    if (!z_[a].is_zero()) g = std::gcd(g, a);
  return g;
}

CycPoly2 CycPoly2::operator-() const {
  CycPoly2 r = *this;
  for (auto& p : r.z_) p = -p;
  return r;
}

CycPoly2& CycPoly2::operator+=(const CycPoly2& o) {
  require_same_ring(d_, o.d_);
  if (o.z_.size() > z_.size()) z_.resize(o.z_.size(), CycPoly1(d_));
  for (std::size_t a = 0; a < o.z_.size(); ++a) z_[a] += o.z_[a];
  trim();
  return *this;
}

CycPoly2& CycPoly2::operator-=(const CycPoly2& o) {
  require_same_ring(d_, o.d_);
  if (o.z_.size() > z_.size()) z_.resize(o.z_.size(), CycPoly1(d_));
  for (std::size_t a = 0; a < o.z_.size(); ++a) z_[a] -= o.z_[a];
  trim();
  return *this;
}

bool operator==(const CycPoly2& a, const CycPoly2& b) { return a.d_ == b.d_ && a.z_ == b.z_; }

CycPoly2 CycPoly2::scale(const CycInt& s) const {
  CycPoly2 r(d_);
  r.z_.reserve(z_.size());
  for (const auto& p : z_) r.z_.push_back(p.scale(s));
  r.trim();
  return r;
}

CycPoly2 CycPoly2::pow(unsigned e) const {
  CycPoly2 r = constant(CycInt(d_, 1)), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

// ---------------------------------------------------------------- products

namespace {

CycPoly2 mul_schoolbook(const CycPoly2& a, const CycPoly2& b) {
  int d = a.d();
  int E = 2 * cyc_rank(d) - 1;
  int da = a.deg_z(), db = b.deg_z();
  std::vector<std::vector<NZ>> na(da + 1), nb(db + 1);
  for (int i = 0; i <= da; ++i) na[i] = nonzeros(a.zcoeff(i), E);
  for (int j = 0; j <= db; ++j) nb[j] = nonzeros(b.zcoeff(j), E);
  std::vector<int> cd(da + db + 1, -1);
  for (int i = 0; i <= da; ++i)
    for (int j = 0; j <= db; ++j)
      if (!na[i].empty() && !nb[j].empty())
        cd[i + j] = std::max(cd[i + j], a.zcoeff(i).degree() + b.zcoeff(j).degree());
  std::vector<CycPoly1> out(da + db + 1, CycPoly1(d));
  for (int s = 0; s <= da + db; ++s) {
    if (cd[s] < 0) continue;
    std::vector<mpz_class> acc(static_cast<std::size_t>(cd[s] + 1) * E);
    for (int i = std::max(0, s - db); i <= std::min(da, s); ++i) addmul_nz(acc, na[i], nb[s - i]);
    out[s] = from_unreduced(d, acc, E);
  }
  return CycPoly2(d, std::move(out));
}

struct Layout {
  int g;        // z-exponent stride
  std::size_t za;  // slots per c-row (in units of E)
  int E;        // coordinate stride
};

void gather_slots(const CycPoly2& p, const Layout& L, std::vector<detail::Slot>& out) {
  int phi = cyc_rank(p.d());
  for (int a = 0; a <= p.deg_z(); ++a) {
    const auto& raw = p.zcoeff(a).raw();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (sgn(raw[i]) == 0) continue;
      std::size_t b = i / phi, k = i % phi;
      out.push_back({(b * L.za + static_cast<std::size_t>(a / L.g)) * L.E + k, &raw[i]});
    }
  }
}

CycPoly2 scatter_slots(int d, std::vector<mpz_class>& digits, const Layout& L, int deg_z, int deg_c) {
  int phi = cyc_rank(d);
  std::vector<CycPoly1> out(deg_z + 1, CycPoly1(d));
  std::vector<std::vector<mpz_class>> acc(deg_z / L.g + 1);
  for (std::size_t ai = 0; ai < acc.size(); ++ai) acc[ai].resize(static_cast<std::size_t>(deg_c + 1) * L.E);
  for (int b = 0; b <= deg_c; ++b)
    for (std::size_t ai = 0; ai < acc.size(); ++ai)
      for (int k = 0; k < L.E; ++k) {
        auto& src = digits[(b * L.za + ai) * L.E + k];
        if (sgn(src) != 0) mpz_swap(acc[ai][b * L.E + k].get_mpz_t(), src.get_mpz_t());
      }
  for (std::size_t ai = 0; ai < acc.size(); ++ai) {
    if (L.E == 1 && phi > 1) {
      // Rational layout: widen to phi coordinates.
      std::vector<mpz_class> wide(static_cast<std::size_t>(deg_c + 1) * phi);
      for (int b = 0; b <= deg_c; ++b) mpz_swap(wide[b * phi].get_mpz_t(), acc[ai][b].get_mpz_t());
      CycPoly1 p(d);
      p.raw() = std::move(wide);
      p.trim();
      out[ai * L.g] = std::move(p);
    } else if (L.E == phi) {
      CycPoly1 p(d);
      p.raw() = std::move(acc[ai]);
      p.trim();
      out[ai * L.g] = std::move(p);
    } else {
      out[ai * L.g] = from_unreduced(d, acc[ai], L.E);
    }
  }
  return CycPoly2(d, std::move(out));
}

CycPoly2 mul_kronecker(const CycPoly2& a, const CycPoly2& b) {
  int d = a.d(), phi = cyc_rank(d);
  bool rational = a.is_rational() && b.is_rational();
  int g = std::gcd(a.z_stride(), b.z_stride());
  if (g == 0) g = 1;
  int dz = a.deg_z() + b.deg_z(), dc = a.deg_c() + b.deg_c();
  Layout L{g, static_cast<std::size_t>(dz / g + 1), rational ? 1 : 2 * phi - 1};
  std::size_t nslots = static_cast<std::size_t>(dc + 1) * L.za * L.E;
  std::size_t terms = std::min(a.nnz(), b.nnz()) * (rational ? 1 : phi);
  std::size_t kbits = a.max_bits() + b.max_bits() + bitlen(terms) + 2;
  std::size_t kl = (kbits + 63) / 64;
  std::vector<detail::Slot> sa, sb;
  gather_slots(a, L, sa);
  gather_slots(b, L, sb);
  mpz_class pa = detail::kronecker_pack(sa, nslots, kl);
  mpz_class pb = detail::kronecker_pack(sb, nslots, kl);
  sa.clear();
  sb.clear();
  pa *= pb;
  pb = 0;
  auto digits = detail::kronecker_unpack(pa, nslots, kl);
  pa = 0;
  return scatter_slots(d, digits, L, dz, dc);
}

}  // namespace

CycPoly2 multiply(const CycPoly2& a, const CycPoly2& b, MulKernel k) {
  require_same_ring(a.d(), b.d());
  if (a.is_zero() || b.is_zero()) return CycPoly2(a.d());
  if (k == MulKernel::Auto) {
    double work = static_cast<double>(a.nnz()) * static_cast<double>(b.nnz());
    k = work > 4.0e5 ? MulKernel::Kronecker : MulKernel::Schoolbook;
  }
  return k == MulKernel::Kronecker ? mul_kronecker(a, b) : mul_schoolbook(a, b);
}

CycPoly2 operator*(const CycPoly2& a, const CycPoly2& b) { return multiply(a, b); }

// ---------------------------------------------------------------- division

namespace {

CycPoly2 div_schoolbook(const CycPoly2& a, const CycPoly2& b) {
  int d = a.d();
  int m = b.deg_z(), n = a.deg_z();
  const CycPoly1& lc = b.zcoeff(m);
  bool unit_lc = lc.degree() == 0 && lc.lead().is_one();
  std::vector<CycPoly1> rem = a.zcoeffs();
  std::vector<CycPoly1> q(n - m + 1, CycPoly1(d));
  for (int i = n; i >= m; --i) {
    if (rem[i].is_zero()) continue;
    CycPoly1 t = unit_lc ? rem[i] : rem[i].divexact(lc);
    for (int j = 0; j <= m; ++j)
      if (!b.zcoeff(j).is_zero()) rem[i - m + j] -= t * b.zcoeff(j);
    q[i - m] = std::move(t);
  }
  for (int i = 0; i < m; ++i)
    if (!rem[i].is_zero()) throw NonZeroRemainder("bivariate division leaves a remainder");
  return CycPoly2(d, std::move(q));
}

// Only valid when b has rational coefficients: then a = b * q holds
// coordinate by coordinate and survives Kronecker packing unchanged.
CycPoly2 div_kronecker(const CycPoly2& a, const CycPoly2& b) {
  int d = a.d(), phi = cyc_rank(d);
  int qz = a.deg_z() - b.deg_z(), qc = a.deg_c() - b.deg_c();
  if (qz < 0 || qc < 0) throw NonZeroRemainder("divisor degree exceeds dividend degree");
  int g = std::gcd(a.z_stride(), b.z_stride());
  if (g == 0) g = 1;
  Layout L{g, static_cast<std::size_t>(a.deg_z() / g + 1), a.is_rational() ? 1 : phi};
  std::size_t na = static_cast<std::size_t>(a.deg_c() + 1) * L.za * L.E;
  std::size_t nq = static_cast<std::size_t>(qc + 1) * L.za * L.E;
  std::size_t kbits = std::max<std::size_t>(a.max_bits(), 64) + 64;
  for (int attempt = 0; attempt < 3; ++attempt, kbits *= 2) {
    std::size_t kl = (kbits + 63) / 64;
    std::vector<detail::Slot> sa, sb;
    gather_slots(a, L, sa);
    gather_slots(b, L, sb);
    mpz_class pa = detail::kronecker_pack(sa, na, kl);
    mpz_class pb = detail::kronecker_pack(sb, na, kl);
    mpz_class r;
    mpz_tdiv_qr(pa.get_mpz_t(), r.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
    if (sgn(r) != 0) throw NonZeroRemainder("bivariate division leaves a remainder");
    pb = 0;
    std::vector<mpz_class> digits;
    try {
      digits = detail::kronecker_unpack(pa, nq, kl);
    } catch (const Error&) {
      continue;
    }
    pa = 0;
    CycPoly2 q = scatter_slots(d, digits, L, qz, qc);
    if (multiply(b, q) == a) return q;
  }
  return div_schoolbook(a, b);
}

}  // namespace

CycPoly2 divide_exact(const CycPoly2& a, const CycPoly2& b, DivKernel k) {
  require_same_ring(a.d(), b.d());
  if (b.is_zero()) throw NonZeroRemainder("division by the zero polynomial");
  if (a.is_zero()) return CycPoly2(a.d());
  if (a.deg_z() < b.deg_z()) throw NonZeroRemainder("divisor z-degree exceeds dividend z-degree");
  if (k == DivKernel::Auto) {
    double work = static_cast<double>(a.nnz()) * static_cast<double>(b.nnz());
    k = (b.is_rational() && work > 4.0e5) ? DivKernel::Kronecker : DivKernel::Schoolbook;
  }
  if (k == DivKernel::Kronecker && !b.is_rational())
    throw PreconditionViolated("packed division needs a divisor with rational coefficients");
  return k == DivKernel::Kronecker ? div_kronecker(a, b) : div_schoolbook(a, b);
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const CycPoly2& p) {
  nlohmann::json zc = nlohmann::json::array();
  int phi = cyc_rank(p.d());
  for (int a = 0; a <= p.deg_z(); ++a) {
    nlohmann::json cc = nlohmann::json::array();
    const auto& raw = p.zcoeff(a).raw();
    for (std::size_t b = 0; b < raw.size() / phi; ++b) {
      nlohmann::json coords = nlohmann::json::array();
      for (int k = 0; k < phi; ++k) coords.push_back(raw[b * phi + k].get_str());
      cc.push_back(std::move(coords));
    }
    zc.push_back(std::move(cc));
  }
  return {{"schema", 1}, {"d", p.d()}, {"z_coeffs", std::move(zc)}};
}

CycPoly2 poly_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || j.at("schema").get<int>() != 1) throw MalformedInput("unsupported schema");
    int d = j.at("d").get<int>();
    if (d < 2) throw MalformedInput("ring order must be at least 2");
    int phi = cyc_rank(d);
    const auto& zc = j.at("z_coeffs");
    if (!zc.is_array()) throw MalformedInput("z_coeffs must be an array");
    std::vector<CycPoly1> rows;
    for (const auto& cc : zc) {
      if (!cc.is_array()) throw MalformedInput("c-coefficient list must be an array");
      CycPoly1 row(d);
      row.raw().resize(cc.size() * phi);
      for (std::size_t b = 0; b < cc.size(); ++b) {
        const auto& coords = cc[b];
        if (!coords.is_array() || static_cast<int>(coords.size()) != phi)
          throw MalformedInput("each coefficient needs exactly phi(d) coordinates");
        for (int k = 0; k < phi; ++k) {
          const auto& s = coords[k];
          if (!s.is_string()) throw MalformedInput("coordinates are decimal strings");
          if (row.raw()[b * phi + k].set_str(s.get<std::string>(), 10) != 0)
            throw MalformedInput("bad decimal coordinate: " + s.get<std::string>());
        }
      }
      row.trim();
      rows.push_back(std::move(row));
    }
    return CycPoly2(d, std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("malformed polynomial json: ") + e.what());
  }
}

}  // namespace dynacurve
