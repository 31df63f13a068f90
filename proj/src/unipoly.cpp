#include "simplicit/unipoly.hpp"

#include <algorithm>

namespace simplicit {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rat& c) {
  UniPoly p;
  if (c != 0) p.c_.push_back(c);
  return p;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& UniPoly::leading() const {
  if (c_.empty()) fail(ErrorCode::zero_polynomial, "leading coefficient of zero");
  return c_.back();
}

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat(static_cast<long>(i)));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UniPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rat& c) const {
  if (c == 0) return UniPoly();
  std::vector<Rat> r = c_;
  for (auto& x : r) x *= c;
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) fail(ErrorCode::zero_polynomial, "division by zero polynomial");
  std::vector<Rat> rem = a.c_;
  int db = b.degree();
  std::vector<Rat> quot(a.degree() >= db ? a.degree() - db + 1 : 0, Rat(0));
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    if (rem[k] == 0) continue;
    Rat q = rem[k] / b.c_.back();
    quot[k - db] = q;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b.c_[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = a.scaled(Rat(1) / a.leading());
  return a;
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero()) fail(ErrorCode::zero_polynomial, "squarefree part of zero");
  if (degree() == 0) return *this;
  UniPoly g = gcd(*this, derivative());
  return divmod(*this, g).first;
}

int UniPoly::strip_root_at_zero() {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k == c_.size()) fail(ErrorCode::zero_polynomial, "stripping the zero polynomial");
  c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
  return static_cast<int>(k);
}

namespace {

// Positive rescale to a primitive integer coefficient vector.
UniPoly primitive_positive(const UniPoly& p) {
  if (p.is_zero()) return p;
  Int l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, denominator(c));
  Int g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, numerator(c) * (l / denominator(c)));
  if (g == 0) g = 1;
  return p.scaled(Rat(l, g));
}

}  // namespace

SturmChain::SturmChain(const UniPoly& p) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "Sturm chain of zero");
  seq_.push_back(primitive_positive(p));
  if (p.degree() == 0) return;
  seq_.push_back(primitive_positive(p.derivative()));
  while (seq_.back().degree() > 0) {
    UniPoly r = UniPoly::divmod(seq_[seq_.size() - 2], seq_.back()).second;
    if (r.is_zero()) break;
    seq_.push_back(primitive_positive(r.scaled(Rat(-1))));
  }
}

int SturmChain::variations(const Rat& x) const {
  int count = 0, prev = 0;
  for (const auto& p : seq_) {
    int s = sign_of(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

long SturmChain::count(const Rat& a, const Rat& b) const {
  if (!(a < b)) fail(ErrorCode::precondition, "empty interval for root count");
  return variations(a) - variations(b);
}

Rat cauchy_root_bound(const UniPoly& p) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "root bound of zero");
  Rat m(0);
  const Rat& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Rat v = abs(Rat(p.coeff(static_cast<std::size_t>(i)) / lead));
    if (v > m) m = v;
  }
  return Rat(1) + m;
}

std::optional<RootBracket> smallest_positive_root(const UniPoly& p, const Rat& tol) {
  if (p.is_zero())
    fail(ErrorCode::zero_polynomial, "root isolation needs a nonzero polynomial");
  if (!(tol > 0)) fail(ErrorCode::invalid_input, "tolerance must be positive");
  UniPoly q = p;
  q.strip_root_at_zero();
  if (q.degree() == 0) return std::nullopt;
  UniPoly sf = q.squarefree_part();
  if (sf.degree() == 0) return std::nullopt;

  SturmChain chain(sf);
  Rat lo(0), hi = cauchy_root_bound(sf);
  long cnt = chain.count(lo, hi);
  if (cnt == 0) return std::nullopt;

  /* Invariant: (lo, hi] contains the smallest positive root, sf(lo) != 0,
   * and cnt is the number of roots in (lo, hi]. */
  bool hi_root = sf.eval(hi) == 0;
  while ((cnt > 1 || hi - lo > tol) && !(cnt == 1 && hi_root)) {
    Rat mid = (lo + hi) / 2;
    long left = chain.count(lo, mid);
    if (left >= 1) {
      hi = mid;
      cnt = left;
      hi_root = sf.eval(hi) == 0;
    } else {
      lo = mid;  // sf(mid) != 0 since (lo, mid] holds no root
    }
  }
  if (hi_root) return RootBracket{hi, hi, true};
  return RootBracket{lo, hi, false};
}

}  // namespace simplicit
