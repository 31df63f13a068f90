#include "simplicit/poly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace simplicit {

Rat rat_from_string(std::string_view text) {
  auto bad = [&] {
    fail(ErrorCode::syntax_error,
         "invalid rational literal '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad();
  auto digits = [&](std::string_view v) {
    if (v.empty()) bad();
    for (char c : v)
      if (c < '0' || c > '9') bad();
  };
  Int num, den = 1;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    if (dot != std::string_view::npos) bad();
    std::string_view n = s.substr(0, slash), d = s.substr(slash + 1);
    digits(n);
    digits(d);
    num = Int(std::string(n));
    den = Int(std::string(d));
    if (den == 0) fail(ErrorCode::denominator_zero, "zero denominator in literal");
  } else if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad();
    if (!ip.empty()) digits(ip);
    if (!fp.empty()) digits(fp);
    num = ip.empty() ? Int(0) : Int(std::string(ip));
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else {
    digits(s);
    num = Int(std::string(s));
  }
  if (neg) num = -num;
  return Rat(num, den);
}

std::string rat_to_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rat& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.vars_.size())
    fail(ErrorCode::internal, "variable index out of range");
  Exponents e(p.vars_.size(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rat MultiPoly::constant_value() const {
  Exponents zero(vars_.size(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rat(0) : it->second;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (int k : e) t += k;
    d = std::max(d, t);
  }
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::min_exponent(std::size_t var) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] < m) m = e[var];
    first = false;
  }
  return m;
}

void MultiPoly::add_term(const Exponents& exp, const Rat& coef) {
  if (exp.size() != vars_.size())
    fail(ErrorCode::internal, "exponent vector length mismatch");
  for (int k : exp)
    if (k < 0) fail(ErrorCode::internal, "negative exponent in polynomial term");
  if (coef == 0) return;
  auto [it, inserted] = terms_.emplace(exp, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ != o.vars_)
    fail(ErrorCode::internal, "polynomial variable lists differ");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(vars_);
  Exponents e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(vars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

Rat MultiPoly::eval(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size())
    fail(ErrorCode::internal, "evaluation point dimension mismatch");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t *= rat_pow(point[i], static_cast<unsigned>(e[i]));
    acc += t;
  }
  return acc;
}

double MultiPoly::eval_double(const std::vector<double>& point) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = rat_to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& p,
                                                 const MultiPoly& q) {
  p.check_compatible(q);
  if (q.is_zero()) fail(ErrorCode::zero_polynomial, "division by zero polynomial");
  MultiPoly rem = p;
  MultiPoly quot(p.vars_);
  const auto& [qe, qc] = *q.terms_.rbegin();
  Exponents diff(p.vars_.size());
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = re[i] - qe[i];
      if (diff[i] < 0) return std::nullopt;
    }
    Rat c = rc / qc;
    MultiPoly mono(p.vars_);
    mono.terms_.emplace(diff, c);
    quot.add_term(diff, c);
    rem = rem - mono * q;
  }
  return quot;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += vars_[i];
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out << rat_to_string(a);
    } else {
      if (a != 1) out << rat_to_string(a) << "*";
      out << factors;
    }
  }
  return out.str();
}

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)),
      den_(MultiPoly::constant(num_.vars(), Rat(1))) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.vars() != den_.vars())
    fail(ErrorCode::internal, "rational function variable lists differ");
  if (den_.is_zero())
    fail(ErrorCode::denominator_zero, "denominator is the zero polynomial");
  if (den_.is_constant()) {
    Rat c = den_.constant_value();
    num_ = num_.scaled(Rat(1) / c);
    den_ = MultiPoly::constant(num_.vars(), Rat(1));
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.num_.is_zero())
    fail(ErrorCode::denominator_zero, "division by an identically zero expression");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
  RationalFunction r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return RationalFunction(r.num_, r.den_);
}

Rat RationalFunction::eval(const std::vector<Rat>& point) const {
  Rat d = den_.eval(point);
  if (d == 0)
    fail(ErrorCode::denominator_zero, "denominator vanishes at evaluation point");
  return num_.eval(point) / d;
}

double RationalFunction::eval_double(const std::vector<double>& point) const {
  return num_.eval_double(point) / den_.eval_double(point);
}

MultiPoly coefficient_of(const MultiPoly& p, std::size_t var, int k) {
  MultiPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != k) continue;
    MultiPoly::Exponents r = e;
    r[var] = 0;
    out.add_term(r, c);
  }
  return out;
}

namespace {

MultiPoly times_var_pow(const MultiPoly& p, std::size_t v, int k) {
  MultiPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly::Exponents r = e;
    r[v] += k;
    out.add_term(r, c);
  }
  return out;
}

MultiPoly gcd_mv(const MultiPoly& a, const MultiPoly& b);

// GCD of the v-coefficients; all inputs share p's variable list.
MultiPoly content_in(const MultiPoly& p, std::size_t v) {
  MultiPoly acc(p.vars());
  for (int k = 0; k <= p.degree_in(v); ++k) {
    MultiPoly c = coefficient_of(p, v, k);
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? c : gcd_mv(acc, c);
    if (acc.is_constant()) break;
  }
  return acc;
}

MultiPoly primitive_part(const MultiPoly& p, std::size_t v) {
  MultiPoly c = content_in(p, v);
  auto q = MultiPoly::divide_exact(p, c);
  if (!q) fail(ErrorCode::internal, "content does not divide its polynomial");
  return *q;
}

/* Pseudo-remainder of a by b in variable v: repeatedly scale a by the
 * leading v-coefficient of b and cancel the top term.  Suits a primitive
 * remainder sequence, where content is stripped after every step anyway. */
MultiPoly prem(MultiPoly a, const MultiPoly& b, std::size_t v) {
  int db = b.degree_in(v);
  MultiPoly lcb = coefficient_of(b, v, db);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int da = a.degree_in(v);
    MultiPoly lca = coefficient_of(a, v, da);
    a = a * lcb - times_var_pow(b * lca, v, da - db);
    if (!a.is_zero() && a.degree_in(v) >= da)
      fail(ErrorCode::internal, "pseudo-division failed to reduce the degree");
  }
  return a;
}

MultiPoly gcd_mv(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.vars(), Rat(1));

  // Main variable: first one where either input has positive degree.
  std::size_t v = 0;
  while (a.degree_in(v) <= 0 && b.degree_in(v) <= 0) ++v;
  if (a.degree_in(v) <= 0) return gcd_mv(a, content_in(b, v));
  if (b.degree_in(v) <= 0) return gcd_mv(content_in(a, v), b);

  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly cont = gcd_mv(ca, cb);
  MultiPoly r0 = primitive_part(a, v), r1 = primitive_part(b, v);
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);

  for (;;) {
    MultiPoly rem = prem(r0, r1, v);
    if (rem.is_zero()) return cont * primitive_part(r1, v);
    if (rem.degree_in(v) == 0) return cont;
    r0 = std::move(r1);
    r1 = primitive_part(rem, v);
  }
}

}  // namespace

MultiPoly multipoly_gcd(const MultiPoly& a, const MultiPoly& b) {
  return gcd_mv(a, b);
}

RationalFunction reduced(const RationalFunction& f) {
  if (f.num().is_zero())
    return RationalFunction{MultiPoly::constant(f.num().vars(), Rat(0))};
  MultiPoly num = f.num(), den = f.den();
  MultiPoly g = multipoly_gcd(num, den);
  if (!g.is_constant()) {
    auto qn = MultiPoly::divide_exact(num, g);
    auto qd = MultiPoly::divide_exact(den, g);
    if (!qn || !qd) fail(ErrorCode::internal, "gcd does not divide its inputs");
    num = std::move(*qn);
    den = std::move(*qd);
  }
  const Rat& lead = den.terms().rbegin()->second;
  return RationalFunction{num.scaled(Rat(1) / lead), den.scaled(Rat(1) / lead)};
}

RationalFunction substitute(const MultiPoly& p,
                            const std::vector<RationalFunction>& repl) {
  if (repl.size() != p.vars().size())
    fail(ErrorCode::internal, "substitution arity mismatch");
  if (repl.empty()) fail(ErrorCode::internal, "substitution with no variables");
  const auto& vars = repl[0].num().vars();
  RationalFunction acc{MultiPoly::constant(vars, Rat(0))};
  for (const auto& [e, c] : p.terms()) {
    RationalFunction t{MultiPoly::constant(vars, c)};
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * repl[i].pow(static_cast<unsigned>(e[i]));
    acc = acc + t;
  }
  return acc;
}

}  // namespace simplicit
