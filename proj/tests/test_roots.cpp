#include <doctest.h>

#include "helpers.hpp"
#include "simplicit/unipoly.hpp"

using namespace simplicit;
using namespace simplicit::testing;

namespace {

UniPoly up(const std::vector<std::string>& ascending) {
  return UniPoly(qvec(ascending));
}

// (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
const UniPoly kCubic = up({"-6", "11", "-6", "1"});

}  // namespace

TEST_CASE("unipoly: shape and evaluation") {
  UniPoly p = up({"1", "0", "-2"});  // -2x^2 + 1
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rat(3)) == -17);
  CHECK(p.derivative() == up({"0", "-4"}));
  CHECK(UniPoly(qvec({"0", "0"})).is_zero());
  CHECK(up({"3"}).degree() == 0);
  CHECK(UniPoly().degree() == -1);
  CHECK((up({"1", "1"}) * up({"-1", "1"})) == up({"-1", "0", "1"}));
}

TEST_CASE("divmod satisfies a = q*b + r with deg r < deg b") {
  SplitMix64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rat> ac(1 + rng.below(6)), bc(1 + rng.below(4));
    for (auto& c : ac) c = Rat(static_cast<long>(rng.below(11)) - 5);
    for (auto& c : bc) c = Rat(static_cast<long>(rng.below(11)) - 5);
    UniPoly a(ac), b(bc);
    if (b.is_zero()) continue;
    auto [q, r] = UniPoly::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
  CHECK(thrown_code([] { UniPoly::divmod(up({"1"}), UniPoly()); }) ==
        ErrorCode::zero_polynomial);
}

TEST_CASE("gcd is monic and right") {
  UniPoly a = up({"2", "-3", "1"});   // (x-1)(x-2)
  UniPoly b = up({"6", "-5", "1"});   // (x-2)(x-3)
  CHECK(UniPoly::gcd(a, b) == up({"-2", "1"}));
  CHECK(UniPoly::gcd(a, UniPoly()) == up({"2", "-3", "1"}).scaled(Rat(1)));
  CHECK(UniPoly::gcd(UniPoly(), UniPoly()).is_zero());
  // Coprime inputs give 1.
  CHECK(UniPoly::gcd(up({"-1", "1"}), up({"1", "1"})) == up({"1"}));
}

TEST_CASE("squarefree_part removes multiplicity") {
  // (x-1)^2 (x+2) = x^3 - 3x + 2
  UniPoly p = up({"2", "-3", "0", "1"});
  UniPoly s = p.squarefree_part();
  // Same roots, each simple: (x-1)(x+2) up to the inherited leading factor.
  UniPoly expect = up({"-2", "1", "1"});
  CHECK(UniPoly::gcd(s, expect) == expect);
  CHECK(s.degree() == 2);
}

TEST_CASE("strip_root_at_zero") {
  UniPoly p = up({"0", "0", "1", "1"});  // x^2 (x + 1)
  CHECK(p.strip_root_at_zero() == 2);
  CHECK(p == up({"1", "1"}));
  UniPoly q = up({"1", "1"});
  CHECK(q.strip_root_at_zero() == 0);
}

TEST_CASE("sturm: root counts over intervals") {
  SturmChain chain(kCubic);
  CHECK(chain.count(Q("1/2"), Rat(4)) == 3);
  CHECK(chain.count(Q("1/2"), Rat(3)) == 3);   // root exactly at b counts
  CHECK(chain.count(Q("1/2"), Q("5/2")) == 2);
  CHECK(chain.count(Rat(0), Rat(1)) == 1);
  CHECK(chain.count(Rat(3), Rat(10)) == 0);
  CHECK(chain.count(Rat(-5), Rat(0)) == 0);
  CHECK(thrown_code([&] { chain.count(Rat(2), Rat(2)); }) ==
        ErrorCode::precondition);
}

TEST_CASE("cauchy bound dominates every real root") {
  CHECK(cauchy_root_bound(kCubic) == 12);
  CHECK(cauchy_root_bound(up({"-4", "0", "1"})) == 5);  // roots +-2
  // Scaling the polynomial does not move the roots past the bound.
  UniPoly scaled = kCubic.scaled(Q("1/7"));
  CHECK(cauchy_root_bound(scaled) == 12);
}

TEST_CASE("smallest_positive_root: bracketing") {
  // (x-1)(x-3): the smaller root wins.
  UniPoly p = up({"3", "-4", "1"});
  auto b = smallest_positive_root(p, Q("1/1000000"));
  REQUIRE(b.has_value());
  CHECK(b->lo < 1);
  CHECK(Rat(1) <= b->hi);
  CHECK(b->hi - b->lo <= Q("1/1000000"));

  // x(x-2): the root at zero is ignored.
  auto c = smallest_positive_root(up({"0", "-2", "1"}), Q("1/4096"));
  REQUIRE(c.has_value());
  CHECK(c->lo < 2);
  CHECK(Rat(2) <= c->hi);
}

TEST_CASE("smallest_positive_root: exact hit collapses the bracket") {
  // (x-1)(x-2) has Cauchy bound 4, so bisection lands on 1 exactly.
  auto b = smallest_positive_root(up({"2", "-3", "1"}), Q("1/1024"));
  REQUIRE(b.has_value());
  CHECK(b->exact);
  CHECK(b->hi == 1);
  CHECK(b->value() == 1);
}

TEST_CASE("smallest_positive_root: multiple roots and misses") {
  // (x-2)^2: squarefree reduction still isolates 2.
  auto b = smallest_positive_root(up({"4", "-4", "1"}), Q("1/1024"));
  REQUIRE(b.has_value());
  CHECK(b->lo < 2);
  CHECK(Rat(2) <= b->hi);

  CHECK(!smallest_positive_root(up({"1", "0", "1"}), Q("1/2")).has_value());
  CHECK(!smallest_positive_root(up({"1", "1"}), Q("1/2")).has_value());
  // x^3 only vanishes at zero.
  CHECK(!smallest_positive_root(up({"0", "0", "0", "1"}), Q("1/2")).has_value());

  CHECK(thrown_code([] { smallest_positive_root(UniPoly(), Q("1/2")); }) ==
        ErrorCode::zero_polynomial);
  CHECK(thrown_code([] { smallest_positive_root(up({"1", "1"}), Rat(0)); }) ==
        ErrorCode::invalid_input);
}
