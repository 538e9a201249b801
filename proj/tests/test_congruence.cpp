#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aal/congruence.hpp"
#include "aal/construct.hpp"
#include "oracles.hpp"

using namespace aal;
using fixtures::alg;

namespace {

const std::vector<std::string> kUpTo6 = {"B4", "DM4", "K3", "L2", "L3", "L4",
                                         "L5", "M3", "WK3", "WK3c", "box5", "ch1",
                                         "ch2", "fepbad"};

Congruence blocks(const FiniteAlgebra& a, const std::vector<std::string>& bs) {
  std::vector<std::vector<Element>> out;
  for (const auto& b : bs) out.push_back(parse_elements(a, b));
  return Congruence::from_blocks(a.size(), out);
}

ElementPair pair(const FiniteAlgebra& a, const char* x, const char* y) {
  return {*a.element_named(x), *a.element_named(y)};
}

}  // namespace

TEST_CASE("partitions are canonical") {
  std::vector<Element> l1{5, 5, 2, 7}, l2{0, 0, 1, 2};
  CHECK(Congruence(l1) == Congruence(l2));
  CHECK(Congruence(l1).partition() == l2);
  auto c = Congruence::from_blocks(5, {{0, 1}, {2, 4}, {3}});
  CHECK(c.to_string() == "[[0,1],[2,4],[3]]");
  CHECK(to_json(c).dump() == "[[0,1],[2,4],[3]]");
  auto d = Congruence::from_blocks(5, {{0, 1}, {3, 4}, {2}});
  CHECK(c.meet(d) == Congruence::from_blocks(5, {{0, 1}}));
  CHECK(c.join(d) == Congruence::from_blocks(5, {{0, 1}, {2, 3, 4}}));
  CHECK(c.meet(d).is_subset_of(c));
  CHECK_FALSE(c.is_subset_of(d));
}

TEST_CASE("cg_generated") {
  auto box = alg("box5");
  CHECK(cg_generated(box, std::span<const ElementPair>{}).is_identity());
  std::vector<ElementPair> p{pair(box, "a1", "b")};
  CHECK(cg_generated(box, p) == blocks(box, {"0,1", "a1,b", "a2"}));
  auto k3 = alg("K3");
  std::vector<ElementPair> q{pair(k3, "0", "1")};
  CHECK(cg_generated(k3, q).is_total());
}

TEST_CASE("cg_generated is the least congruence above the pairs") {
  for (const auto& name : kUpTo6) {
    auto a = alg(name);
    auto cons = oracle::congruences(a);
    for (Element x = 0; x < a.size(); ++x) {
      for (Element y = x + 1; y < a.size(); ++y) {
        std::vector<Element> best;
        for (const auto& c : cons)
          if (c[x] == c[y] && (best.empty() || oracle::refines(c, best))) best = c;
        std::vector<ElementPair> p{{x, y}};
        CHECK_MESSAGE(cg_generated(a, p) == Congruence(best), name);
      }
    }
  }
}

TEST_CASE("all_congruences") {
  auto k3 = alg("K3");
  auto triv = trivial_algebra(k3.signature());
  auto t = all_congruences(triv);
  REQUIRE(t.congruences.size() == 1);
  CHECK(t.congruences[0].is_identity());

  auto ck3 = all_congruences(k3);
  CHECK(ck3.congruences.size() == 2);
  CHECK(ck3.contains(Congruence::identity(3)));
  CHECK(ck3.contains(Congruence::total(3)));

  auto box = alg("box5");
  auto cb = all_congruences(box);
  CHECK(cb.contains(blocks(box, {"0,1", "a1,b", "a2"})));
  CHECK(cb.contains(blocks(box, {"0,1", "a2,b", "a1"})));
  CHECK(cb.closed_under_meet);

  for (const auto& name : {"B4", "DM4", "K3", "L3", "L4", "L5", "M3", "WK3", "WK3c", "box5",
                           "ch1", "ch2", "ch3", "fepbad"}) {
    auto a = alg(name);
    std::vector<Congruence> want;
    for (const auto& p : oracle::congruences(a)) want.emplace_back(p);
    std::sort(want.begin(), want.end());
    CHECK_MESSAGE(all_congruences(a).congruences == want, name);
  }
  CHECK_THROWS_AS(all_congruences(alg("ch5")), SizeBudgetExceeded);
}

TEST_CASE("is_compatible") {
  auto box = alg("box5");
  auto f1 = fixtures::set(box, "1");
  CHECK(is_compatible(Congruence::identity(5), f1));
  CHECK_FALSE(is_compatible(Congruence::total(5), f1));
  CHECK(is_compatible(Congruence::total(5), Subset(5)));
  CHECK(is_compatible(Congruence::total(5), Subset::full(5)));
  CHECK_FALSE(is_compatible(blocks(box, {"0,1", "a1,b", "a2"}), f1));
  CHECK(is_compatible(blocks(box, {"0,1", "a1,b", "a2"}), fixtures::set(box, "0,1,a2")));
}

TEST_CASE("unary polynomials") {
  auto k3 = alg("K3");
  auto triv = trivial_algebra(k3.signature());
  CHECK(unary_polynomials(triv).functions == std::vector<std::vector<Element>>{{0}});

  Signature none;
  FiniteAlgebra bare("bare", none, 3, {});
  CHECK(unary_polynomials(bare).functions == std::vector<std::vector<Element>>{{0, 1, 2}});

  auto clone = unary_polynomials(k3);
  CHECK(clone.contains({0, 1, 2}));
  CHECK(clone.contains({2, 1, 0}));
  CHECK(clone.contains({0, 1, 1}));  // x and ½
  CHECK(clone.contains({1, 1, 1}));
  for (const auto& f : clone.functions) CHECK(f.size() == 3);
}

TEST_CASE("leibniz_congruence") {
  auto k3 = alg("K3");
  CHECK(leibniz_congruence(k3, Subset::full(3)).is_total());
  CHECK(leibniz_congruence(k3, fixtures::set(k3, "1")).is_identity());
  auto wk3 = alg("WK3");
  CHECK(leibniz_congruence(wk3, fixtures::set(wk3, "1,½")).is_identity());
}

TEST_CASE("leibniz is the largest compatible congruence") {
  for (const auto& name : kUpTo6) {
    auto a = alg(name);
    auto cons = oracle::congruences(a);
    auto clone = unary_polynomials(a);
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << a.size()); ++f) {
      std::vector<Element> best;
      for (const auto& c : cons)
        if (oracle::compatible(c, f) && (best.empty() || oracle::refines(best, c))) best = c;
      for (const auto& c : cons)
        if (oracle::compatible(c, f)) CHECK(oracle::refines(c, best));
      auto om = leibniz_congruence(clone, oracle::to_subset(a.size(), f));
      CHECK_MESSAGE(om == Congruence(best), name << " F=" << f);
      CHECK(is_congruence(a, om));
      CHECK(is_compatible(om, oracle::to_subset(a.size(), f)));
    }
  }
}

TEST_CASE("is_congruence agrees with the oracle") {
  for (const auto& name : {"K3", "box5", "M3", "WK3", "DM4"}) {
    auto a = alg(name);
    for (const auto& p : oracle::partitions(a.size()))
      CHECK(is_congruence(a, Congruence(p)) == oracle::is_congruence(a, p));
  }
}
