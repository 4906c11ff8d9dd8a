#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cuspgamma/fields.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

using namespace cuspgamma;

namespace {

// Independent addition oracle: base-p digit arithmetic on the packed encoding.
u32 packed_add(u64 p, u32 deg, u32 a, u32 b) {
  u32 res = 0;
  u64 place = 1;
  for (u32 i = 0; i < deg; ++i) {
    u32 da = static_cast<u32>((a / place) % p);
    u32 db = static_cast<u32>((b / place) % p);
    res += static_cast<u32>(((da + db) % p) * place);
    place *= p;
  }
  return res;
}

u64 inverse_mod(u64 a, u64 m) {
  i64 r0 = static_cast<i64>(m), r1 = static_cast<i64>(a % m), t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  REQUIRE(r0 == 1);
  return static_cast<u64>(((t0 % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
}

}  // namespace

TEST_CASE("unit group order and generator") {
  auto tw = build_tower(3, 1, 2);
  CHECK(tw->order() == 9);
  CHECK(tw->unit_order() == 8);
  FqElem g = tw->gen();
  FqElem x = tw->one();
  std::set<u64> seen;
  for (int i = 0; i < 8; ++i) {
    x = tw->mul(x, g);
    if (i < 7) CHECK(x != tw->one());
    if (!x.is_zero()) seen.insert(x.index());
  }
  CHECK(x == tw->one());
  CHECK(seen.size() == 8);
}

TEST_CASE("divisor lattice of L = 12") {
  auto tw = build_tower(2, 1, 12);
  CHECK(tw->order() == 4096);
  for (u32 d : {1, 2, 3, 4, 6, 12}) CHECK(tw->supports_level(d));
  CHECK_FALSE(tw->supports_level(5));
}

TEST_CASE("limit and primality errors") {
  try {
    build_tower(3, 1, 21);
    FAIL("expected FieldTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FieldTooLarge);
  }
  try {
    build_tower(6, 1, 2);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrime);
  }
}

TEST_CASE("zech addition matches digit addition") {
  for (auto [p, f, L] : std::vector<std::tuple<u64, u32, u32>>{{2, 1, 6}, {3, 1, 4}, {2, 2, 2}, {5, 1, 2}}) {
    auto tw = build_tower(p, f, L);
    if (tw->order() <= 81) {
      for (u64 a = 0; a < tw->order(); ++a)
        for (u64 b = 0; b < tw->order(); ++b) {
          FqElem x = tw->from_packed(static_cast<u32>(a));
          FqElem y = tw->from_packed(static_cast<u32>(b));
          u32 want = packed_add(p, tw->degree(), static_cast<u32>(a), static_cast<u32>(b));
          CHECK(tw->packed(tw->add(x, y)) == want);
        }
    } else {
      SplitMix64 rng(42);
      for (int i = 0; i < 10000; ++i) {
        u32 a = static_cast<u32>(rng.below(tw->order()));
        u32 b = static_cast<u32>(rng.below(tw->order()));
        FqElem x = tw->from_packed(a);
        FqElem y = tw->from_packed(b);
        CHECK(tw->packed(tw->add(x, y)) == packed_add(p, tw->degree(), a, b));
      }
    }
  }
}

TEST_CASE("subfields are closed under addition and multiplication") {
  auto tw = build_tower(2, 1, 6);
  for (u32 d : {1, 2, 3, 6}) {
    std::vector<FqElem> sub;
    for (u64 t = 0; t <= tw->subfield_units(d); ++t) sub.push_back(tw->subfield_element(d, t));
    for (const auto& x : sub)
      for (const auto& y : sub) {
        CHECK(tw->in_subfield(tw->add(x, y), d));
        CHECK(tw->in_subfield(tw->mul(x, y), d));
      }
  }
}

TEST_CASE("norm basics") {
  auto tw = build_tower(3, 1, 2);
  FqElem g = tw->gen();
  CHECK(norm(g, 2, 1) == tw->from_index(4));
  CHECK(norm(tw->one(), 2, 1) == tw->one());
  CHECK(norm(tw->zero(), 2, 1) == tw->zero());
}

TEST_CASE("norm surjectivity F_4 -> F_2") {
  auto tw = build_tower(2, 1, 2);
  std::set<u64> images;
  for (u64 j = 0; j < 3; ++j) {
    FqElem nx = norm(tw->from_index(j), 2, 1);
    CHECK(tw->in_subfield(nx, 1));
    images.insert(nx.index());
  }
  CHECK(images == std::set<u64>{0});  // F_2^x = {1}
}

TEST_CASE("trace basics") {
  auto tw = build_tower(2, 1, 2);
  CHECK(trace(tw->zero(), 2, 1) == tw->zero());
  // with g^2 + g + 1 = 0 over F_2: g + g^2 = 1
  FqElem g = tw->gen();
  CHECK(trace(g, 2, 1) == tw->one());

  auto tw9 = build_tower(3, 1, 2);
  std::map<u32, int> fibers;  // packed trace value -> count
  for (u64 t = 0; t < 9; ++t) {
    FqElem x = tw9->subfield_element(2, t);
    FqElem tr = trace(x, 2, 1);
    CHECK(tw9->in_subfield(tr, 1));
    fibers[tw9->packed(tr)]++;
  }
  CHECK(fibers.size() == 3);  // onto F_3
  for (auto& [v, count] : fibers) CHECK(count == 3);
}

TEST_CASE("norm and trace are multiplicative / additive and transitive") {
  auto tw = build_tower(3, 1, 4);  // q^L = 81
  const u32 d = 4;
  std::vector<FqElem> elems;
  for (u64 t = 0; t <= tw->subfield_units(d); ++t) elems.push_back(tw->subfield_element(d, t));
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      CHECK(norm(tw->mul(x, y), 4, 1) == tw->mul(norm(x, 4, 1), norm(y, 4, 1)));
      CHECK(trace(tw->add(x, y), 4, 1) == tw->add(trace(x, 4, 1), trace(y, 4, 1)));
    }
    CHECK(norm(norm(x, 4, 2), 2, 1) == norm(x, 4, 1));
    CHECK(trace(trace(x, 4, 2), 2, 1) == trace(x, 4, 1));
  }
}

TEST_CASE("frobenius") {
  auto tw = build_tower(3, 1, 2);
  FqElem g = tw->gen();
  CHECK(frobenius(g, 0) == g);
  CHECK(frobenius(g, 1) == tw->pow(g, 3));
  for (u64 t = 1; t <= 2; ++t) {
    FqElem a = tw->subfield_element(1, t);
    CHECK(frobenius(a, 1) == a);
  }
  for (u64 i = 0; i < 8; ++i)
    for (u64 j = 0; j < 8; ++j) {
      FqElem x = tw->from_index(i), y = tw->from_index(j);
      CHECK(frobenius(tw->add(x, y), 1) == tw->add(frobenius(x, 1), frobenius(y, 1)));
    }
  auto tw8 = build_tower(2, 3, 2);  // q = 8, L = 2
  for (u64 i = 0; i < tw8->unit_order(); i += 7) {
    FqElem x = tw8->from_index(i);
    CHECK(frobenius(x, 2) == x);
    CHECK(frobenius(frobenius(x, 1), -1) == x);
  }
}

TEST_CASE("frobenius orbit size equals subfield level") {
  auto tw = build_tower(2, 1, 6);
  for (u64 i = 0; i < tw->unit_order(); ++i) {
    FqElem x = tw->from_index(i);
    u32 level = tw->subfield_level(x);
    std::set<u64> orbit;
    FqElem y = x;
    for (u32 k = 0; k < tw->L(); ++k) {
      orbit.insert(y.index());
      y = frobenius(y, 1);
    }
    CHECK(orbit.size() == level);
  }
}

TEST_CASE("canonical subfield generators come from the norm") {
  auto tw = build_tower(2, 1, 6);
  for (u32 d : {1, 2, 3, 6}) CHECK(norm(tw->gen(), 6, d) == tw->gen(d));
}

TEST_CASE("tower cache roundtrip") {
  auto dir = std::filesystem::temp_directory_path() / "cuspgamma_test_cache";
  std::filesystem::create_directories(dir);
  auto file = dir / "p3_f1_L2.tower";
  auto tw = build_tower(3, 1, 2);
  tw->save(file);
  auto loaded = FieldTower::load(file, {3, 1, 2, 0});
  CHECK(loaded->modulus() == tw->modulus());
  CHECK(loaded->zech() == tw->zech());

  {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    os << "GTWR1garbage";
  }
  CHECK_THROWS_AS(FieldTower::load(file, {3, 1, 2, 0}), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("variant towers give an isomorphic model") {
  for (auto [p, f, L] : std::vector<std::tuple<u64, u32, u32>>{{3, 1, 2}, {2, 1, 6}}) {
    auto a = build_tower(p, f, L, FieldTower::kDefaultLimit, 0);
    auto b = build_tower(p, f, L, FieldTower::kDefaultLimit, 1);
    CHECK(a->modulus() != b->modulus());
    u64 units = a->unit_order();
    u64 t = tower_relabel_factor(*a, *b);
    u64 s = inverse_mod(t, units);  // iota(g_a) = g_b^s
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
      u64 ka = rng.below(units), kb = rng.below(units);
      FqElem xa = a->from_index(ka), ya = a->from_index(kb);
      FqElem sum_a = a->add(xa, ya);
      FqElem xb = b->from_index(ka * s % units), yb = b->from_index(kb * s % units);
      FqElem sum_b = b->add(xb, yb);
      if (sum_a.is_zero()) {
        CHECK(sum_b.is_zero());
      } else {
        CHECK(sum_b == b->from_index(sum_a.index() * s % units));
      }
    }
  }
}

TEST_CASE("registry towers are shared") {
  auto a = get_tower(3, 1, 2);
  auto b = get_tower(3, 1, 2);
  CHECK(a.get() == b.get());
}
