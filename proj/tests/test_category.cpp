#include "doctest.h"
#include "generators.hpp"
#include "sgk/morphism.hpp"

using namespace sgk;
using namespace sgk::testutil;

TEST_CASE("associativity and identity laws on a random corpus") {
  Gen gen(0xC0FFEEu);
  for (int trial = 0; trial < 40; ++trial) {
    Domain e1 = Domain::whole(gen.space("a"));
    Domain e2 = Domain::whole(gen.space("b"));
    Domain e3 = Domain::whole(gen.space("c"));
    Domain e4 = Domain::whole(gen.space("d"));
    SpolMorphism f = gen.morphism(e1, e2);
    SpolMorphism g = gen.morphism(e2, e3);
    SpolMorphism h = gen.morphism(e3, e4);
    SpolMorphism left = compose(compose(h, g), f);
    SpolMorphism right = compose(h, compose(g, f));
    REQUIRE(left == right);
    REQUIRE(revalidates(left));
    CHECK(compose(f, identity(e1)) == f);
    CHECK(compose(identity(e2), f) == f);
  }
}

TEST_CASE("substitution oracle agrees with the coproduct route") {
  Gen gen(0xBEEFu);
  for (int trial = 0; trial < 60; ++trial) {
    Domain e1 = Domain::whole(gen.space("a"));
    Domain e2 = Domain::whole(gen.space("b"));
    Domain e3 = Domain::whole(gen.space("c"));
    SpolMorphism f = gen.morphism(e1, e2);
    SpolMorphism g = gen.morphism(e2, e3);
    REQUIRE(compose(g, f) == compose_oracle(g, f));
  }
}

TEST_CASE("underlying is functorial") {
  Gen gen(0xAB12u);
  for (int trial = 0; trial < 30; ++trial) {
    Domain e1 = Domain::whole(gen.space("a"));
    Domain e2 = Domain::whole(gen.space("b"));
    Domain e3 = Domain::whole(gen.space("c"));
    SpolMorphism f = gen.morphism(e1, e2);
    SpolMorphism g = gen.morphism(e2, e3);
    CHECK(underlying(compose(g, f)) == compose(underlying(g), underlying(f)));
  }
}

TEST_CASE("products compose blockwise") {
  Gen gen(0x5EEDu);
  for (int trial = 0; trial < 20; ++trial) {
    Domain a1 = Domain::whole(gen.space("a"));
    Domain a2 = Domain::whole(gen.space("b"));
    Domain b1 = Domain::whole(gen.space("c"));
    Domain b2 = Domain::whole(gen.space("d"));
    Domain c1 = Domain::whole(gen.space("e"));
    Domain c2 = Domain::whole(gen.space("f"));
    SpolMorphism h = gen.morphism(a1, b1);
    SpolMorphism k = gen.morphism(a2, b2);
    SpolMorphism f = gen.morphism(b1, c1);
    SpolMorphism g = gen.morphism(b2, c2);
    CHECK(compose(product_morphism(f, g), product_morphism(h, k)) ==
          product_morphism(compose(f, h), compose(g, k)));
  }
}

TEST_CASE("composite evaluation stays linear over the even base") {
  Gen gen(0x77AAu);
  for (int trial = 0; trial < 20; ++trial) {
    Domain e1 = Domain::whole(gen.space("a", 2, 2));
    Domain e2 = Domain::whole(gen.space("b", 2, 2));
    Domain e3 = Domain::whole(gen.space("c", 2, 2));
    if (e1.space.p() == 0) continue;
    SpolMorphism f = gen.morphism(e1, e2, 3);
    SpolMorphism g = gen.morphism(e2, e3, 3);
    TensorWord w;
    int len = gen.uniform(0, 2);
    for (int i = 0; i < len; ++i) {
      if (e1.space.q() > 0 && gen.uniform(0, 1))
        w.letters.push_back(Letter{1, gen.uniform(0, e1.space.q() - 1)});
      else
        w.letters.push_back(Letter{0, gen.uniform(0, e1.space.p() - 1)});
    }
    int e = gen.uniform(0, e1.space.p() - 1);
    TensorWord ew;
    ew.letters.push_back(Letter{0, e});
    for (const auto& l : w.letters) ew.letters.push_back(l);
    CHECK(fdb_evaluate(g, f, ew) == fdb_evaluate(g, f, w).partial_even(e));
  }
}
