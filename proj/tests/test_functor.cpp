#include "doctest.h"

#include <random>

#include "unchained/functor.hpp"

using namespace unchained;

namespace {

Signature cherry() {
  return Signature::polynomial({{"leaf", 0}, {"node", 2}});
}

std::vector<Signature> test_signatures() {
  return {
      cherry(),
      Signature::polynomial({{"z", 0}, {"s", 1}}),
      Signature::polynomial({{"a", 0}, {"b", 0}, {"c", 0}}),
      Signature::polynomial({}),
      Signature::powerset(),
  };
}

} // namespace

TEST_CASE("apply_obj cardinalities") {
  // cherry functor FX = {o} + X*X
  FObj f0 = apply_obj(cherry(), FinSet{});
  CHECK(f0.carrier().size() == 1);

  FObj f2 = apply_obj(cherry(), FinSet::from_names({"a", "b"}));
  CHECK(f2.carrier().size() == 5);

  FObj p3 = apply_obj(Signature::powerset(), FinSet::from_names({"a", "b", "c"}));
  CHECK(p3.carrier().size() == 8);

  CHECK_THROWS_AS(apply_obj(cherry(), FinSet::ordinal(1000), 100), SizeCapError);
}

TEST_CASE("encoding is canonical and invertible") {
  FinSet x = FinSet::from_names({"a", "b"});
  for (const Signature& sig : test_signatures()) {
    FObj f = apply_obj(sig, x);
    for (int i = 0; i < f.carrier().size(); ++i) {
      CHECK(f.encode(f.decode(i)) == i);
      CHECK(f.carrier().name(i) == felem_name(sig, x, f.decode(i)));
    }
  }
  // readable names
  FObj fc = apply_obj(cherry(), x);
  CHECK(fc.carrier().contains("leaf"));
  CHECK(fc.carrier().contains("node(a,b)"));
  FObj fp = apply_obj(Signature::powerset(), x);
  CHECK(fp.carrier().contains("{}"));
  CHECK(fp.carrier().contains("{a,b}"));
}

TEST_CASE("functor laws, exhaustive on small sets") {
  // F(id) = id and F(g o h) = F(g) o F(h) for all composable pairs with a
  // source of size <= 4 (exhaustive) for each test signature
  for (const Signature& sig : test_signatures()) {
    for (int nx = 0; nx <= 4; ++nx) {
      FinSet x = FinSet::ordinal(nx);
      FObj fx = apply_obj(sig, x);
      CHECK(apply_fn(fx, fx, FinFn::identity(x)) == FinFn::identity(fx.carrier()));
      for (int ny = 0; ny <= 2; ++ny) {
        FinSet y = FinSet::ordinal(ny);
        FObj fy = apply_obj(sig, y);
        std::uint64_t fns_xy = 1;
        for (int i = 0; i < nx; ++i) fns_xy *= static_cast<std::uint64_t>(ny);
        if (ny == 0 && nx > 0) fns_xy = 0;
        for (std::uint64_t a = 0; a < fns_xy; ++a) {
          std::vector<int> ta(static_cast<std::size_t>(nx));
          std::uint64_t rest = a;
          for (int i = 0; i < nx; ++i) {
            ta[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(ny));
            rest /= static_cast<std::uint64_t>(ny);
          }
          FinFn h(x, y, ta);
          for (int nz = 0; nz <= 2; ++nz) {
            FinSet z = FinSet::ordinal(nz);
            FObj fz = apply_obj(sig, z);
            std::uint64_t fns_yz = 1;
            for (int i = 0; i < ny; ++i) fns_yz *= static_cast<std::uint64_t>(nz);
            if (nz == 0 && ny > 0) fns_yz = 0;
            for (std::uint64_t b = 0; b < fns_yz; ++b) {
              std::vector<int> tb(static_cast<std::size_t>(ny));
              std::uint64_t r2 = b;
              for (int i = 0; i < ny; ++i) {
                tb[static_cast<std::size_t>(i)] =
                    static_cast<int>(r2 % static_cast<std::uint64_t>(nz));
                r2 /= static_cast<std::uint64_t>(nz);
              }
              FinFn g(y, z, tb);
              CHECK(apply_fn(fx, fz, compose(g, h)) ==
                    compose(apply_fn(fy, fz, g), apply_fn(fx, fy, h)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("morphism action maps args pointwise; direct image for subsets") {
  FinSet x = FinSet::from_names({"a", "b"});
  FinSet y = FinSet::from_names({"c"});
  FinFn h(x, y, {0, 0});

  FObj fx = apply_obj(cherry(), x);
  FObj fy = apply_obj(cherry(), y);
  FinFn fh = apply_fn(fx, fy, h);
  CHECK(fy.carrier().name(fh(fx.carrier().index_of("node(a,b)"))) == "node(c,c)");

  // powerset: non-injective map shrinks a 2-element subset to 1
  FObj px = apply_obj(Signature::powerset(), x);
  FObj py = apply_obj(Signature::powerset(), y);
  FinFn ph = apply_fn(px, py, h);
  CHECK(py.carrier().name(ph(px.carrier().index_of("{a,b}"))) == "{c}");
}
