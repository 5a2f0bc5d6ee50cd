#include "alexandrov/functors.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace alexandrov;
using fixtures::mat;

namespace {

const Field F2 = Field::prime(2);
const Field F5 = Field::prime(5);
const Field Q = Field::rationals();

}  // namespace

TEST_CASE("pullback relabels stalks") {
  Poset c3 = fixtures::chain(3);
  Poset c2 = fixtures::chain(2);
  Sheaf<Rat> t = Sheaf<Rat>::validate(
      c2, Q, {1, 2}, {{c2.index_of("1"), c2.index_of("0"), mat<Rat>(1, 2, {3, 4})}});

  CHECK(pullback(MonotoneMap::identity(c2), t) == t);

  MonotoneMap collapse = check_monotone({{"0", "0"}, {"1", "0"}, {"2", "1"}}, c3, c2);
  Sheaf<Rat> pulled = pullback(collapse, t);
  CHECK(pulled.dims() == std::vector<long>{1, 1, 2});
  CHECK(mat_equal(pulled.rho(2, 0), t.rho(1, 0)));
  CHECK(mat_equal(pulled.rho(1, 0), identity_mat<Rat>(1)));

  // constant map to the point pulls a space back to the constant sheaf
  Poset pt = Poset::point();
  Sheaf<Fp> value = constant_sheaf<Fp>(pt, F2, 3);
  Sheaf<Fp> pulled2 = pullback(MonotoneMap::constant(fixtures::circ4(), pt, 0), value);
  CHECK(pulled2 == constant_sheaf<Fp>(fixtures::circ4(), F2, 3));

  CHECK_THROWS_AS(pullback(collapse, constant_sheaf<Rat>(c3, Q, 1)), BaseMismatch);
}

TEST_CASE("restriction to subsets") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> c = constant_sheaf<Fp>(circ, F2, 2);
  CHECK(restrict_sheaf(c, Subset::all(circ)) == constant_sheaf<Fp>(circ, F2, 2));

  Sheaf<Fp> sub = restrict_sheaf(c, Subset::of_ids(circ, {"a", "c"}));
  CHECK(sub.base().size() == 2);
  CHECK(sub == constant_sheaf<Fp>(sub.base(), F2, 2));

  // skyscraper restricted to the complement of the up-set vanishes
  Sheaf<Fp> sky = skyscraper<Fp>(circ, "a", F2, 1);
  Sheaf<Fp> outside = restrict_sheaf(sky, up_set(circ, "a").complement());
  CHECK(outside.is_zero());
}

TEST_CASE("skyscraper stalks sit on the up-set") {
  Poset c3 = fixtures::chain(3);
  CHECK(skyscraper<Fp>(c3, "0", F2, 1).dims() == std::vector<long>{1, 1, 1});
  CHECK(skyscraper<Fp>(c3, "2", F2, 1).dims() == std::vector<long>{0, 0, 1});
  CHECK(skyscraper<Rat>(fixtures::circ4(), "a", Q, 1).dims() == std::vector<long>{1, 0, 1, 1});
  CHECK_THROWS_AS(skyscraper<Fp>(c3, 9, F2, 1), UnknownElement);

  // and equal the direct image of the value along the one-point map
  Poset pt = Poset::point();
  for (const std::string& at : {"0", "1", "2"}) {
    MonotoneMap sigma = MonotoneMap::constant(pt, c3, c3.index_of(at));
    CHECK(pushforward(sigma, constant_sheaf<Fp>(pt, F2, 2)) == skyscraper<Fp>(c3, at, F2, 2));
  }

  CHECK(is_flabby(skyscraper<Fp>(fixtures::circ4(), "b", F2, 2)).ok);
}

TEST_CASE("pushforward along identity and to the point") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> c = constant_sheaf<Fp>(circ, F2, 1);
  CHECK(pushforward(MonotoneMap::identity(circ), c) == c);

  Sheaf<Fp> global = pushforward(MonotoneMap::constant(circ, Poset::point(), 0), c);
  CHECK(global.dims() == std::vector<long>{1});  // the global sections of the circle
}

TEST_CASE("pushforward preserves flabbiness and left exactness") {
  Poset wedge = fixtures::wedge();
  Poset c2 = fixtures::chain(2);
  MonotoneMap f = check_monotone({{"a", "0"}, {"c", "1"}, {"d", "1"}}, wedge, c2);

  Sheaf<Fp> flabby_src = skyscraper<Fp>(wedge, "a", F2, 2);
  REQUIRE(is_flabby(flabby_src).ok);
  CHECK(is_flabby(pushforward(f, flabby_src)).ok);

  // left exactness: 0 -> ker -> F -> sky at the top of the wedge
  Sheaf<Fp> c = constant_sheaf<Fp>(wedge, F2, 1);
  Sheaf<Fp> sky_c = skyscraper<Fp>(wedge, "c", F2, 1);
  std::vector<Mat<Fp>> comp{Mat<Fp>::Zero(0, 1), identity_mat<Fp>(1), Mat<Fp>::Zero(0, 1)};
  auto h = validate_morphism<Fp>(comp, c, sky_c);
  auto ker = kernel_sheaf(h);
  REQUIRE(is_exact_sequence<Fp>({ker.map, h}));

  PushforwardData<Fp> pk = pushforward_data(f, ker.sheaf);
  PushforwardData<Fp> pc = pushforward_data(f, c);
  PushforwardData<Fp> ps = pushforward_data(f, sky_c);
  SheafMorphism<Fp> pg = pushforward_map(ker.map, pk, pc);
  SheafMorphism<Fp> ph = pushforward_map(h, pc, ps);
  for (int j = 0; j < c2.size(); ++j) {
    CHECK(kernel_basis(Mat<Fp>(pg.component(j))).dim() == 0);
    CHECK(kernel_basis(Mat<Fp>(ph.component(j))) == image_basis(Mat<Fp>(pg.component(j))));
  }
}

TEST_CASE("pullback is exact on short exact sequences") {
  Poset circ = fixtures::circ4();
  Poset c2 = fixtures::chain(2);
  MonotoneMap f = check_monotone({{"0", "a"}, {"1", "c"}}, c2, circ);

  Sheaf<Fp> b = constant_sheaf<Fp>(circ, F2, 2);
  Sheaf<Fp> sky = skyscraper<Fp>(circ, "c", F2, 2);
  std::vector<Mat<Fp>> comp{Mat<Fp>::Zero(0, 2), Mat<Fp>::Zero(0, 2), identity_mat<Fp>(2),
                            Mat<Fp>::Zero(0, 2)};
  auto h = validate_morphism<Fp>(comp, b, sky);
  auto ker = kernel_sheaf(h);
  REQUIRE(is_short_exact(ker.map, h));
  CHECK(is_short_exact(pullback_map(f, ker.map), pullback_map(f, h)));
}

TEST_CASE("cofinal pullback identifies global sections") {
  // directed posets, image cofinal: the comparison map is an isomorphism
  Poset c3 = fixtures::chain(3);
  Poset vee = fixtures::vee();
  MonotoneMap f = check_monotone({{"0", "a"}, {"1", "m"}, {"2", "m"}}, c3, vee);
  REQUIRE(is_cofinal(f.image()));

  for (long d : {1L, 2L}) {
    Sheaf<Rat> t = constant_sheaf<Rat>(vee, Q, d);
    Mat<Rat> cmp = pullback_global_map(f, t);
    CHECK(cmp.rows() == cmp.cols());
    CHECK(rank(cmp) == cmp.rows());
  }

  Sheaf<Rat> sky = skyscraper<Rat>(vee, "b", Q, 3);
  Mat<Rat> cmp = pullback_global_map(f, sky);
  CHECK(cmp.rows() == cmp.cols());
  CHECK(rank(cmp) == cmp.rows());
}

TEST_CASE("pullback preserves weak flabbiness between directed posets") {
  Poset vee = fixtures::vee();
  Poset c2 = fixtures::chain(2);
  MonotoneMap f = check_monotone({{"0", "a"}, {"1", "m"}}, c2, vee);
  Sheaf<Fp> w = skyscraper<Fp>(vee, "a", F2, 1);
  REQUIRE(is_weakly_flabby(w).ok);
  CHECK(is_weakly_flabby(pullback(f, w)).ok);
}

TEST_CASE("pullback of a skyscraper from a directed source is weakly flabby") {
  // source directed, target arbitrary
  Poset c3 = fixtures::chain(3);
  Poset circ = fixtures::circ4();
  MonotoneMap f = check_monotone({{"0", "a"}, {"1", "c"}, {"2", "c"}}, c3, circ);
  for (const std::string& at : {"a", "b", "c", "d"})
    CHECK(is_weakly_flabby(pullback(f, skyscraper<Fp>(circ, at, F2, 2))).ok);
}

TEST_CASE("adjunction witnesses on the worked examples") {
  Poset c2 = fixtures::chain(2);
  Poset pt = Poset::point();

  // identity: unit and counit are identities
  Sheaf<Rat> c = constant_sheaf<Rat>(c2, Q, 2);
  auto w_id = adjunction(MonotoneMap::identity(c2), c, c);
  CHECK(w_id.triangles_ok);
  for (int i = 0; i < 2; ++i) {
    CHECK(mat_equal(Mat<Rat>(w_id.unit.component(i)), identity_mat<Rat>(2)));
    CHECK(mat_equal(Mat<Rat>(w_id.counit.component(i)), identity_mat<Rat>(2)));
  }
  CHECK(w_id.hom_dim_source_side == w_id.hom_dim_target_side);

  // projection to the point with 1-dim data: both Hom spaces are lines
  auto w_pi = adjunction(MonotoneMap::constant(c2, pt, 0), constant_sheaf<Rat>(c2, Q, 1),
                         constant_sheaf<Rat>(pt, Q, 1));
  CHECK(w_pi.triangles_ok);
  CHECK(w_pi.hom_dim_source_side == 1);
  CHECK(w_pi.hom_dim_target_side == 1);

  // one-point inclusion at the top: counit is an isomorphism there
  MonotoneMap sigma = MonotoneMap::constant(pt, c2, c2.index_of("1"));
  auto w_sky = adjunction(sigma, constant_sheaf<Rat>(pt, Q, 1), skyscraper<Rat>(c2, "1", Q, 1));
  CHECK(w_sky.triangles_ok);
  CHECK(rank(Mat<Rat>(w_sky.counit.component(0))) == 1);
  CHECK(w_sky.hom_dim_source_side == w_sky.hom_dim_target_side);
}

TEST_CASE("galois connections make direct and inverse images coincide") {
  Poset c3 = fixtures::chain(3);
  Poset c2 = fixtures::chain(2);
  MonotoneMap f = check_monotone({{"0", "0"}, {"1", "0"}, {"2", "1"}}, c3, c2);
  auto g = galois_right_adjoint(f);
  REQUIRE(g.has_value());

  CHECK(pushforward_equals_pullback(f, *g, constant_sheaf<Fp>(c3, F2, 1)));
  CHECK(pushforward_equals_pullback(f, *g, skyscraper<Fp>(c3, "2", F2, 2)));
  CHECK(pushforward_equals_pullback(MonotoneMap::identity(c3), MonotoneMap::identity(c3),
                                    constant_sheaf<Fp>(c3, F2, 2)));

  Sheaf<Rat> rich = Sheaf<Rat>::validate(
      c3, Q, {2, 1, 2},
      {{c3.index_of("1"), c3.index_of("0"), mat<Rat>(2, 1, {1, 2})},
       {c3.index_of("2"), c3.index_of("1"), mat<Rat>(1, 2, {3, 0})}});
  CHECK(pushforward_equals_pullback(f, *g, rich));

  MonotoneMap not_adjoint = MonotoneMap::constant(c2, c3, 0);
  CHECK_THROWS_AS(pushforward_equals_pullback(f, not_adjoint, rich), NotGalois);
}
