#include "alexandrov/cohomology.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace alexandrov;
using fixtures::mat;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field Q = Field::rationals();

}  // namespace

TEST_CASE("godement sheaf of the worked examples") {
  Poset c3 = fixtures::chain(3);
  auto g = godement_sheaf(constant_sheaf<Rat>(c3, Q, 1));
  CHECK(g.sheaf.dims() == std::vector<long>{1, 2, 3});
  Mat<Rat> top = g.mono.component(2);
  REQUIRE(top.rows() == 3);
  for (int r = 0; r < 3; ++r) CHECK(top(r, 0) == Rat(1));

  Poset c2 = fixtures::chain(2);
  auto sky = godement_sheaf(skyscraper<Rat>(c2, "1", Q, 1));
  CHECK(sky.sheaf.dims() == std::vector<long>{0, 1});

  Sheaf<Fp> f = constant_sheaf<Fp>(fixtures::anti2(), F2, 2);
  CHECK(godement_sheaf(f).sheaf == f);

  CHECK(is_flabby(g.sheaf).ok);
  CHECK(is_flabby(sky.sheaf).ok);
  for (int i = 0; i < 3; ++i)
    CHECK(kernel_basis(Mat<Rat>(g.mono.component(i))).dim() == 0);
}

TEST_CASE("godement resolutions terminate and are exact") {
  Poset pt = Poset::point();
  auto on_point = godement_resolution(constant_sheaf<Rat>(pt, Q, 2), 2);
  CHECK(on_point.terms[0].dims() == std::vector<long>{2});
  CHECK(on_point.terms[1].is_zero());
  CHECK(on_point.terms[2].is_zero());
  CHECK(on_point.verify_exactness());

  auto zero = godement_resolution(zero_sheaf<Fp>(fixtures::circ4(), F2), 2);
  for (const auto& term : zero.terms) CHECK(term.is_zero());

  auto circ = godement_resolution(constant_sheaf<Fp>(fixtures::circ4(), F2, 1), 2);
  CHECK(circ.verify_exactness());
  for (const auto& term : circ.terms) CHECK(is_flabby(term).ok);
  CHECK(circ.terms[2].is_zero());  // dies above the chain length
}

TEST_CASE("cohomology through the resolution") {
  // a maximum makes global sections exact: only H^0 survives
  for (const Poset& p : {fixtures::chain(3), fixtures::vee()}) {
    CohomologyReport r = cohomology_via_godement(constant_sheaf<Fp>(p, F2, 1));
    CHECK(r.dim(0) == 1);
    for (long n = 1; n <= r.base_chain_length + 1; ++n) CHECK(r.dim(n) == 0);
  }

  CohomologyReport circ = cohomology_via_godement(constant_sheaf<Fp>(fixtures::circ4(), F2, 1));
  CHECK(circ.degrees == std::vector<long>{1, 1});

  for (const std::string& at : {"a", "b", "d"}) {
    CohomologyReport sky =
        cohomology_via_godement(skyscraper<Rat>(fixtures::circ4(), at, Q, 3));
    CHECK(sky.dim(0) == 3);
    CHECK(sky.dim(1) == 0);
  }

  CHECK_THROWS_AS(
      cohomology_via_godement(constant_sheaf<Fp>(fixtures::circ4(), F2, 1), 1, 5),
      DegreeBoundTooSmall);
}

TEST_CASE("oracle complex shapes and values") {
  OracleComplex<Fp> circ = oracle_complex(constant_sheaf<Fp>(fixtures::circ4(), F2, 1));
  CHECK(circ.complex.dims() == std::vector<long>{4, 4});
  CHECK(complex_cohomology(circ.complex, 0) == 1);
  CHECK(complex_cohomology(circ.complex, 1) == 1);

  Sheaf<Rat> anti = Sheaf<Rat>::validate(fixtures::anti2(), Q, {2, 3}, {});
  OracleComplex<Rat> oa = oracle_complex(anti);
  CHECK(oa.complex.dims() == std::vector<long>{5});
  CHECK(complex_cohomology(oa.complex, 0) == 5);

  OracleComplex<Rat> c2 = oracle_complex(constant_sheaf<Rat>(fixtures::chain(2), Q, 1));
  CHECK(c2.complex.dims() == std::vector<long>{2, 1});
  Mat<Rat> d0 = c2.complex.differential(0);
  CHECK(d0(0, 0) == Rat(-1));
  CHECK(d0(0, 1) == Rat(1));
  CHECK(complex_cohomology(c2.complex, 0) == 1);
  CHECK(complex_cohomology(c2.complex, 1) == 0);
}

TEST_CASE("derived limits agree across pipelines on fixtures") {
  for (const Poset& p :
       {fixtures::chain(3), fixtures::anti2(), fixtures::circ4(), fixtures::wedge(),
        fixtures::vee()}) {
    Sheaf<Fp> c = constant_sheaf<Fp>(p, F2, 1);
    CohomologyReport r = derived_limit(c);
    CHECK(r.method == Method::both);
    CHECK(r.dim(0) == global_sections(c).dim);
  }

  CHECK(derived_limit(constant_sheaf<Fp>(fixtures::circ4(), F2, 1)).dim(1) == 1);

  // flabby hulls are acyclic
  auto hull = godement_sheaf(constant_sheaf<Fp>(fixtures::circ4(), F2, 1)).sheaf;
  CohomologyReport r = derived_limit(hull);
  for (long n = 1; n <= r.base_chain_length; ++n) CHECK(r.dim(n) == 0);
}

TEST_CASE("long exact sequence of an identity extension") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> a = constant_sheaf<Fp>(circ, F2, 1);
  Sheaf<Fp> zero = zero_sheaf<Fp>(circ, F2);
  LESReport les = long_exact_sequence(SheafMorphism<Fp>::identity(a),
                                      SheafMorphism<Fp>::zero(a, zero));
  CHECK(les.exact);
  CHECK(les.dims_sub == les.dims_mid);
  for (long r : les.connecting_rank) CHECK(r == 0);
  for (long d : les.dims_quot) CHECK(d == 0);
}

TEST_CASE("long exact sequence of the godement extension on the circle") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> f = constant_sheaf<Fp>(circ, F2, 1);
  auto g = godement_sheaf(f);
  auto q = cokernel_sheaf(g.mono);
  REQUIRE(is_short_exact(g.mono, q.map));

  LESReport les = long_exact_sequence(g.mono, q.map);
  CHECK(les.exact);
  CHECK(les.dims_sub == std::vector<long>{1, 1});
  CHECK(les.dims_mid == std::vector<long>{4, 0});
  CHECK(les.dims_quot == std::vector<long>{4, 0});
  // H^0(quotient) must surject onto H^1 of the subsheaf
  CHECK(les.connecting_rank[0] == 1);
}

TEST_CASE("long exact sequence of a split extension adds dimensions") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> a = constant_sheaf<Fp>(circ, F2, 1);
  Sheaf<Fp> c = skyscraper<Fp>(circ, "c", F2, 2);
  Sheaf<Fp> b = direct_sum(a, c);
  std::vector<Mat<Fp>> into, onto;
  for (int i = 0; i < circ.size(); ++i) {
    Mat<Fp> gi = Mat<Fp>::Zero(b.dim(i), a.dim(i));
    gi.block(0, 0, a.dim(i), a.dim(i)) = identity_mat<Fp>(a.dim(i));
    into.push_back(gi);
    Mat<Fp> hi = Mat<Fp>::Zero(c.dim(i), b.dim(i));
    hi.block(0, a.dim(i), c.dim(i), c.dim(i)) = identity_mat<Fp>(c.dim(i));
    onto.push_back(hi);
  }
  LESReport les = long_exact_sequence(validate_morphism(into, a, b), validate_morphism(onto, b, c));
  CHECK(les.exact);
  for (long n = 0; n <= les.top_degree; ++n)
    CHECK(les.dims_mid[static_cast<std::size_t>(n)] ==
          les.dims_sub[static_cast<std::size_t>(n)] + les.dims_quot[static_cast<std::size_t>(n)]);
  for (long r : les.connecting_rank) CHECK(r == 0);
}

TEST_CASE("stabilization indices along finite chains") {
  Poset c4 = fixtures::chain(4);
  Sheaf<Fp> f = Sheaf<Fp>::validate(
      c4, F2, {1, 1, 1, 1},
      {{c4.index_of("1"), c4.index_of("0"), mat<Fp>(1, 1, {1})},
       {c4.index_of("2"), c4.index_of("1"), mat<Fp>(1, 1, {0})},
       {c4.index_of("3"), c4.index_of("2"), mat<Fp>(1, 1, {1})}});
  MLReport r = ml_check(f);
  CHECK(c4.id_of(r.stabilization_index[0]) == "2");

  // surjective transitions stabilize immediately
  MLReport s = ml_check(constant_sheaf<Rat>(c4, Q, 2));
  for (std::size_t pos = 0; pos < s.elements.size(); ++pos)
    CHECK(s.stabilization_index[pos] == s.elements[pos]);

  MLReport z = ml_check(zero_sheaf<Fp>(c4, F2));
  for (std::size_t pos = 0; pos < z.elements.size(); ++pos)
    CHECK(z.stabilization_index[pos] == z.elements[pos]);

  CHECK_THROWS_AS(ml_check(constant_sheaf<Fp>(fixtures::vee(), F2, 1)), NotAChain);
}

TEST_CASE("euler characteristic is preserved by cohomology") {
  for (const Poset& p : {fixtures::circ4(), fixtures::wedge(), fixtures::chain(3)}) {
    Sheaf<Fp> f = constant_sheaf<Fp>(p, F2, 2);
    OracleComplex<Fp> oc = oracle_complex(f);
    long chi_c = oc.complex.euler_characteristic();
    long chi_h = 0;
    CohomologyReport r = derived_limit(f);
    for (long n = 0; n < static_cast<long>(r.degrees.size()); ++n)
      chi_h += (n % 2 == 0 ? r.dim(n) : -r.dim(n));
    CHECK(chi_c == chi_h);
  }
}

TEST_CASE("additivity of cohomology under direct sums") {
  Poset circ = fixtures::circ4();
  Sheaf<Fp> a = constant_sheaf<Fp>(circ, F2, 1);
  Sheaf<Fp> b = skyscraper<Fp>(circ, "d", F2, 2);
  CohomologyReport ra = derived_limit(a);
  CohomologyReport rb = derived_limit(b);
  CohomologyReport rs = derived_limit(direct_sum(a, b));
  for (long n = 0; n <= rs.base_chain_length; ++n) CHECK(rs.dim(n) == ra.dim(n) + rb.dim(n));
}

TEST_CASE("weakly flabby sheaves on directed posets are acyclic") {
  for (const Poset& p : {fixtures::chain(3), fixtures::vee()}) {
    for (long d : {1L, 2L}) {
      Sheaf<Fp> c = constant_sheaf<Fp>(p, F2, d);
      REQUIRE(is_weakly_flabby(c).ok);
      CohomologyReport r = derived_limit(c);
      for (long n = 1; n <= r.base_chain_length; ++n) CHECK(r.dim(n) == 0);
    }
  }
}
