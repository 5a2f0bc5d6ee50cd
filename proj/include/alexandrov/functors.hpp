#pragma once

#include <utility>
#include <vector>

#include "alexandrov/common.hpp"
#include "alexandrov/sheaf.hpp"

namespace alexandrov {

/// Inverse image along a monotone map: stalks and transitions are those of
/// the target sheaf, relabeled through f. Exact in each stalk by
/// construction.
template <class S>
Sheaf<S> pullback(const MonotoneMap& f, const Sheaf<S>& t) {
  if (t.base() != f.target()) throw BaseMismatch("pullback: sheaf does not live on f's target");
  const Poset& src = f.source();
  std::vector<long> dims;
  for (int i = 0; i < src.size(); ++i) dims.push_back(t.dim(f(i)));
  std::vector<Mat<S>> table(static_cast<std::size_t>(src.size()) * static_cast<std::size_t>(src.size()));
  for (int i = 0; i < src.size(); ++i)
    for (int j = 0; j < src.size(); ++j)
      if (src.leq(j, i)) table[static_cast<std::size_t>(i * src.size() + j)] = t.rho(f(i), f(j));
  return Sheaf<S>::from_table(src, t.field(), std::move(dims), std::move(table));
}

/// Relabel a morphism along f (the inverse image of a morphism).
template <class S>
SheafMorphism<S> pullback_map(const MonotoneMap& f, const SheafMorphism<S>& g) {
  std::vector<Mat<S>> comp;
  for (int i = 0; i < f.source().size(); ++i) comp.push_back(g.component(f(i)));
  return SheafMorphism<S>::validate(pullback(f, g.source()), pullback(f, g.target()),
                                    std::move(comp));
}

/// Restriction to a subset carrying the induced order.
template <class S>
Sheaf<S> restrict_sheaf(const Sheaf<S>& f, const Subset& s) {
  if (s.parent() != f.base()) throw BaseMismatch("restrict: subset of another poset");
  Poset sub = induced_poset(s);
  auto members = s.indices();
  std::vector<long> dims;
  for (int i : members) dims.push_back(f.dim(i));
  int n = sub.size();
  std::vector<Mat<S>> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (sub.leq(b, a))
        table[static_cast<std::size_t>(a * n + b)] =
            f.rho(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
  return Sheaf<S>::from_table(std::move(sub), f.field(), std::move(dims), std::move(table));
}

template <class S>
SheafMorphism<S> restrict_morphism(const SheafMorphism<S>& g, const Subset& s) {
  std::vector<Mat<S>> comp;
  for (int i : s.indices()) comp.push_back(g.component(i));
  return SheafMorphism<S>::validate(restrict_sheaf(g.source(), s), restrict_sheaf(g.target(), s),
                                    std::move(comp));
}

/// Direct image data: the sheaf on the target together with the section
/// space realizing each stalk, kept so that induced maps can be expressed
/// in the same bases later. Stalk at k is the space of sections over
/// f^{-1}(down_set(k)); when that fiber has a maximum m the stalk is
/// literally the source stalk at m.
template <class S>
struct PushforwardData {
  Sheaf<S> sheaf;
  std::vector<SectionSpace<S>> stalks;  // one per target element
};

template <class S>
PushforwardData<S> pushforward_data(const MonotoneMap& f, const Sheaf<S>& s) {
  if (s.base() != f.source()) throw BaseMismatch("pushforward: sheaf does not live on f's source");
  const Poset& tgt = f.target();
  std::vector<SectionSpace<S>> stalks;
  std::vector<long> dims;
  for (int k = 0; k < tgt.size(); ++k) {
    stalks.push_back(sections_any(s, f.preimage(down_set(tgt, k))));
    dims.push_back(stalks.back().dim);
  }
  int n = tgt.size();
  std::vector<Mat<S>> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < n; ++t)
      if (tgt.leq(t, k))
        table[static_cast<std::size_t>(k * n + t)] =
            restriction_between(stalks[static_cast<std::size_t>(k)],
                                stalks[static_cast<std::size_t>(t)]);
  PushforwardData<S> out{
      Sheaf<S>::from_table(tgt, s.field(), std::move(dims), std::move(table)), std::move(stalks)};
  return out;
}

template <class S>
Sheaf<S> pushforward(const MonotoneMap& f, const Sheaf<S>& s) {
  return pushforward_data(f, s).sheaf;
}

/// Direct image of a morphism, in the stalk bases of the given data.
template <class S>
SheafMorphism<S> pushforward_map(const SheafMorphism<S>& g, const PushforwardData<S>& src_data,
                                 const PushforwardData<S>& tgt_data) {
  const Poset& tgt = src_data.sheaf.base();
  std::vector<Mat<S>> comp;
  for (int k = 0; k < tgt.size(); ++k) {
    const SectionSpace<S>& a = src_data.stalks[static_cast<std::size_t>(k)];
    const SectionSpace<S>& b = tgt_data.stalks[static_cast<std::size_t>(k)];
    if (a.over != b.over) throw BaseMismatch("pushforward data computed along different maps");
    auto x = solve(b.inclusion, Mat<S>(blockdiag_on(g, a, b) * a.inclusion));
    if (!x) throw Error("internal: pushed morphism does not preserve sections");
    comp.push_back(std::move(*x));
  }
  return SheafMorphism<S>::validate(src_data.sheaf, tgt_data.sheaf, std::move(comp));
}

/// Skyscraper at j with a d-dimensional value: the direct image of that
/// space under the one-point map hitting j. Stalk d on the up-set of j,
/// zero elsewhere, identity transitions inside the up-set.
template <class S>
Sheaf<S> skyscraper(const Poset& p, int j, const Field& field, long d) {
  if (j < 0 || j >= p.size()) throw UnknownElement("skyscraper point out of range");
  std::vector<long> dims;
  for (int k = 0; k < p.size(); ++k) dims.push_back(p.leq(j, k) ? d : 0);
  int n = p.size();
  std::vector<Mat<S>> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < n; ++t) {
      if (!p.leq(t, k)) continue;
      if (p.leq(j, k) && p.leq(j, t))
        table[static_cast<std::size_t>(k * n + t)] = identity_mat<S>(d);
      else
        table[static_cast<std::size_t>(k * n + t)] =
            Mat<S>::Zero(dims[static_cast<std::size_t>(t)], dims[static_cast<std::size_t>(k)]);
    }
  return Sheaf<S>::from_table(p, field, std::move(dims), std::move(table));
}

template <class S>
Sheaf<S> skyscraper(const Poset& p, const std::string& id, const Field& field, long d) {
  return skyscraper<S>(p, p.index_of(id), field, d);
}

/// Dimension of the space of sheaf morphisms a -> b, by solving the
/// naturality constraints over the covering pairs.
template <class S>
long hom_space_dim(const Sheaf<S>& a, const Sheaf<S>& b) {
  if (a.base() != b.base() || a.field() != b.field())
    throw BaseMismatch("hom space needs a common base");
  const Poset& p = a.base();
  std::vector<long> offset;
  long total = 0;
  for (int i = 0; i < p.size(); ++i) {
    offset.push_back(total);
    total += a.dim(i) * b.dim(i);
  }
  auto unknown = [&](int elem, long row, long col) {  // entry g_elem(row, col)
    return offset[static_cast<std::size_t>(elem)] + row * a.dim(elem) + col;
  };
  long rows = 0;
  for (auto& [i, j] : p.covers()) rows += b.dim(j) * a.dim(i);
  Mat<S> constraints = Mat<S>::Zero(rows, total);
  long r0 = 0;
  for (auto& [i, j] : p.covers()) {
    const Mat<S>& rb = b.rho(i, j);
    const Mat<S>& ra = a.rho(i, j);
    for (long r = 0; r < b.dim(j); ++r)
      for (long c = 0; c < a.dim(i); ++c) {
        long row = r0 + r * a.dim(i) + c;
        for (long k = 0; k < b.dim(i); ++k)
          constraints(row, unknown(i, k, c)) += rb(r, k);
        for (long t = 0; t < a.dim(j); ++t)
          constraints(row, unknown(j, r, t)) -= ra(t, c);
      }
    r0 += b.dim(j) * a.dim(i);
  }
  return kernel_basis(constraints).dim();
}

/// Unit and counit of the inverse-image / direct-image adjunction along f,
/// with the triangle identities and the Hom-set dimension count evaluated.
template <class S>
struct AdjunctionWitness {
  SheafMorphism<S> unit;    // T -> f_* f^{-1} T
  SheafMorphism<S> counit;  // f^{-1} f_* S -> S
  bool triangles_ok = false;
  long hom_dim_source_side = 0;  // dim Hom(f^{-1}T, S)
  long hom_dim_target_side = 0;  // dim Hom(T, f_*S)
};

namespace detail {

/// Unit component at every target element: the compatible family generated
/// by transporting a stalk vector of T into the fiber of the down-set.
template <class S>
SheafMorphism<S> adjunction_unit(const MonotoneMap& f, const Sheaf<S>& t,
                                 const PushforwardData<S>& pushed_pullback) {
  const Poset& tgt = f.target();
  std::vector<Mat<S>> comp;
  for (int j = 0; j < tgt.size(); ++j) {
    const SectionSpace<S>& st = pushed_pullback.stalks[static_cast<std::size_t>(j)];
    Mat<S> family(st.product_dim, t.dim(j));
    for (std::size_t k = 0; k < st.elems.size(); ++k)
      family.block(st.offsets[k], 0, st.block_dims[k], t.dim(j)) = t.rho(j, f(st.elems[k]));
    auto x = solve(st.inclusion, family);
    if (!x) throw Error("internal: unit family is not a section");
    comp.push_back(std::move(*x));
  }
  return SheafMorphism<S>::validate(t, pushed_pullback.sheaf, std::move(comp));
}

/// Counit component at every source element: project the fiber sections of
/// the pushed sheaf to the coordinate of the element itself.
template <class S>
SheafMorphism<S> adjunction_counit(const MonotoneMap& f, const Sheaf<S>& s,
                                   const PushforwardData<S>& pushed) {
  const Poset& src = f.source();
  std::vector<Mat<S>> comp;
  for (int i = 0; i < src.size(); ++i) {
    const SectionSpace<S>& st = pushed.stalks[static_cast<std::size_t>(f(i))];
    comp.push_back(Mat<S>(st.inclusion.block(st.offset_of(i), 0, s.dim(i), st.dim)));
  }
  return SheafMorphism<S>::validate(pullback(f, pushed.sheaf), s, std::move(comp));
}

}  // namespace detail

template <class S>
AdjunctionWitness<S> adjunction(const MonotoneMap& f, const Sheaf<S>& s, const Sheaf<S>& t) {
  if (s.base() != f.source()) throw BaseMismatch("adjunction: S must live on f's source");
  if (t.base() != f.target()) throw BaseMismatch("adjunction: T must live on f's target");

  PushforwardData<S> pushed_s = pushforward_data(f, s);
  Sheaf<S> pulled_t = pullback(f, t);
  PushforwardData<S> pushed_pulled_t = pushforward_data(f, pulled_t);

  SheafMorphism<S> unit = detail::adjunction_unit(f, t, pushed_pulled_t);
  SheafMorphism<S> counit = detail::adjunction_counit(f, s, pushed_s);

  // triangle (f_* eps) o (eta f_*) = id on f_* S
  PushforwardData<S> pushed_pulled_pushed = pushforward_data(f, pullback(f, pushed_s.sheaf));
  SheafMorphism<S> unit_at_pushed = detail::adjunction_unit(f, pushed_s.sheaf, pushed_pulled_pushed);
  SheafMorphism<S> pushed_counit = pushforward_map(counit, pushed_pulled_pushed, pushed_s);
  bool tri1 = true;
  for (int j = 0; j < f.target().size(); ++j) {
    Mat<S> composite = pushed_counit.component(j) * unit_at_pushed.component(j);
    tri1 = tri1 && mat_equal(composite, identity_mat<S>(pushed_s.sheaf.dim(j)));
  }

  // triangle (eps f^{-1}) o (f^{-1} eta) = id on f^{-1} T
  SheafMorphism<S> counit_at_pulled = detail::adjunction_counit(f, pulled_t, pushed_pulled_t);
  bool tri2 = true;
  for (int i = 0; i < f.source().size(); ++i) {
    Mat<S> composite = counit_at_pulled.component(i) * unit.component(f(i));
    tri2 = tri2 && mat_equal(composite, identity_mat<S>(pulled_t.dim(i)));
  }

  AdjunctionWitness<S> out{std::move(unit), std::move(counit), tri1 && tri2,
                           hom_space_dim(pulled_t, s), hom_space_dim(t, pushed_s.sheaf)};
  return out;
}

/// For a Galois connection (f, g) the direct image along f and the inverse
/// image along g are computed independently and compared for literal
/// equality in canonical bases.
template <class S>
bool pushforward_equals_pullback(const MonotoneMap& f, const MonotoneMap& g, const Sheaf<S>& sh) {
  if (!is_galois_pair(f, g)) throw NotGalois("(f, g) is not a Galois connection");
  if (sh.base() != f.source()) throw BaseMismatch("sheaf must live on f's source");
  return pushforward(f, sh) == pullback(g, sh);
}

/// The comparison map of global sections along a pullback: sections over
/// the target restricted through f to sections of the inverse image.
template <class S>
Mat<S> pullback_global_map(const MonotoneMap& f, const Sheaf<S>& t) {
  Sheaf<S> pulled = pullback(f, t);
  SectionSpace<S> gj = global_sections(t);
  SectionSpace<S> gi = global_sections(pulled);
  Mat<S> transported(gi.product_dim, gj.dim);
  for (std::size_t k = 0; k < gi.elems.size(); ++k) {
    int i = gi.elems[k];
    transported.block(gi.offsets[k], 0, gi.block_dims[k], gj.dim) =
        gj.inclusion.block(gj.offset_of(f(i)), 0, t.dim(f(i)), gj.dim);
  }
  auto x = solve(gi.inclusion, transported);
  if (!x) throw Error("internal: transported family is not a section");
  return *x;
}

}  // namespace alexandrov
