#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alexandrov/common.hpp"
#include "alexandrov/exactla.hpp"
#include "alexandrov/field.hpp"
#include "alexandrov/poset.hpp"

namespace alexandrov {

/// A sheaf of finite-dimensional vector spaces on the Alexandrov space of a
/// finite poset, stored as an inverse system: one space per element plus a
/// transition map rho(i,j) : F_i -> F_j for every pair i >= j. The full
/// transition table is materialized at validation time; composition
/// consistency is rechecked against the covering relation whenever a table
/// is ingested, so a constructed Sheaf always satisfies functoriality.
template <class S>
class Sheaf {
 public:
  struct Cover {
    int upper;
    int lower;
    Mat<S> map;  // dims[lower] x dims[upper]
  };

  /// Build from transition matrices on covering pairs; all other
  /// transitions are composed and cross-checked path by path.
  static Sheaf validate(Poset base, Field field, std::vector<long> dims,
                        const std::vector<Cover>& covers) {
    check_field<S>(field);
    int n = base.size();
    if (static_cast<int>(dims.size()) != n) throw ShapeMismatch("one dimension per element");
    for (long d : dims)
      if (d < 0) throw ShapeMismatch("negative stalk dimension");
    std::map<std::pair<int, int>, Mat<S>> given;
    for (const auto& c : covers) {
      bool is_cover = false;
      for (auto& [u, l] : base.covers()) is_cover |= (u == c.upper && l == c.lower);
      if (!is_cover)
        throw ShapeMismatch("map " + base.id_of(c.upper) + " -> " + base.id_of(c.lower) +
                            " is not a covering pair");
      if (c.map.rows() != dims[static_cast<std::size_t>(c.lower)] ||
          c.map.cols() != dims[static_cast<std::size_t>(c.upper)])
        throw ShapeMismatch("map " + base.id_of(c.upper) + " -> " + base.id_of(c.lower) +
                            " has shape " + std::to_string(c.map.rows()) + "x" +
                            std::to_string(c.map.cols()) + ", want " +
                            std::to_string(dims[static_cast<std::size_t>(c.lower)]) + "x" +
                            std::to_string(dims[static_cast<std::size_t>(c.upper)]));
      if (!given.emplace(std::make_pair(c.upper, c.lower), c.map).second)
        throw ShapeMismatch("duplicate cover map " + base.id_of(c.upper) + " -> " +
                            base.id_of(c.lower));
    }
    for (auto& [u, l] : base.covers())
      if (!given.count({u, l}))
        throw MissingCover("no map for covering pair " + base.id_of(u) + " -> " + base.id_of(l));

    Sheaf out;
    out.base_ = std::move(base);
    out.field_ = field;
    out.dims_ = std::move(dims);
    out.rho_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.rho_at(i, i) = identity_mat<S>(out.dims_[static_cast<std::size_t>(i)]);
    // fill pairs bottom-up along the linear extension of the upper element
    for (int i : out.base_.linear_extension()) {
      for (int j = 0; j < n; ++j) {
        if (j == i || !out.base_.leq(j, i)) continue;
        std::optional<Mat<S>> composed;
        for (auto& [u, l] : out.base_.covers()) {
          if (u != i || !out.base_.leq(j, l)) continue;
          const Mat<S>& step = given.at({u, l});
          Mat<S> cand = (l == j) ? step : Mat<S>(out.rho_at(l, j) * step);
          if (!composed)
            composed = std::move(cand);
          else if (!mat_equal(*composed, cand))
            throw PathInconsistency("transition paths disagree between " + out.base_.id_of(i) +
                                    " and " + out.base_.id_of(j));
        }
        out.rho_at(i, j) = std::move(*composed);
      }
    }
    return out;
  }

  /// Ingest a full transition table (used by the functor constructions).
  /// Identities and first-step path consistency are verified.
  static Sheaf from_table(Poset base, Field field, std::vector<long> dims,
                          std::vector<Mat<S>> table) {
    check_field<S>(field);
    int n = base.size();
    if (static_cast<int>(dims.size()) != n || table.size() != static_cast<std::size_t>(n) * n)
      throw ShapeMismatch("transition table has wrong size");
    Sheaf out;
    out.base_ = std::move(base);
    out.field_ = field;
    out.dims_ = std::move(dims);
    out.rho_ = std::move(table);
    for (int i = 0; i < n; ++i) {
      if (!mat_equal(out.rho_at(i, i), identity_mat<S>(out.dim(i))))
        throw PathInconsistency("rho(" + out.base_.id_of(i) + ", same) is not the identity");
      for (int j = 0; j < n; ++j) {
        if (j == i || !out.base_.leq(j, i)) continue;
        const Mat<S>& direct = out.rho_at(i, j);
        if (direct.rows() != out.dim(j) || direct.cols() != out.dim(i))
          throw ShapeMismatch("transition " + out.base_.id_of(i) + " -> " + out.base_.id_of(j) +
                              " has wrong shape");
        for (auto& [u, l] : out.base_.covers()) {
          if (u != i || !out.base_.leq(j, l)) continue;
          Mat<S> via = out.rho_at(l, j) * out.rho_at(i, l);
          if (!mat_equal(via, direct))
            throw PathInconsistency("transition paths disagree between " + out.base_.id_of(i) +
                                    " and " + out.base_.id_of(j));
        }
      }
    }
    return out;
  }

  const Poset& base() const { return base_; }
  const Field& field() const { return field_; }
  const std::vector<long>& dims() const { return dims_; }
  long dim(int i) const { return dims_.at(static_cast<std::size_t>(i)); }

  const Mat<S>& rho(int i, int j) const {
    if (!base_.leq(j, i))
      throw ShapeMismatch("no transition " + base_.id_of(i) + " -> " + base_.id_of(j));
    return rho_[static_cast<std::size_t>(i * base_.size() + j)];
  }

  long total_dim() const {
    long t = 0;
    for (long d : dims_) t += d;
    return t;
  }

  bool is_zero() const { return total_dim() == 0; }

  friend bool operator==(const Sheaf& a, const Sheaf& b) {
    if (a.base_ != b.base_ || a.field_ != b.field_ || a.dims_ != b.dims_) return false;
    for (int i = 0; i < a.base_.size(); ++i)
      for (int j = 0; j < a.base_.size(); ++j)
        if (a.base_.leq(j, i) && !mat_equal(a.rho(i, j), b.rho(i, j))) return false;
    return true;
  }
  friend bool operator!=(const Sheaf& a, const Sheaf& b) { return !(a == b); }

 private:
  Sheaf() = default;

  template <class Scalar>
  static void check_field(const Field& f) {
    if (f.kind() != ScalarOps<Scalar>::kind)
      throw BadField("scalar type does not match field " + f.to_string());
  }
  Mat<S>& rho_at(int i, int j) { return rho_[static_cast<std::size_t>(i * base_.size() + j)]; }

  Poset base_ = Poset::empty();
  Field field_ = Field::rationals();
  std::vector<long> dims_;
  std::vector<Mat<S>> rho_;
};

template <class S>
Sheaf<S> constant_sheaf(const Poset& p, const Field& field, long d) {
  std::vector<long> dims(static_cast<std::size_t>(p.size()), d);
  std::vector<Mat<S>> table(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(j, i)) table[static_cast<std::size_t>(i * p.size() + j)] = identity_mat<S>(d);
  return Sheaf<S>::from_table(p, field, std::move(dims), std::move(table));
}

template <class S>
Sheaf<S> zero_sheaf(const Poset& p, const Field& field) {
  return constant_sheaf<S>(p, field, 0);
}

template <class S>
Sheaf<S> direct_sum(const Sheaf<S>& a, const Sheaf<S>& b) {
  if (a.base() != b.base() || a.field() != b.field())
    throw BaseMismatch("direct sum needs a common base and field");
  const Poset& p = a.base();
  std::vector<long> dims;
  for (int i = 0; i < p.size(); ++i) dims.push_back(a.dim(i) + b.dim(i));
  std::vector<Mat<S>> table(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (!p.leq(j, i)) continue;
      Mat<S> m = Mat<S>::Zero(dims[static_cast<std::size_t>(j)], dims[static_cast<std::size_t>(i)]);
      m.block(0, 0, a.dim(j), a.dim(i)) = a.rho(i, j);
      m.block(a.dim(j), a.dim(i), b.dim(j), b.dim(i)) = b.rho(i, j);
      table[static_cast<std::size_t>(i * p.size() + j)] = std::move(m);
    }
  return Sheaf<S>::from_table(p, a.field(), std::move(dims), std::move(table));
}

/// The space of compatible families over a subset of the base, presented by
/// an explicit inclusion into the product of the member stalks. When the
/// subset has a maximum m the basis is the coordinate basis of F_m pushed
/// through the transitions, which realizes the stalk identity on down-sets;
/// otherwise the basis is the canonical echelon kernel basis.
template <class S>
struct SectionSpace {
  explicit SectionSpace(Subset s) : over(std::move(s)) {}

  Subset over;
  std::vector<int> elems;      // ascending element indices
  std::vector<long> offsets;   // block offset per member
  std::vector<long> block_dims;
  long product_dim = 0;
  long dim = 0;
  Mat<S> inclusion;  // product_dim x dim

  long offset_of(int elem) const {
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (elems[k] == elem) return offsets[k];
    throw UnknownElement("element not in section support");
  }
  long block_dim_of(int elem) const {
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (elems[k] == elem) return block_dims[k];
    throw UnknownElement("element not in section support");
  }
};

namespace detail {

/// Covering pairs (upper, lower) of the order induced on the given members.
inline std::vector<std::pair<int, int>> induced_covers(const Poset& p,
                                                       const std::vector<int>& members) {
  std::vector<std::pair<int, int>> out;
  for (int i : members)
    for (int j : members) {
      if (i == j || !p.leq(j, i)) continue;
      bool covered = true;
      for (int k : members)
        if (k != i && k != j && p.leq(j, k) && p.leq(k, i)) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(i, j);
    }
  return out;
}

inline std::optional<int> subset_maximum(const Poset& p, const std::vector<int>& members) {
  for (int m : members) {
    bool top = true;
    for (int i : members)
      if (!p.leq(i, m)) {
        top = false;
        break;
      }
    if (top) return m;
  }
  return std::nullopt;
}

}  // namespace detail

/// Sections over an arbitrary subset, with the order induced from the base.
template <class S>
SectionSpace<S> sections_any(const Sheaf<S>& f, const Subset& u) {
  if (u.parent() != f.base()) throw BaseMismatch("subset lives on another poset");
  SectionSpace<S> out(u);
  out.elems = u.indices();
  long off = 0;
  for (int e : out.elems) {
    out.offsets.push_back(off);
    out.block_dims.push_back(f.dim(e));
    off += f.dim(e);
  }
  out.product_dim = off;

  auto max_elem = detail::subset_maximum(f.base(), out.elems);
  if (max_elem) {
    out.dim = f.dim(*max_elem);
    out.inclusion = Mat<S>::Zero(out.product_dim, out.dim);
    for (std::size_t k = 0; k < out.elems.size(); ++k)
      out.inclusion.block(out.offsets[k], 0, f.dim(out.elems[k]), out.dim) =
          f.rho(*max_elem, out.elems[k]);
    return out;
  }

  auto covers = detail::induced_covers(f.base(), out.elems);
  long rows = 0;
  for (auto& [j, i] : covers) rows += f.dim(i);
  Mat<S> constraints = Mat<S>::Zero(rows, out.product_dim);
  long r = 0;
  for (auto& [j, i] : covers) {
    constraints.block(r, out.offset_of(j), f.dim(i), f.dim(j)) = f.rho(j, i);
    for (long c = 0; c < f.dim(i); ++c) constraints(r + c, out.offset_of(i) + c) = S(-1);
    r += f.dim(i);
  }
  Subspace<S> kernel = kernel_basis(constraints);
  out.dim = kernel.dim();
  out.inclusion = kernel.basis_rows().transpose();
  return out;
}

/// Sections over an open subset (the sheaf-theoretic Gamma(U, F)).
template <class S>
SectionSpace<S> sections(const Sheaf<S>& f, const Subset& u) {
  if (!is_open(u)) throw NotOpen("sections need an open subset");
  return sections_any(f, u);
}

template <class S>
SectionSpace<S> global_sections(const Sheaf<S>& f) {
  return sections_any(f, Subset::all(f.base()));
}

/// The induced map between two section spaces of the same sheaf with
/// nested supports (coordinate restriction of compatible families).
template <class S>
Mat<S> restriction_between(const SectionSpace<S>& from, const SectionSpace<S>& to) {
  if (!to.over.subset_of(from.over)) throw NotNested("restriction target is not a subset");
  Mat<S> selected(to.product_dim, from.dim);
  for (std::size_t k = 0; k < to.elems.size(); ++k)
    selected.block(to.offsets[k], 0, to.block_dims[k], from.dim) =
        from.inclusion.block(from.offset_of(to.elems[k]), 0, to.block_dims[k], from.dim);
  auto x = solve(to.inclusion, selected);
  if (!x) throw Error("internal: restricted family is not a section");
  return *x;
}

/// Gamma(U, F) -> Gamma(V, F) for nested opens V <= U, in canonical bases.
template <class S>
Mat<S> restriction_map(const Sheaf<S>& f, const Subset& u, const Subset& v) {
  if (!is_open(u) || !is_open(v)) throw NotOpen("restriction needs open subsets");
  if (!v.subset_of(u)) throw NotNested("V must be contained in U");
  return restriction_between(sections_any(f, u), sections_any(f, v));
}

/// The stalk at i together with the mutually inverse identifications
/// between F_i and the sections over its down-set.
template <class S>
struct StalkData {
  long dim;
  Mat<S> from_sections;  // F_i <- Gamma(down_set(i), F): coordinate projection
  Mat<S> to_sections;    // Gamma(down_set(i), F) <- F_i
};

template <class S>
StalkData<S> stalk(const Sheaf<S>& f, int i) {
  if (i < 0 || i >= f.base().size()) throw UnknownElement("stalk element out of range");
  SectionSpace<S> sec = sections_any(f, down_set(f.base(), i));
  StalkData<S> out;
  out.dim = f.dim(i);
  out.from_sections = sec.inclusion.block(sec.offset_of(i), 0, f.dim(i), sec.dim);
  Mat<S> stacked(sec.product_dim, f.dim(i));
  for (std::size_t k = 0; k < sec.elems.size(); ++k)
    stacked.block(sec.offsets[k], 0, sec.block_dims[k], f.dim(i)) = f.rho(i, sec.elems[k]);
  auto x = solve(sec.inclusion, stacked);
  if (!x) throw Error("internal: stalk family is not a section");
  out.to_sections = *x;
  return out;
}

/// Result of a pointwise surjectivity scan over a family of subsets.
struct FlabbyReport {
  bool ok = true;
  std::optional<Subset> counterexample;
};

namespace detail {

template <class Fn>
void for_each_subset(const Poset& p, int gate, const char* what, Fn&& fn) {
  if (p.size() > gate)
    throw GateExceeded(std::string(what) + " enumerates subsets; poset size " +
                       std::to_string(p.size()) + " exceeds gate " + std::to_string(gate));
  unsigned long long total = 1ULL << p.size();
  for (unsigned long long mask = 0; mask < total; ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < p.size(); ++i)
      if (mask & (1ULL << i)) idx.push_back(i);
    fn(Subset::of_indices(p, idx));
  }
}

template <class S>
bool restriction_surjective(const Sheaf<S>& f, const SectionSpace<S>& global, const Subset& u) {
  SectionSpace<S> sec = sections_any(f, u);
  if (sec.dim == 0) return true;
  Mat<S> res = restriction_between(global, sec);
  return rank(res) == sec.dim;
}

}  // namespace detail

/// Flabby = every restriction from global sections is onto.
template <class S>
FlabbyReport is_flabby(const Sheaf<S>& f, int gate = 12) {
  FlabbyReport report;
  SectionSpace<S> global = global_sections(f);
  detail::for_each_subset(f.base(), gate, "is_flabby", [&](const Subset& u) {
    if (!report.ok || !is_open(u)) return;
    if (!detail::restriction_surjective(f, global, u)) {
      report.ok = false;
      report.counterexample = u;
    }
  });
  return report;
}

enum class WeakFlabbyMode { opens_only, all_directed_subsets };

/// Weakly flabby = restrictions onto sections over directed subsets are
/// onto; the opens_only mode restricts the scan to open directed subsets,
/// the other mode scans every directed subset with its induced order.
template <class S>
FlabbyReport is_weakly_flabby(const Sheaf<S>& f,
                              WeakFlabbyMode mode = WeakFlabbyMode::opens_only, int gate = 12) {
  FlabbyReport report;
  SectionSpace<S> global = global_sections(f);
  detail::for_each_subset(f.base(), gate, "is_weakly_flabby", [&](const Subset& u) {
    if (!report.ok) return;
    if (mode == WeakFlabbyMode::opens_only && !is_open(u)) return;
    if (!is_directed(u)) return;
    if (!detail::restriction_surjective(f, global, u)) {
      report.ok = false;
      report.counterexample = u;
    }
  });
  return report;
}

/// A morphism of sheaves on a common base: one matrix per element,
/// commuting with the transitions.
template <class S>
class SheafMorphism {
 public:
  static SheafMorphism validate(Sheaf<S> source, Sheaf<S> target, std::vector<Mat<S>> components) {
    if (source.base() != target.base() || source.field() != target.field())
      throw BaseMismatch("morphism endpoints live on different bases");
    const Poset& p = source.base();
    if (static_cast<int>(components.size()) != p.size())
      throw ShapeMismatch("one component per element");
    for (int i = 0; i < p.size(); ++i)
      if (components[static_cast<std::size_t>(i)].rows() != target.dim(i) ||
          components[static_cast<std::size_t>(i)].cols() != source.dim(i))
        throw ShapeMismatch("component at " + p.id_of(i) + " has wrong shape");
    for (int i = 0; i < p.size(); ++i)
      for (int j = 0; j < p.size(); ++j) {
        if (i == j || !p.leq(j, i)) continue;
        Mat<S> lhs = target.rho(i, j) * components[static_cast<std::size_t>(i)];
        Mat<S> rhs = components[static_cast<std::size_t>(j)] * source.rho(i, j);
        if (!mat_equal(lhs, rhs))
          throw NaturalitySquareFails("naturality fails at (" + p.id_of(i) + ", " + p.id_of(j) +
                                      ")");
      }
    return SheafMorphism(std::move(source), std::move(target), std::move(components));
  }

  static SheafMorphism identity(const Sheaf<S>& f) {
    std::vector<Mat<S>> comp;
    for (int i = 0; i < f.base().size(); ++i) comp.push_back(identity_mat<S>(f.dim(i)));
    return validate(f, f, std::move(comp));
  }

  static SheafMorphism zero(const Sheaf<S>& source, const Sheaf<S>& target) {
    std::vector<Mat<S>> comp;
    for (int i = 0; i < source.base().size(); ++i)
      comp.push_back(Mat<S>::Zero(target.dim(i), source.dim(i)));
    return validate(source, target, std::move(comp));
  }

  const Sheaf<S>& source() const { return source_; }
  const Sheaf<S>& target() const { return target_; }
  const Mat<S>& component(int i) const { return comp_.at(static_cast<std::size_t>(i)); }
  const std::vector<Mat<S>>& components() const { return comp_; }

  SheafMorphism compose_after(const SheafMorphism& first) const {  // this o first
    if (first.target_ != source_) throw NotComposable("morphisms do not compose");
    std::vector<Mat<S>> comp;
    for (int i = 0; i < source_.base().size(); ++i)
      comp.push_back(Mat<S>(component(i) * first.component(i)));
    return validate(first.source_, target_, std::move(comp));
  }

  bool is_stalkwise_iso() const {
    for (int i = 0; i < source_.base().size(); ++i) {
      if (source_.dim(i) != target_.dim(i)) return false;
      if (rank(component(i)) != source_.dim(i)) return false;
    }
    return true;
  }

 private:
  SheafMorphism(Sheaf<S> src, Sheaf<S> tgt, std::vector<Mat<S>> comp)
      : source_(std::move(src)), target_(std::move(tgt)), comp_(std::move(comp)) {}
  Sheaf<S> source_;
  Sheaf<S> target_;
  std::vector<Mat<S>> comp_;
};

template <class S>
SheafMorphism<S> validate_morphism(const std::vector<Mat<S>>& components, const Sheaf<S>& f,
                                   const Sheaf<S>& g) {
  return SheafMorphism<S>::validate(f, g, components);
}

/// Block-diagonal action of a morphism on the product of stalks over a
/// subset, in the coordinate layout of the given section spaces.
template <class S>
Mat<S> blockdiag_on(const SheafMorphism<S>& g, const SectionSpace<S>& src_sections,
                    const SectionSpace<S>& tgt_sections) {
  Mat<S> m = Mat<S>::Zero(tgt_sections.product_dim, src_sections.product_dim);
  for (std::size_t k = 0; k < src_sections.elems.size(); ++k) {
    int e = src_sections.elems[k];
    m.block(tgt_sections.offset_of(e), src_sections.offsets[k], g.target().dim(e),
            g.source().dim(e)) = g.component(e);
  }
  return m;
}

/// The induced map Gamma(U, source) -> Gamma(U, target) in canonical bases.
template <class S>
Mat<S> sections_map(const SheafMorphism<S>& g, const Subset& u) {
  SectionSpace<S> src = sections_any(g.source(), u);
  SectionSpace<S> tgt = sections_any(g.target(), u);
  auto x = solve(tgt.inclusion, Mat<S>(blockdiag_on(g, src, tgt) * src.inclusion));
  if (!x) throw Error("internal: morphism does not preserve sections");
  return *x;
}

template <class S>
struct SubquotientSheaf {
  Sheaf<S> sheaf;
  SheafMorphism<S> map;  // kernel: K -> A; image: Im -> B; cokernel: B -> Q
};

/// Stalkwise kernel with the induced transitions.
template <class S>
SubquotientSheaf<S> kernel_sheaf(const SheafMorphism<S>& g) {
  const Poset& p = g.source().base();
  std::vector<Mat<S>> basis;  // columns span ker g_i
  std::vector<long> dims;
  for (int i = 0; i < p.size(); ++i) {
    basis.push_back(kernel_basis(Mat<S>(g.component(i))).basis_rows().transpose());
    dims.push_back(basis.back().cols());
  }
  std::vector<Mat<S>> table(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (!p.leq(j, i)) continue;
      auto t = solve(basis[static_cast<std::size_t>(j)],
                     Mat<S>(g.source().rho(i, j) * basis[static_cast<std::size_t>(i)]));
      if (!t) throw Error("internal: transition does not preserve kernels");
      table[static_cast<std::size_t>(i * p.size() + j)] = std::move(*t);
    }
  Sheaf<S> k = Sheaf<S>::from_table(p, g.source().field(), std::move(dims), std::move(table));
  auto incl = SheafMorphism<S>::validate(k, g.source(), std::move(basis));
  return {std::move(k), std::move(incl)};
}

/// Stalkwise image with the induced transitions; map embeds it in the target.
template <class S>
SubquotientSheaf<S> image_sheaf(const SheafMorphism<S>& g) {
  const Poset& p = g.source().base();
  std::vector<Mat<S>> basis;  // columns span im g_i
  std::vector<long> dims;
  for (int i = 0; i < p.size(); ++i) {
    basis.push_back(image_basis(Mat<S>(g.component(i))).basis_rows().transpose());
    dims.push_back(basis.back().cols());
  }
  std::vector<Mat<S>> table(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (!p.leq(j, i)) continue;
      auto t = solve(basis[static_cast<std::size_t>(j)],
                     Mat<S>(g.target().rho(i, j) * basis[static_cast<std::size_t>(i)]));
      if (!t) throw Error("internal: transition does not preserve images");
      table[static_cast<std::size_t>(i * p.size() + j)] = std::move(*t);
    }
  Sheaf<S> im = Sheaf<S>::from_table(p, g.source().field(), std::move(dims), std::move(table));
  auto mono = SheafMorphism<S>::validate(im, g.target(), std::move(basis));
  return {std::move(im), std::move(mono)};
}

/// Stalkwise cokernel with canonical quotient bases.
template <class S>
SubquotientSheaf<S> cokernel_sheaf(const SheafMorphism<S>& g) {
  const Poset& p = g.source().base();
  std::vector<QuotientMaps<S>> q;
  std::vector<long> dims;
  for (int i = 0; i < p.size(); ++i) {
    Subspace<S> im(g.target().dim(i), Mat<S>(g.component(i).transpose()));
    q.push_back(quotient_maps(im));
    dims.push_back(q.back().dim);
  }
  std::vector<Mat<S>> table(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (!p.leq(j, i)) continue;
      table[static_cast<std::size_t>(i * p.size() + j)] =
          q[static_cast<std::size_t>(j)].projection * g.target().rho(i, j) *
          q[static_cast<std::size_t>(i)].section;
    }
  Sheaf<S> coker = Sheaf<S>::from_table(p, g.source().field(), std::move(dims), std::move(table));
  std::vector<Mat<S>> proj;
  for (int i = 0; i < p.size(); ++i) proj.push_back(q[static_cast<std::size_t>(i)].projection);
  auto epi = SheafMorphism<S>::validate(g.target(), coker, std::move(proj));
  return {std::move(coker), std::move(epi)};
}

/// Exactness of a run of composable morphisms at every interior node,
/// checked stalkwise as equality of canonical subspaces.
template <class S>
bool is_exact_sequence(const std::vector<SheafMorphism<S>>& gs) {
  for (std::size_t k = 0; k + 1 < gs.size(); ++k) {
    if (gs[k].target() != gs[k + 1].source())
      throw NotComposable("sequence does not compose at position " + std::to_string(k));
    const Poset& p = gs[k].target().base();
    for (int i = 0; i < p.size(); ++i) {
      Subspace<S> im = image_basis(Mat<S>(gs[k].component(i)));
      Subspace<S> ker = kernel_basis(Mat<S>(gs[k + 1].component(i)));
      if (!(im == ker)) return false;
    }
  }
  return true;
}

/// 0 -> A -> B -> C -> 0 exactness (mono, im = ker, epi), stalkwise.
template <class S>
bool is_short_exact(const SheafMorphism<S>& g, const SheafMorphism<S>& h) {
  if (g.target() != h.source()) throw NotComposable("SES maps do not compose");
  const Poset& p = g.source().base();
  for (int i = 0; i < p.size(); ++i) {
    if (kernel_basis(Mat<S>(g.component(i))).dim() != 0) return false;
    if (rank(Mat<S>(h.component(i))) != h.target().dim(i)) return false;
    if (!(image_basis(Mat<S>(g.component(i))) == kernel_basis(Mat<S>(h.component(i))))) return false;
  }
  return true;
}

}  // namespace alexandrov
