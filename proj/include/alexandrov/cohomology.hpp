#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alexandrov/functors.hpp"
#include "alexandrov/sheaf.hpp"

namespace alexandrov {

/// The flabby hull of a sheaf: stalk at j is the product of the stalks over
/// the down-set of j, transitions are coordinate projections, and the
/// canonical monomorphism sends a stalk vector to the family of all its
/// transition images.
template <class S>
struct GodementSheaf {
  Sheaf<S> sheaf;
  SheafMorphism<S> mono;  // F -> Gode(F), stalkwise injective
};

template <class S>
GodementSheaf<S> godement_sheaf(const Sheaf<S>& f) {
  const Poset& p = f.base();
  int n = p.size();
  std::vector<std::vector<int>> lambda;  // members of each down-set, ascending
  std::vector<std::vector<long>> offsets;
  std::vector<long> dims;
  for (int j = 0; j < n; ++j) {
    lambda.push_back(down_set(p, j).indices());
    offsets.emplace_back();
    long off = 0;
    for (int k : lambda.back()) {
      offsets.back().push_back(off);
      off += f.dim(k);
    }
    dims.push_back(off);
  }
  std::vector<Mat<S>> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < n; ++t) {
      if (!p.leq(t, j)) continue;
      Mat<S> proj = Mat<S>::Zero(dims[static_cast<std::size_t>(t)], dims[static_cast<std::size_t>(j)]);
      for (std::size_t b = 0; b < lambda[static_cast<std::size_t>(t)].size(); ++b) {
        int k = lambda[static_cast<std::size_t>(t)][b];
        // locate k inside the down-set of j
        long src_off = -1;
        for (std::size_t a = 0; a < lambda[static_cast<std::size_t>(j)].size(); ++a)
          if (lambda[static_cast<std::size_t>(j)][a] == k)
            src_off = offsets[static_cast<std::size_t>(j)][a];
        for (long r = 0; r < f.dim(k); ++r)
          proj(offsets[static_cast<std::size_t>(t)][b] + r, src_off + r) = S(1);
      }
      table[static_cast<std::size_t>(j * n + t)] = std::move(proj);
    }
  Sheaf<S> g = Sheaf<S>::from_table(p, f.field(), std::move(dims), std::move(table));
  std::vector<Mat<S>> mono;
  for (int j = 0; j < n; ++j) {
    Mat<S> m(g.dim(j), f.dim(j));
    for (std::size_t a = 0; a < lambda[static_cast<std::size_t>(j)].size(); ++a)
      m.block(offsets[static_cast<std::size_t>(j)][a], 0,
              f.dim(lambda[static_cast<std::size_t>(j)][a]), f.dim(j)) =
          f.rho(j, lambda[static_cast<std::size_t>(j)][a]);
    mono.push_back(std::move(m));
  }
  return {g, SheafMorphism<S>::validate(f, g, std::move(mono))};
}

/// A finite acyclic resolution 0 -> F -> G^0 -> ... -> G^N built by
/// alternating the flabby hull with its cokernel. On a finite poset the
/// cokernels die above the longest chain, so the truncation loses nothing
/// once N exceeds the chain length.
template <class S>
struct Resolution {
  Sheaf<S> target;
  std::vector<Sheaf<S>> terms;
  SheafMorphism<S> augmentation;          // F -> G^0
  std::vector<SheafMorphism<S>> d;        // G^k -> G^{k+1}, k < N

  /// Stalkwise exactness of the augmented sequence through degree N-1 and
  /// injectivity of the augmentation.
  bool verify_exactness() const {
    const Poset& p = target.base();
    for (int i = 0; i < p.size(); ++i)
      if (kernel_basis(Mat<S>(augmentation.component(i))).dim() != 0) return false;
    if (d.empty()) return true;
    for (int i = 0; i < p.size(); ++i) {
      if (!(kernel_basis(Mat<S>(d[0].component(i))) ==
            image_basis(Mat<S>(augmentation.component(i)))))
        return false;
      for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (!(kernel_basis(Mat<S>(d[k + 1].component(i))) ==
              image_basis(Mat<S>(d[k].component(i)))))
          return false;
    }
    return true;
  }
};

template <class S>
Resolution<S> godement_resolution(const Sheaf<S>& f, int depth) {
  if (depth < 0) throw DegreeOutOfRange("resolution depth must be nonnegative");
  Resolution<S> out{f, {}, SheafMorphism<S>::identity(f), {}};
  Sheaf<S> current = f;                       // the sheaf being resolved at this level
  std::optional<SheafMorphism<S>> pending;    // epi G^{k-1} -> current
  for (int level = 0; level <= depth; ++level) {
    GodementSheaf<S> g = godement_sheaf(current);
    out.terms.push_back(g.sheaf);
    if (level == 0)
      out.augmentation = g.mono;
    else
      out.d.push_back(g.mono.compose_after(*pending));
    SubquotientSheaf<S> q = cokernel_sheaf(g.mono);
    pending = q.map;
    current = q.sheaf;
  }
  return out;
}

enum class Method { godement, oracle, both };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::godement: return "godement";
    case Method::oracle: return "oracle";
    default: return "both";
  }
}

/// Per-degree dimensions of the derived limits of a sheaf, together with
/// how they were computed.
struct CohomologyReport {
  std::vector<long> degrees;  // index n = dim H^n, n = 0..base chain length
  Method method = Method::both;
  long base_chain_length = 0;

  long dim(long n) const {
    if (n < 0) throw DegreeOutOfRange("negative degree");
    return n < static_cast<long>(degrees.size()) ? degrees[static_cast<std::size_t>(n)] : 0;
  }
};

/// Global sections of a resolution, assembled into a cochain complex.
template <class S>
CochainComplex<S> sections_complex(const Resolution<S>& res) {
  Subset all = Subset::all(res.target.base());
  std::vector<long> dims;
  for (const auto& term : res.terms) dims.push_back(sections_any(term, all).dim);
  std::vector<Mat<S>> diff;
  for (const auto& d : res.d) diff.push_back(sections_map(d, all));
  return CochainComplex<S>(std::move(dims), std::move(diff));
}

/// Derived limits through the flabby resolution; degree n is trustworthy
/// for n < depth, so requests beyond the truncation are refused.
template <class S>
CohomologyReport cohomology_via_godement(const Sheaf<S>& f, std::optional<int> depth = {},
                                         std::optional<int> max_degree = {}) {
  long chain_len = f.base().chain_length();
  int n_levels = depth.value_or(static_cast<int>(chain_len) + 1);
  long top = max_degree.value_or(chain_len);
  if (top >= n_levels)
    throw DegreeBoundTooSmall("degree " + std::to_string(top) +
                              " needs resolution depth > " + std::to_string(n_levels));
  Resolution<S> res = godement_resolution(f, n_levels);
  CochainComplex<S> gamma = sections_complex(res);
  CohomologyReport report;
  report.method = Method::godement;
  report.base_chain_length = chain_len;
  for (long n = 0; n <= top; ++n) report.degrees.push_back(complex_cohomology(gamma, n));
  return report;
}

/// The chain-indexed cochain complex computing derived limits directly:
/// degree n is the product of F at the bottom of every strictly increasing
/// (n+1)-chain; the differential drops one element at a time, routing the
/// dropped-bottom term through a transition map. Kept independent of the
/// resolution pipeline so the two can cross-check each other.
template <class S>
struct OracleComplex {
  CochainComplex<S> complex;
  std::vector<std::vector<std::vector<int>>> chains;  // per degree
  std::vector<std::vector<long>> offsets;             // block offset per chain
};

template <class S>
OracleComplex<S> oracle_complex(const Sheaf<S>& f) {
  const Poset& p = f.base();
  long top = p.chain_length();
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::vector<long>> offsets;
  std::vector<std::map<std::vector<int>, std::size_t>> index;
  std::vector<long> dims;
  for (long n = 0; n <= top; ++n) {
    chains.push_back(p.chains_of_length(static_cast<int>(n)));
    offsets.emplace_back();
    index.emplace_back();
    long off = 0;
    for (std::size_t c = 0; c < chains.back().size(); ++c) {
      index.back()[chains.back()[c]] = c;
      offsets.back().push_back(off);
      off += f.dim(chains.back()[c][0]);
    }
    dims.push_back(off);
  }
  std::vector<Mat<S>> diff;
  for (long n = 0; n < top; ++n) {
    Mat<S> d = Mat<S>::Zero(dims[static_cast<std::size_t>(n + 1)], dims[static_cast<std::size_t>(n)]);
    const auto& tgt = chains[static_cast<std::size_t>(n + 1)];
    for (std::size_t c = 0; c < tgt.size(); ++c) {
      const std::vector<int>& tau = tgt[c];
      long row = offsets[static_cast<std::size_t>(n + 1)][c];
      long rows = f.dim(tau[0]);
      for (std::size_t drop = 0; drop < tau.size(); ++drop) {
        std::vector<int> face;
        for (std::size_t k = 0; k < tau.size(); ++k)
          if (k != drop) face.push_back(tau[k]);
        long col = offsets[static_cast<std::size_t>(n)][index[static_cast<std::size_t>(n)].at(face)];
        if (drop == 0) {
          d.block(row, col, rows, f.dim(tau[1])) += f.rho(tau[1], tau[0]);
        } else {
          S sign = (drop % 2 == 0) ? S(1) : S(-1);
          for (long r = 0; r < rows; ++r) d(row + r, col + r) += sign;
        }
      }
    }
    diff.push_back(std::move(d));
  }
  return {CochainComplex<S>(std::move(dims), std::move(diff)), std::move(chains),
          std::move(offsets)};
}

template <class S>
CohomologyReport cohomology_via_oracle(const Sheaf<S>& f) {
  OracleComplex<S> oc = oracle_complex(f);
  CohomologyReport report;
  report.method = Method::oracle;
  report.base_chain_length = f.base().chain_length();
  for (long n = 0; n <= oc.complex.top_degree(); ++n)
    report.degrees.push_back(complex_cohomology(oc.complex, n));
  return report;
}

/// Derived limits by both pipelines with mandatory agreement.
template <class S>
CohomologyReport derived_limit(const Sheaf<S>& f) {
  CohomologyReport oracle = cohomology_via_oracle(f);
  CohomologyReport godement = cohomology_via_godement(f);
  if (oracle.degrees != godement.degrees) {
    std::ostringstream msg;
    msg << "pipelines disagree: oracle (";
    for (long d : oracle.degrees) msg << " " << d;
    msg << " ) vs godement (";
    for (long d : godement.degrees) msg << " " << d;
    msg << " )";
    throw OracleMismatch(msg.str());
  }
  oracle.method = Method::both;
  return oracle;
}

template <class S>
long derived_limit_dim(const Sheaf<S>& f, long n) {
  return derived_limit(f).dim(n);
}

/// The long exact cohomology sequence of a stalkwise short exact sequence,
/// realized on the chain-indexed complexes and verified node by node.
struct LESReport {
  long top_degree = 0;
  std::vector<long> dims_sub;      // H^n of the subsheaf
  std::vector<long> dims_mid;      // H^n of the middle sheaf
  std::vector<long> dims_quot;     // H^n of the quotient
  std::vector<long> connecting_rank;  // rank of H^n(quot) -> H^{n+1}(sub)
  bool exact = false;
};

template <class S>
LESReport long_exact_sequence(const SheafMorphism<S>& g, const SheafMorphism<S>& h) {
  if (!is_short_exact(g, h)) throw NotExact("input is not a stalkwise short exact sequence");
  OracleComplex<S> ca = oracle_complex(g.source());
  OracleComplex<S> cb = oracle_complex(g.target());
  OracleComplex<S> cc = oracle_complex(h.target());
  long top = ca.complex.top_degree();

  // chainwise block-diagonal maps induced by g and h
  auto chain_map = [&](const SheafMorphism<S>& m, const OracleComplex<S>& from,
                       const OracleComplex<S>& to, long n) {
    Mat<S> out = Mat<S>::Zero(to.complex.dim(n), from.complex.dim(n));
    const auto& chs = from.chains[static_cast<std::size_t>(n)];
    for (std::size_t c = 0; c < chs.size(); ++c) {
      int bottom = chs[c][0];
      out.block(to.offsets[static_cast<std::size_t>(n)][c],
                from.offsets[static_cast<std::size_t>(n)][c], m.target().dim(bottom),
                m.source().dim(bottom)) = m.component(bottom);
    }
    return out;
  };

  std::vector<CohomologyData<S>> ha, hb, hc;
  for (long n = 0; n <= top; ++n) {
    ha.push_back(cohomology_data(ca.complex, n));
    hb.push_back(cohomology_data(cb.complex, n));
    hc.push_back(cohomology_data(cc.complex, n));
  }

  LESReport report;
  report.top_degree = top;
  for (long n = 0; n <= top; ++n) {
    report.dims_sub.push_back(ha[static_cast<std::size_t>(n)].dim);
    report.dims_mid.push_back(hb[static_cast<std::size_t>(n)].dim);
    report.dims_quot.push_back(hc[static_cast<std::size_t>(n)].dim);
  }

  std::vector<Mat<S>> alpha, beta, delta;  // maps on cohomology
  for (long n = 0; n <= top; ++n) {
    const auto& a = ha[static_cast<std::size_t>(n)];
    const auto& b = hb[static_cast<std::size_t>(n)];
    const auto& c = hc[static_cast<std::size_t>(n)];
    Mat<S> gn = chain_map(g, ca, cb, n);
    Mat<S> hn = chain_map(h, cb, cc, n);
    Mat<S> al(b.dim, a.dim), be(c.dim, b.dim);
    for (long col = 0; col < a.dim; ++col)
      al.col(col) = b.class_coordinates(Vec<S>(gn * a.representatives.col(col)));
    for (long col = 0; col < b.dim; ++col)
      be.col(col) = c.class_coordinates(Vec<S>(hn * b.representatives.col(col)));
    alpha.push_back(std::move(al));
    beta.push_back(std::move(be));

    // connecting map: lift a quotient cocycle, differentiate, pull back
    long next_dim = n + 1 <= top ? ha[static_cast<std::size_t>(n + 1)].dim : 0;
    Mat<S> dl(next_dim, c.dim);
    if (c.dim > 0 && next_dim >= 0) {
      Mat<S> gn1 = chain_map(g, ca, cb, n + 1);
      for (long col = 0; col < c.dim; ++col) {
        auto lift = solve(hn, Mat<S>(c.representatives.col(col)));
        if (!lift) throw Error("internal: quotient cocycle does not lift");
        Mat<S> w = cb.complex.differential(n) * *lift;
        auto back = solve(gn1, w);
        if (!back) throw Error("internal: connecting image misses the subcomplex");
        if (n + 1 <= top)
          dl.col(col) =
              ha[static_cast<std::size_t>(n + 1)].class_coordinates(Vec<S>(back->col(0)));
      }
    }
    delta.push_back(std::move(dl));
  }

  report.exact = true;
  for (long n = 0; n <= top; ++n) {
    const Mat<S>& al = alpha[static_cast<std::size_t>(n)];
    const Mat<S>& be = beta[static_cast<std::size_t>(n)];
    const Mat<S>& dl = delta[static_cast<std::size_t>(n)];
    report.connecting_rank.push_back(rank(dl));
    // at H^n(sub): kernel of alpha = image of the previous connecting map
    Subspace<S> ker_al = kernel_basis(al);
    Subspace<S> im_prev = n == 0 ? Subspace<S>::zero(ha[static_cast<std::size_t>(n)].dim)
                                 : image_basis(delta[static_cast<std::size_t>(n - 1)]);
    report.exact = report.exact && (ker_al == im_prev);
    // at H^n(mid)
    report.exact = report.exact && (kernel_basis(be) == image_basis(al));
    // at H^n(quot)
    report.exact = report.exact && (kernel_basis(dl) == image_basis(be));
  }
  return report;
}

/// Stabilization of the images rho(r, i)(F_r) inside F_i along a finite
/// total order: for each element the least j >= i from which every later
/// image coincides, the images being compared as canonical subspaces.
struct MLReport {
  std::vector<int> elements;             // chain order, as poset indices
  std::vector<int> stabilization_index;  // per element, index into `elements`' parent
};

template <class S>
MLReport ml_check(const Sheaf<S>& f) {
  const Poset& p = f.base();
  if (!p.is_total_order()) throw NotAChain("stabilization check needs a finite total order");
  std::vector<int> order;
  for (int i = 0; i < p.size(); ++i) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return a != b && p.leq(a, b); });

  MLReport report;
  report.elements = order;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    int i = order[pos];
    std::vector<Subspace<S>> images;
    for (std::size_t r = pos; r < order.size(); ++r)
      images.push_back(image_basis(Mat<S>(f.rho(order[r], i))));
    std::size_t stab = pos;
    for (std::size_t j = images.size(); j-- > 0;) {
      if (!(images[j] == images.back())) {
        stab = pos + j + 1;
        break;
      }
      stab = pos + j;
    }
    report.stabilization_index.push_back(order[stab]);
  }
  return report;
}

}  // namespace alexandrov
