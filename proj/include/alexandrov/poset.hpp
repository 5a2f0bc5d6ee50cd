#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alexandrov/common.hpp"

namespace alexandrov {

class Subset;

/// A finite poset, interpreted throughout as the topological space whose
/// opens are the downward-closed subsets. Elements are opaque string ids;
/// the canonical element order is the input order. Immutable after
/// validation, so values can be shared and used concurrently.
class Poset {
 public:
  /// Validates a generating relation: takes the reflexive-transitive
  /// closure and requires antisymmetry of the result.
  static Poset validate(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& raw_leq);

  static Poset chain(int n, const std::string& prefix = "");
  static Poset antichain(int n, const std::string& prefix = "");
  static Poset point(const std::string& id = "pt");
  static Poset empty();

  int size() const { return static_cast<int>(data_->ids.size()); }
  const std::vector<std::string>& elements() const { return data_->ids; }
  const std::string& id_of(int i) const { return data_->ids.at(static_cast<std::size_t>(i)); }
  int index_of(std::string_view id) const;            // throws UnknownElement
  std::optional<int> find(std::string_view id) const; // no throw

  bool leq(int i, int j) const { return data_->leq[static_cast<std::size_t>(i * size() + j)]; }
  bool lt(int i, int j) const { return i != j && leq(i, j); }

  /// Covering pairs (i covers j downward: j < i with nothing in between),
  /// as (upper, lower).
  const std::vector<std::pair<int, int>>& covers() const { return data_->covers; }

  /// A fixed linear extension: every relation j < i puts j before i.
  const std::vector<int>& linear_extension() const { return data_->topo; }

  /// Length (number of strict steps) of the longest chain; 0 when |I| <= 1.
  int chain_length() const { return data_->height; }

  bool is_directed() const;
  bool is_total_order() const;
  std::optional<int> maximum() const;
  std::vector<int> maximal_elements() const;

  /// All strictly increasing chains with exactly n+1 elements, each chain
  /// listed bottom-up, in lexicographic order of element indices.
  std::vector<std::vector<int>> chains_of_length(int n) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.data_ == b.data_ || (a.data_->ids == b.data_->ids && a.data_->leq == b.data_->leq);
  }
  friend bool operator!=(const Poset& a, const Poset& b) { return !(a == b); }

 private:
  struct Data {
    std::vector<std::string> ids;
    std::vector<char> leq;  // row-major |I| x |I|
    std::vector<std::pair<int, int>> covers;
    std::vector<int> topo;
    int height = 0;
  };
  explicit Poset(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static Poset from_closed(std::vector<std::string> ids, std::vector<char> leq);

  std::shared_ptr<const Data> data_;
};

/// A subset of a poset's carrier, as a membership mask.
class Subset {
 public:
  Subset(Poset parent, std::vector<char> mask) : parent_(std::move(parent)), mask_(std::move(mask)) {
    if (static_cast<int>(mask_.size()) != parent_.size())
      throw ShapeMismatch("subset mask has wrong length");
  }
  static Subset of_indices(const Poset& p, const std::vector<int>& indices);
  static Subset of_ids(const Poset& p, const std::vector<std::string>& ids);
  static Subset all(const Poset& p);
  static Subset none(const Poset& p);

  const Poset& parent() const { return parent_; }
  bool contains(int i) const { return mask_[static_cast<std::size_t>(i)] != 0; }
  int count() const;
  bool empty() const { return count() == 0; }
  std::vector<int> indices() const;  // ascending
  std::vector<std::string> ids() const;

  Subset complement() const;
  Subset intersect(const Subset& o) const;
  Subset unite(const Subset& o) const;
  bool subset_of(const Subset& o) const;

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }
  friend bool operator!=(const Subset& a, const Subset& b) { return !(a == b); }

 private:
  Poset parent_;
  std::vector<char> mask_;
};

/// An order-preserving map between posets; doubles as the continuity
/// certificate for the induced map of topological spaces.
class MonotoneMap {
 public:
  static MonotoneMap validate(Poset source, Poset target, std::vector<int> values);
  static MonotoneMap validate_ids(const Poset& source, const Poset& target,
                                  const std::vector<std::pair<std::string, std::string>>& assignment);
  static MonotoneMap identity(const Poset& p);
  static MonotoneMap constant(const Poset& source, const Poset& target, int target_index);

  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  int operator()(int i) const { return values_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& values() const { return values_; }

  bool is_surjective() const;
  Subset image() const;
  Subset preimage(const Subset& target_subset) const;
  MonotoneMap compose_after(const MonotoneMap& first) const;  // this o first

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.values_ == b.values_;
  }

 private:
  MonotoneMap(Poset s, Poset t, std::vector<int> v)
      : source_(std::move(s)), target_(std::move(t)), values_(std::move(v)) {}
  Poset source_;
  Poset target_;
  std::vector<int> values_;
};

// --- order-theoretic operations ---

Poset validate_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& relations);

/// The down-set {j : j <= i}: the smallest open containing i.
Subset down_set(const Poset& p, int i);
Subset down_set(const Poset& p, std::string_view id);

/// The up-set {j : j >= i}: the closure of {i}.
Subset up_set(const Poset& p, int i);
Subset up_set(const Poset& p, std::string_view id);

/// Open = downward closed.
bool is_open(const Subset& s);

/// Smallest open superset: the union of the down-sets of the members.
Subset min_open(const Subset& s);

/// Union of up-sets of members: the topological closure of s.
Subset closure(const Subset& s);

/// Every pair of members has an upper bound inside s. For finite nonempty
/// directed s this is witnessed by a maximum.
bool is_directed(const Subset& s);
std::optional<int> directed_maximum(const Subset& s);

/// Every element of the (directed) parent lies below some member.
bool is_cofinal(const Subset& s);

MonotoneMap check_monotone(const std::vector<std::pair<std::string, std::string>>& assignment,
                           const Poset& source, const Poset& target);

/// Sub-poset on the members of s with the induced order; element order is
/// inherited from the parent.
Poset induced_poset(const Subset& s);

/// Inclusion of the induced poset of s into the parent.
MonotoneMap inclusion_map(const Subset& s);

struct CofinalChain {
  Subset chain;        // totally ordered cofinal subset N
  Poset chain_poset;   // N with the induced order
  MonotoneMap retraction;  // g : P -> N, g(j) = least element of N above j
};

/// Defaults to N = {max P}. A caller-provided chain is only validated and
/// retracted. The retraction is left adjoint to the inclusion.
CofinalChain cofinal_chain(const Poset& p, std::optional<Subset> requested = std::nullopt);

/// Right adjoint of f when it exists: g(j) = the unique maximal element of
/// f^{-1}(down_set(j)), provided every such preimage is a principal
/// down-set. Absence is a value, not an error.
std::optional<MonotoneMap> galois_right_adjoint(const MonotoneMap& f);

/// Both characterizations of a Galois connection are evaluated and must
/// agree: f(g(j)) <= j and g(f(i)) >= i, equivalently f(i) <= j iff i <= g(j).
bool is_galois_pair(const MonotoneMap& f, const MonotoneMap& g);

}  // namespace alexandrov
