#include "alexandrov/poset.hpp"

#include <algorithm>
#include <set>

namespace alexandrov {

namespace {

std::vector<int> topological_order(int n, const std::vector<char>& leq) {
  // stable: among incomparable elements keep canonical order
  std::vector<int> order;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  for (int round = 0; round < n; ++round) {
    for (int i = 0; i < n; ++i) {
      if (placed[static_cast<std::size_t>(i)]) continue;
      bool ready = true;
      for (int j = 0; j < n && ready; ++j)
        if (j != i && leq[static_cast<std::size_t>(j * n + i)] && !placed[static_cast<std::size_t>(j)])
          ready = false;
      if (ready) {
        placed[static_cast<std::size_t>(i)] = 1;
        order.push_back(i);
      }
    }
    if (static_cast<int>(order.size()) == n) break;
  }
  return order;
}

}  // namespace

Poset Poset::from_closed(std::vector<std::string> ids, std::vector<char> leq) {
  auto data = std::make_shared<Data>();
  int n = static_cast<int>(ids.size());
  data->ids = std::move(ids);
  data->leq = std::move(leq);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(i != j && data->leq[static_cast<std::size_t>(j * n + i)])) continue;  // j < i?
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && data->leq[static_cast<std::size_t>(j * n + k)] &&
            data->leq[static_cast<std::size_t>(k * n + i)])
          cover = false;
      if (cover) data->covers.emplace_back(i, j);
    }
  data->topo = topological_order(n, data->leq);
  // longest chain length by dynamic programming along the linear extension
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  int height = 0;
  for (int i : data->topo) {
    for (auto& [upper, lower] : data->covers)
      if (upper == i)
        depth[static_cast<std::size_t>(i)] =
            std::max(depth[static_cast<std::size_t>(i)], depth[static_cast<std::size_t>(lower)] + 1);
    height = std::max(height, depth[static_cast<std::size_t>(i)]);
  }
  data->height = height;
  return Poset(std::move(data));
}

Poset Poset::validate(std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& raw_leq) {
  std::set<std::string> seen;
  for (const auto& id : elements)
    if (!seen.insert(id).second) throw DuplicateElement("duplicate element '" + id + "'");
  int n = static_cast<int>(elements.size());
  auto idx = [&](const std::string& id) {
    auto it = std::find(elements.begin(), elements.end(), id);
    if (it == elements.end()) throw UnknownElement("unknown element '" + id + "' in relation");
    return static_cast<int>(it - elements.begin());
  };
  std::vector<char> leq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i * n + i)] = 1;
  for (const auto& [lo, hi] : raw_leq) leq[static_cast<std::size_t>(idx(lo) * n + idx(hi))] = 1;
  // Floyd–Warshall-style transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!leq[static_cast<std::size_t>(i * n + k)]) continue;
      for (int j = 0; j < n; ++j)
        if (leq[static_cast<std::size_t>(k * n + j)]) leq[static_cast<std::size_t>(i * n + j)] = 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[static_cast<std::size_t>(i * n + j)] && leq[static_cast<std::size_t>(j * n + i)])
        throw CycleError("antisymmetry fails: " + elements[static_cast<std::size_t>(i)] +
                         " <= " + elements[static_cast<std::size_t>(j)] + " and " +
                         elements[static_cast<std::size_t>(j)] +
                         " <= " + elements[static_cast<std::size_t>(i)]);
  return from_closed(std::move(elements), std::move(leq));
}

Poset Poset::chain(int n, const std::string& prefix) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(i + 1)]);
  return validate(std::move(ids), rel);
}

Poset Poset::antichain(int n, const std::string& prefix) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return validate(std::move(ids), {});
}

Poset Poset::point(const std::string& id) { return validate({id}, {}); }

Poset Poset::empty() { return validate({}, {}); }

int Poset::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw UnknownElement("unknown element '" + std::string(id) + "'");
  return *found;
}

std::optional<int> Poset::find(std::string_view id) const {
  for (std::size_t i = 0; i < data_->ids.size(); ++i)
    if (data_->ids[i] == id) return static_cast<int>(i);
  return std::nullopt;
}

bool Poset::is_directed() const {
  int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool bounded = false;
      for (int k = 0; k < n && !bounded; ++k) bounded = leq(i, k) && leq(j, k);
      if (!bounded) return false;
    }
  return true;
}

bool Poset::is_total_order() const {
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (!leq(i, j) && !leq(j, i)) return false;
  return true;
}

std::optional<int> Poset::maximum() const {
  for (int m = 0; m < size(); ++m) {
    bool top = true;
    for (int i = 0; i < size() && top; ++i) top = leq(i, m);
    if (top) return m;
  }
  return std::nullopt;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    bool maximal = true;
    for (int j = 0; j < size() && maximal; ++j) maximal = !lt(i, j);
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<int>> Poset::chains_of_length(int n) const {
  std::vector<std::vector<int>> cur;
  for (int i = 0; i < size(); ++i) cur.push_back({i});
  for (int step = 0; step < n; ++step) {
    std::vector<std::vector<int>> next;
    for (const auto& c : cur)
      for (int j = 0; j < size(); ++j)
        if (lt(c.back(), j)) {
          auto extended = c;
          extended.push_back(j);
          next.push_back(std::move(extended));
        }
    cur = std::move(next);
  }
  return cur;
}

// --- Subset ---

Subset Subset::of_indices(const Poset& p, const std::vector<int>& indices) {
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (int i : indices) {
    if (i < 0 || i >= p.size()) throw UnknownElement("subset index out of range");
    mask[static_cast<std::size_t>(i)] = 1;
  }
  return Subset(p, std::move(mask));
}

Subset Subset::of_ids(const Poset& p, const std::vector<std::string>& ids) {
  std::vector<int> idx;
  for (const auto& id : ids) idx.push_back(p.index_of(id));
  return of_indices(p, idx);
}

Subset Subset::all(const Poset& p) {
  return Subset(p, std::vector<char>(static_cast<std::size_t>(p.size()), 1));
}

Subset Subset::none(const Poset& p) {
  return Subset(p, std::vector<char>(static_cast<std::size_t>(p.size()), 0));
}

int Subset::count() const {
  int c = 0;
  for (char m : mask_) c += m != 0;
  return c;
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  for (int i = 0; i < parent_.size(); ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<std::string> Subset::ids() const {
  std::vector<std::string> out;
  for (int i : indices()) out.push_back(parent_.id_of(i));
  return out;
}

Subset Subset::complement() const {
  std::vector<char> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] ? 0 : 1;
  return Subset(parent_, std::move(mask));
}

Subset Subset::intersect(const Subset& o) const {
  if (parent_ != o.parent_) throw ShapeMismatch("subsets of different posets");
  std::vector<char> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] && o.mask_[i];
  return Subset(parent_, std::move(mask));
}

Subset Subset::unite(const Subset& o) const {
  if (parent_ != o.parent_) throw ShapeMismatch("subsets of different posets");
  std::vector<char> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = (mask_[i] || o.mask_[i]) ? 1 : 0;
  return Subset(parent_, std::move(mask));
}

bool Subset::subset_of(const Subset& o) const {
  if (parent_ != o.parent_) throw ShapeMismatch("subsets of different posets");
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !o.mask_[i]) return false;
  return true;
}

// --- MonotoneMap ---

MonotoneMap MonotoneMap::validate(Poset source, Poset target, std::vector<int> values) {
  if (static_cast<int>(values.size()) != source.size())
    throw ShapeMismatch("map must assign a value to every source element");
  for (int v : values)
    if (v < 0 || v >= target.size()) throw UnknownElement("map value out of range");
  for (int i = 0; i < source.size(); ++i)
    for (int j = 0; j < source.size(); ++j)
      if (source.leq(i, j) &&
          !target.leq(values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)]))
        throw NotMonotone("order not preserved: " + source.id_of(i) + " <= " + source.id_of(j) +
                          " but " + target.id_of(values[static_cast<std::size_t>(i)]) +
                          " !<= " + target.id_of(values[static_cast<std::size_t>(j)]));
  return MonotoneMap(std::move(source), std::move(target), std::move(values));
}

MonotoneMap MonotoneMap::validate_ids(
    const Poset& source, const Poset& target,
    const std::vector<std::pair<std::string, std::string>>& assignment) {
  std::vector<int> values(static_cast<std::size_t>(source.size()), -1);
  for (const auto& [from, to] : assignment) {
    int s = source.index_of(from);
    if (values[static_cast<std::size_t>(s)] != -1)
      throw ParseError("element '" + from + "' mapped twice");
    values[static_cast<std::size_t>(s)] = target.index_of(to);
  }
  for (int i = 0; i < source.size(); ++i)
    if (values[static_cast<std::size_t>(i)] == -1)
      throw ParseError("element '" + source.id_of(i) + "' has no image");
  return validate(source, target, std::move(values));
}

MonotoneMap MonotoneMap::identity(const Poset& p) {
  std::vector<int> v(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) v[static_cast<std::size_t>(i)] = i;
  return MonotoneMap(p, p, std::move(v));
}

MonotoneMap MonotoneMap::constant(const Poset& source, const Poset& target, int target_index) {
  if (target_index < 0 || target_index >= target.size())
    throw UnknownElement("constant map target out of range");
  return MonotoneMap(source, target,
                     std::vector<int>(static_cast<std::size_t>(source.size()), target_index));
}

bool MonotoneMap::is_surjective() const { return image().count() == target_.size(); }

Subset MonotoneMap::image() const {
  std::vector<char> mask(static_cast<std::size_t>(target_.size()), 0);
  for (int v : values_) mask[static_cast<std::size_t>(v)] = 1;
  return Subset(target_, std::move(mask));
}

Subset MonotoneMap::preimage(const Subset& target_subset) const {
  if (target_subset.parent() != target_) throw ShapeMismatch("preimage of foreign subset");
  std::vector<char> mask(static_cast<std::size_t>(source_.size()), 0);
  for (int i = 0; i < source_.size(); ++i)
    mask[static_cast<std::size_t>(i)] = target_subset.contains(values_[static_cast<std::size_t>(i)]);
  return Subset(source_, std::move(mask));
}

MonotoneMap MonotoneMap::compose_after(const MonotoneMap& first) const {
  if (first.target_ != source_) throw NotComposable("maps do not compose");
  std::vector<int> v(static_cast<std::size_t>(first.source_.size()));
  for (int i = 0; i < first.source_.size(); ++i)
    v[static_cast<std::size_t>(i)] = values_[static_cast<std::size_t>(first(i))];
  return MonotoneMap(first.source_, target_, std::move(v));
}

// --- free functions ---

Poset validate_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& relations) {
  return Poset::validate(elements, relations);
}

Subset down_set(const Poset& p, int i) {
  if (i < 0 || i >= p.size()) throw UnknownElement("element index out of range");
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (int j = 0; j < p.size(); ++j) mask[static_cast<std::size_t>(j)] = p.leq(j, i);
  return Subset(p, std::move(mask));
}

Subset down_set(const Poset& p, std::string_view id) { return down_set(p, p.index_of(id)); }

Subset up_set(const Poset& p, int i) {
  if (i < 0 || i >= p.size()) throw UnknownElement("element index out of range");
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (int j = 0; j < p.size(); ++j) mask[static_cast<std::size_t>(j)] = p.leq(i, j);
  return Subset(p, std::move(mask));
}

Subset up_set(const Poset& p, std::string_view id) { return up_set(p, p.index_of(id)); }

bool is_open(const Subset& s) {
  const Poset& p = s.parent();
  for (int i = 0; i < p.size(); ++i) {
    if (!s.contains(i)) continue;
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(j, i) && !s.contains(j)) return false;
  }
  return true;
}

Subset min_open(const Subset& s) {
  const Poset& p = s.parent();
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (int i = 0; i < p.size(); ++i) {
    if (!s.contains(i)) continue;
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(j, i)) mask[static_cast<std::size_t>(j)] = 1;
  }
  return Subset(p, std::move(mask));
}

Subset closure(const Subset& s) {
  const Poset& p = s.parent();
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (int i = 0; i < p.size(); ++i) {
    if (!s.contains(i)) continue;
    for (int j = 0; j < p.size(); ++j)
      if (p.leq(i, j)) mask[static_cast<std::size_t>(j)] = 1;
  }
  return Subset(p, std::move(mask));
}

bool is_directed(const Subset& s) {
  const Poset& p = s.parent();
  auto members = s.indices();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      bool bounded = false;
      for (int k : members)
        if (p.leq(members[a], k) && p.leq(members[b], k)) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  return true;
}

std::optional<int> directed_maximum(const Subset& s) {
  if (!is_directed(s) || s.empty()) return std::nullopt;
  const Poset& p = s.parent();
  auto members = s.indices();
  for (int m : members) {
    bool top = true;
    for (int i : members)
      if (!p.leq(i, m)) {
        top = false;
        break;
      }
    if (top) return m;
  }
  return std::nullopt;  // unreachable for finite nonempty directed subsets
}

bool is_cofinal(const Subset& s) {
  const Poset& p = s.parent();
  if (!p.is_directed()) throw NotDirected("cofinality needs a directed ambient poset");
  for (int i = 0; i < p.size(); ++i) {
    bool dominated = false;
    for (int m : s.indices())
      if (p.leq(i, m)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

MonotoneMap check_monotone(const std::vector<std::pair<std::string, std::string>>& assignment,
                           const Poset& source, const Poset& target) {
  return MonotoneMap::validate_ids(source, target, assignment);
}

Poset induced_poset(const Subset& s) {
  const Poset& p = s.parent();
  auto members = s.indices();
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i : members) ids.push_back(p.id_of(i));
  for (int i : members)
    for (int j : members)
      if (i != j && p.leq(i, j)) rel.emplace_back(p.id_of(i), p.id_of(j));
  return Poset::validate(std::move(ids), rel);
}

MonotoneMap inclusion_map(const Subset& s) {
  Poset sub = induced_poset(s);
  std::vector<int> values;
  for (int i : s.indices()) values.push_back(i);
  return MonotoneMap::validate(sub, s.parent(), std::move(values));
}

CofinalChain cofinal_chain(const Poset& p, std::optional<Subset> requested) {
  if (p.size() == 0) throw EmptyPoset("cofinal chain of the empty poset");
  if (!p.is_directed()) throw NotDirected("cofinal chain needs a directed poset");
  Subset chain = requested.value_or(Subset::of_indices(p, {*p.maximum()}));
  if (chain.parent() != p) throw ShapeMismatch("requested chain lives on another poset");
  if (chain.empty()) throw NotCofinal("requested chain is empty");
  auto members = chain.indices();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (!p.leq(members[a], members[b]) && !p.leq(members[b], members[a]))
        throw NotAChain("requested subset is not totally ordered");
  if (!is_cofinal(chain)) throw NotCofinal("requested chain is not cofinal");
  Poset n = induced_poset(chain);
  std::vector<int> g(static_cast<std::size_t>(p.size()), -1);
  for (int j = 0; j < p.size(); ++j) {
    int best = -1;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (!p.leq(j, members[k])) continue;
      if (best == -1 || p.leq(members[k], members[static_cast<std::size_t>(best)]))
        best = static_cast<int>(k);
    }
    g[static_cast<std::size_t>(j)] = best;  // cofinality guarantees best != -1
  }
  return CofinalChain{chain, n, MonotoneMap::validate(p, n, std::move(g))};
}

std::optional<MonotoneMap> galois_right_adjoint(const MonotoneMap& f) {
  const Poset& src = f.source();
  const Poset& tgt = f.target();
  std::vector<int> g(static_cast<std::size_t>(tgt.size()), -1);
  for (int j = 0; j < tgt.size(); ++j) {
    Subset fiber = f.preimage(down_set(tgt, j));
    auto members = fiber.indices();
    if (members.empty()) return std::nullopt;
    int best = -1;
    for (int i : members) {
      bool top = true;
      for (int k : members)
        if (!src.leq(k, i)) {
          top = false;
          break;
        }
      if (top) {
        best = i;
        break;
      }
    }
    if (best == -1) return std::nullopt;  // several maximal elements
    g[static_cast<std::size_t>(j)] = best;
  }
  return MonotoneMap::validate(tgt, src, std::move(g));
}

bool is_galois_pair(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.source() != g.target() || f.target() != g.source())
    throw ShapeMismatch("adjoint candidate does not reverse f");
  const Poset& src = f.source();
  const Poset& tgt = f.target();
  bool unit_counit = true;
  for (int j = 0; j < tgt.size() && unit_counit; ++j) unit_counit = tgt.leq(f(g(j)), j);
  for (int i = 0; i < src.size() && unit_counit; ++i) unit_counit = src.leq(i, g(f(i)));
  bool hom_iso = true;
  for (int i = 0; i < src.size() && hom_iso; ++i)
    for (int j = 0; j < tgt.size() && hom_iso; ++j)
      hom_iso = (tgt.leq(f(i), j) == src.leq(i, g(j)));
  if (unit_counit != hom_iso)
    throw Error("internal: the two Galois characterizations disagree");
  return unit_counit;
}

}  // namespace alexandrov
