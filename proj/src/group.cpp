#include "blockdescent/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace bd {

// ---------------------------------------------------------------- Perm

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), std::uint16_t{0});
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[a[x]] = static_cast<std::uint16_t>(x);
  return r;
}

namespace {

std::vector<std::vector<std::size_t>> tokenize_cycles(const std::string& text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip_ws();
  while (i < n) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation", 0);
    ++i;
    std::vector<std::size_t> cyc;
    skip_ws();
    while (i < n && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected a point number", 0);
      std::size_t v = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 65535) throw ParseError("point number too large", 0);
        ++i;
      }
      if (v == 0) throw ParseError("points are numbered from 1", 0);
      cyc.push_back(v);
      skip_ws();
    }
    if (i >= n) throw ParseError("unterminated cycle", 0);
    ++i;
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return cycles;
}

}  // namespace

std::size_t max_point(const std::string& text) {
  std::size_t m = 0;
  for (const auto& c : tokenize_cycles(text))
    for (auto v : c) m = std::max(m, v);
  return m;
}

Perm parse_cycles(const std::string& text, std::size_t degree) {
  Perm p = perm_identity(degree);
  std::vector<char> seen(degree + 1, 0);
  for (const auto& c : tokenize_cycles(text)) {
    for (auto v : c) {
      if (v > degree) throw ParseError("point exceeds degree", 0);
      if (seen[v]) throw ParseError("point repeated in cycle notation", 0);
      seen[v] = 1;
    }
    for (std::size_t k = 0; k < c.size(); ++k)
      p[c[k] - 1] = static_cast<std::uint16_t>(c[(k + 1) % c.size()] - 1);
  }
  return p;
}

std::string format_cycles(const Perm& p) {
  std::ostringstream os;
  std::vector<char> done(p.size(), 0);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (done[s] || p[s] == s) continue;
    os << '(';
    std::size_t x = s;
    bool first = true;
    while (!done[x]) {
      done[x] = 1;
      os << (first ? "" : " ") << x + 1;
      first = false;
      x = p[x];
    }
    os << ')';
  }
  std::string r = os.str();
  return r.empty() ? "()" : r;
}

// ---------------------------------------------------------------- PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap)
    : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_) {
    if (g.size() != degree_) throw ShapeMismatch("generator degree mismatch");
    std::vector<char> hit(degree_, 0);
    for (auto x : g) {
      if (x >= degree_ || hit[x]) throw PreconditionFailed("generator is not a permutation");
      hit[x] = 1;
    }
  }
  std::set<Perm> seen;
  std::deque<Perm> queue;
  Perm id = perm_identity(degree_);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens_) {
      Perm y = perm_compose(s, x);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        queue.push_back(std::move(y));
      }
    }
  }
  elems_.assign(seen.begin(), seen.end());
  finish();
}

void PermGroup::finish() {
  const std::size_t n = elems_.size();
  index_.clear();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elems_[i], static_cast<int>(i));
  gen_idx_.clear();
  for (const auto& g : gens_) gen_idx_.push_back(index_of(g));
  inv_.assign(n, 0);
  if (product_) {
    const int m = static_cast<int>(product_->right->order());
    for (std::size_t i = 0; i < n; ++i) {
      const int x = static_cast<int>(i);
      inv_[i] = product_->left->inv(x / m) * m + product_->right->inv(x % m);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) inv_[i] = index_of(perm_inverse(elems_[i]));
  }
  table_.clear();
  if (n <= 1024) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int c;
        if (product_) {
          const auto& R = *product_->right;
          const int m = static_cast<int>(R.order());
          c = product_->left->mul(static_cast<int>(a) / m, static_cast<int>(b) / m) * m +
              R.mul(static_cast<int>(a) % m, static_cast<int>(b) % m);
        } else {
          c = index_of(perm_compose(elems_[a], elems_[b]));
        }
        table_[a * n + b] = static_cast<std::uint16_t>(c);
      }
  }
  parent_.assign(n, -1);
  pgen_.assign(n, -1);
  bfs_.clear();
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  bfs_.push_back(0);
  for (std::size_t k = 0; k < bfs_.size(); ++k) {
    int x = bfs_[k];
    for (std::size_t s = 0; s < gen_idx_.size(); ++s) {
      int y = mul(gen_idx_[s], x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        parent_[static_cast<std::size_t>(y)] = x;
        pgen_[static_cast<std::size_t>(y)] = static_cast<int>(s);
        bfs_.push_back(y);
      }
    }
  }
  classes_.clear();
  classes();
}

int PermGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int PermGroup::mul(int a, int b) const {
  const std::size_t n = elems_.size();
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
  if (product_) {
    const int m = static_cast<int>(product_->right->order());
    return product_->left->mul(a / m, b / m) * m + product_->right->mul(a % m, b % m);
  }
  return index_of(perm_compose(element(a), element(b)));
}

int PermGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

const std::vector<std::vector<int>>& PermGroup::classes() const {
  if (!classes_.empty()) return classes_;
  const std::size_t n = order();
  class_of_.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (class_of_[s] >= 0) continue;
    const int id = static_cast<int>(classes_.size());
    std::vector<int> cls{static_cast<int>(s)};
    class_of_[s] = id;
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (int g : gen_idx_) {
        int y = conj(g, cls[k]);
        if (class_of_[static_cast<std::size_t>(y)] < 0) {
          class_of_[static_cast<std::size_t>(y)] = id;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
  return classes_;
}

int PermGroup::class_of(int i) const {
  classes();
  return class_of_[static_cast<std::size_t>(i)];
}

GroupPtr make_group(std::size_t degree, std::vector<Perm> generators, std::size_t cap) {
  return std::make_shared<PermGroup>(degree, std::move(generators), cap);
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
  if (g->order() * h->order() > cap) throw CapExceeded("product order exceeds cap " + std::to_string(cap));
  auto r = std::shared_ptr<PermGroup>(new PermGroup());
  const std::size_t dg = g->degree(), dh = h->degree();
  r->degree_ = dg + dh;
  auto lift = [&](const Perm& a, const Perm& b) {
    Perm p(dg + dh);
    for (std::size_t x = 0; x < dg; ++x) p[x] = a[x];
    for (std::size_t x = 0; x < dh; ++x) p[dg + x] = static_cast<std::uint16_t>(b[x] + dg);
    return p;
  };
  for (int s : g->generator_indices()) r->gens_.push_back(lift(g->element(s), h->element(0)));
  for (int s : h->generator_indices()) r->gens_.push_back(lift(g->element(0), h->element(s)));
  r->elems_.reserve(g->order() * h->order());
  for (const auto& a : g->elements())
    for (const auto& b : h->elements()) r->elems_.push_back(lift(a, b));
  r->product_ = PermGroup::ProductInfo{g, h};
  r->finish();
  if (!g->label.empty() && !h->label.empty()) r->label = g->label + "x" + h->label;
  return r;
}

int product_index(const PermGroup& gh, int g, int h) {
  if (!gh.product_info()) throw PreconditionFailed("not a product group");
  return g * static_cast<int>(gh.product_info()->right->order()) + h;
}

std::pair<int, int> product_split(const PermGroup& gh, int x) {
  if (!gh.product_info()) throw PreconditionFailed("not a product group");
  const int m = static_cast<int>(gh.product_info()->right->order());
  return {x / m, x % m};
}

int inject_left(const PermGroup& gh, int g) { return product_index(gh, g, 0); }
int inject_right(const PermGroup& gh, int h) { return product_index(gh, 0, h); }

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr ambient, std::vector<int> elements)
    : ambient_(std::move(ambient)), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool Subgroup::contains(int g) const { return std::binary_search(elems_.begin(), elems_.end(), g); }

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(), elems_.end());
}

std::vector<int> Subgroup::generators() const {
  std::vector<int> gens;
  Subgroup cur = trivial_subgroup(ambient_);
  // Prefer elements of large order so that cyclic groups get one generator.
  std::vector<int> order = elems_;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ambient_->element_order(a) > ambient_->element_order(b); });
  for (int x : order) {
    if (cur.order() == elems_.size()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generate(ambient_, gens);
  }
  return gens;
}

GroupPtr Subgroup::as_group() const {
  std::vector<Perm> gens;
  for (int g : generators()) gens.push_back(ambient_->element(g));
  auto g = make_group(ambient_->degree(), std::move(gens));
  if (g->order() != order()) throw Inconsistency("subgroup regeneration mismatch");
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (g->element(static_cast<int>(i)) != ambient_->element(elems_[i]))
      throw Inconsistency("subgroup element order mismatch");
  return g;
}

Subgroup whole(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup generate(const GroupPtr& g, const std::vector<int>& gens) {
  std::vector<char> in(g->order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int s : gens) {
      int y = g->mul(s, elems[k]);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        elems.push_back(y);
      }
    }
  return Subgroup(g, std::move(elems));
}

Subgroup conjugate(const Subgroup& s, int x) {
  std::vector<int> e;
  e.reserve(s.order());
  for (int a : s.elements()) e.push_back(s.ambient()->conj(x, a));
  return Subgroup(s.ambient(), std::move(e));
}

bool is_p_group(const Subgroup& s, unsigned p) {
  std::size_t n = s.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

Subgroup sylow(const GroupPtr& g, unsigned p) {
  std::size_t target = 1, n = g->order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  Subgroup P = trivial_subgroup(g);
  std::vector<int> gens;
  for (std::size_t x = 1; x < g->order() && P.order() < target; ++x) {
    const int xi = static_cast<int>(x);
    if (P.contains(xi)) continue;
    Subgroup sx = generate(g, {xi});
    if (!is_p_group(sx, p)) continue;
    gens.push_back(xi);
    Subgroup cand = generate(g, gens);
    if (is_p_group(cand, p))
      P = cand;
    else
      gens.pop_back();
  }
  if (P.order() != target) throw Inconsistency("greedy Sylow search stalled");
  return P;
}

Subgroup normalizer(const GroupPtr& g, const Subgroup& s) {
  if (s.ambient().get() != g.get()) throw PreconditionFailed("subgroup of a different group");
  std::vector<int> gens = s.generators();
  std::vector<int> out;
  for (std::size_t x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int a : gens)
      if (!s.contains(g->conj(static_cast<int>(x), a))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(static_cast<int>(x));
  }
  return Subgroup(g, std::move(out));
}

Subgroup centralizer(const GroupPtr& g, const Subgroup& s) {
  if (s.ambient().get() != g.get()) throw PreconditionFailed("subgroup of a different group");
  std::vector<int> gens = s.generators();
  std::vector<int> out;
  for (std::size_t x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int a : gens)
      if (g->mul(static_cast<int>(x), a) != g->mul(a, static_cast<int>(x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(static_cast<int>(x));
  }
  return Subgroup(g, std::move(out));
}

std::vector<Subgroup> subgroups_of(const Subgroup& s) {
  if (s.order() > 256) throw CapExceeded("subgroup enumeration limited to order 256");
  const GroupPtr& g = s.ambient();
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> all;
  std::vector<std::vector<int>> gensets;
  Subgroup t = trivial_subgroup(g);
  seen.insert(t.elements());
  all.push_back(t);
  gensets.push_back({});
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (int x : s.elements()) {
      if (all[k].contains(x)) continue;
      std::vector<int> gens = gensets[k];
      gens.push_back(x);
      Subgroup h = generate(g, gens);
      if (seen.insert(h.elements()).second) {
        all.push_back(h);
        gensets.push_back(std::move(gens));
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return all;
}

std::optional<int> conjugacy_test(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  for (std::size_t x = 0; x < g->order(); ++x)
    if (conjugate(a, static_cast<int>(x)) == b) return static_cast<int>(x);
  return std::nullopt;
}

Subgroup diagonal(const GroupPtr& gh, const Subgroup& p, const std::vector<int>& phi_left,
                  const std::vector<int>& phi_right) {
  if (!gh->product_info()) throw PreconditionFailed("diagonal needs a product group");
  std::vector<int> e;
  for (int u : p.elements()) {
    int l = phi_left.empty() ? u : phi_left[static_cast<std::size_t>(u)];
    int r = phi_right.empty() ? u : phi_right[static_cast<std::size_t>(u)];
    if (l < 0 || r < 0) throw PreconditionFailed("subgroup not contained in both factors");
    e.push_back(product_index(*gh, l, r));
  }
  return Subgroup(gh, std::move(e));
}

std::vector<int> inclusion_map(const Subgroup& sub) { return sub.elements(); }

std::vector<int> element_map(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) throw ShapeMismatch("element_map: degree mismatch");
  std::vector<int> m(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) {
    m[i] = g.index_of(h.element(static_cast<int>(i)));
    if (m[i] < 0) throw PreconditionFailed("element_map: not a subgroup");
  }
  return m;
}

std::optional<std::vector<int>> find_isomorphism(const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  auto ga = std::shared_ptr<const PermGroup>(std::shared_ptr<const PermGroup>{}, &a);
  std::vector<int> gens = whole(ga).generators();
  const std::size_t n = a.order();
  // Words for every element of a over gens.
  std::vector<int> parent(n, -1), via(n, -1), order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int y = a.mul(gens[s], order[k]);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        parent[static_cast<std::size_t>(y)] = order[k];
        via[static_cast<std::size_t>(y)] = static_cast<int>(s);
        order.push_back(y);
      }
    }
  std::vector<int> img(gens.size());
  std::vector<int> map(n);
  auto attempt = [&]() -> bool {
    std::vector<char> used(n, 0);
    map[0] = 0;
    used[0] = 1;
    for (std::size_t k = 1; k < order.size(); ++k) {
      int y = order[k];
      int m = b.mul(img[static_cast<std::size_t>(via[static_cast<std::size_t>(y)])],
                    map[static_cast<std::size_t>(parent[static_cast<std::size_t>(y)])]);
      if (used[static_cast<std::size_t>(m)]) return false;
      used[static_cast<std::size_t>(m)] = 1;
      map[static_cast<std::size_t>(y)] = m;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (map[static_cast<std::size_t>(a.mul(gens[s], static_cast<int>(x)))] !=
            b.mul(img[s], map[x]))
          return false;
    return true;
  };
  std::vector<int> ord_a(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s) ord_a[s] = a.element_order(gens[s]);
  std::vector<int> ord_b(n);
  for (std::size_t x = 0; x < n; ++x) ord_b[x] = b.element_order(static_cast<int>(x));
  // Backtracking over generator images with matching element orders.
  std::vector<std::size_t> pos(gens.size(), 0);
  std::size_t level = 0;
  if (gens.empty()) return attempt() ? std::optional(map) : std::nullopt;
  while (true) {
    if (pos[level] >= n) {
      if (level == 0) return std::nullopt;
      pos[level] = 0;
      --level;
      ++pos[level];
      continue;
    }
    if (ord_b[pos[level]] != ord_a[level]) {
      ++pos[level];
      continue;
    }
    img[level] = static_cast<int>(pos[level]);
    if (level + 1 < gens.size()) {
      ++level;
      continue;
    }
    if (attempt()) return map;
    ++pos[level];
  }
}

// ---------------------------------------------------------------- files

GroupPtr parse_group(const std::string& text, std::size_t cap) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<std::string, int>> lines;
  std::size_t degree = 1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      degree = std::max(degree, max_point(line));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at line " + std::to_string(lineno), lineno);
    }
    lines.emplace_back(line, lineno);
  }
  std::vector<Perm> gens;
  for (const auto& [l, no] : lines) {
    try {
      gens.push_back(parse_cycles(l, degree));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at line " + std::to_string(no), no);
    }
  }
  return make_group(degree, std::move(gens), cap);
}

GroupPtr read_group_file(const std::string& path, std::size_t cap) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open group file " + path, 0);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_group(ss.str(), cap);
}

std::string builtin_group_text(const std::string& name) {
  if (name == "a5") return "# alternating group A5\n(1 2 3 4 5)\n(1 2 3)\n";
  if (name == "a4") return "# alternating group A4\n(1 2 3)\n(1 2)(3 4)\n";
  if (name == "v4") return "# Klein four group\n(1 2)(3 4)\n(1 3)(2 4)\n";
  if (name == "v4xc3") return "# Klein four times cyclic of order 3\n(1 2)(3 4)\n(1 3)(2 4)\n(5 6 7)\n";
  if (name == "c3") return "(1 2 3)\n";
  if (name == "s3") return "(1 2 3)\n(1 2)\n";
  if (name == "trivial") return "";
  throw PreconditionFailed("unknown built-in group '" + name + "'");
}

GroupPtr builtin_group(const std::string& name) {
  auto g = parse_group(builtin_group_text(name));
  const_cast<PermGroup&>(*g).label = name;
  return g;
}

}  // namespace bd
