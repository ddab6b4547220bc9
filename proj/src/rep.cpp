#include "blockdescent/rep.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace bd {

namespace {

Matrix permutation_matrix(const FieldPtr& f, const std::vector<int>& image) {
  Matrix m(f, image.size(), image.size());
  for (std::size_t x = 0; x < image.size(); ++x) m(static_cast<std::size_t>(image[x]), x) = 1;
  return m;
}

void add_scaled(const Field& F, Elt s, const Matrix& x, Matrix& acc) {
  for (std::size_t i = 0; i < x.rows(); ++i) vec_axpy(F, s, x.row(i), acc.row(i));
}

void require_same(const RepModule& a, const RepModule& b) {
  if (*a.field() != *b.field()) throw FieldMismatch("modules over different fields");
  if (a.group() != b.group() && a.group()->elements() != b.group()->elements())
    throw ShapeMismatch("modules over different groups");
}

int index_in(const Subgroup& s, int g) {
  auto it = std::lower_bound(s.elements().begin(), s.elements().end(), g);
  if (it == s.elements().end() || *it != g) throw PreconditionFailed("element not in subgroup");
  return static_cast<int>(it - s.elements().begin());
}

}  // namespace

// ---------------------------------------------------------------- RepModule

struct RepModule::Cache {
  bool built = false;
  std::vector<Matrix> elems;        // every element (plain groups)
  std::vector<Matrix> left, right;  // (g, 1) and (1, h) (product groups)
};

RepModule::RepModule(FieldPtr f, GroupPtr g, std::size_t dim, Gens gens, std::string lab)
    : label(std::move(lab)),
      field_(std::move(f)),
      group_(std::move(g)),
      dim_(dim),
      gens_(std::move(gens)),
      cache_(std::make_shared<Cache>()) {
  if (gens_.size() != group_->generator_indices().size()) throw ShapeMismatch("one matrix per generator expected");
  for (const auto& m : gens_)
    if (m.rows() != dim_ || m.cols() != dim_) throw ShapeMismatch("generator matrix has the wrong size");
}

const RepModule::Cache& RepModule::cache() const {
  Cache& c = *cache_;
  if (c.built) return c;
  const PermGroup& G = *group_;
  auto fill = [&](const PermGroup& h, std::size_t gen_offset, std::vector<Matrix>& out) {
    out.assign(h.order(), Matrix());
    out[0] = Matrix::identity(field_, dim_);
    for (int x : h.bfs_order()) {
      if (x == 0) continue;
      out[static_cast<std::size_t>(x)] =
          gens_[gen_offset + static_cast<std::size_t>(h.word_gen(x))] * out[static_cast<std::size_t>(h.word_parent(x))];
    }
  };
  if (const auto& pi = G.product_info()) {
    fill(*pi->left, 0, c.left);
    fill(*pi->right, pi->left->generator_indices().size(), c.right);
  } else {
    fill(G, 0, c.elems);
  }
  c.built = true;
  return c;
}

Matrix RepModule::action(int g) const {
  const Cache& c = cache();
  if (!group_->product_info()) return c.elems[static_cast<std::size_t>(g)];
  auto [a, b] = product_split(*group_, g);
  if (a == 0) return c.right[static_cast<std::size_t>(b)];
  if (b == 0) return c.left[static_cast<std::size_t>(a)];
  return c.left[static_cast<std::size_t>(a)] * c.right[static_cast<std::size_t>(b)];
}

Matrix RepModule::act_element(const AlgebraElement& x) const {
  const Field& F = *field_;
  const Cache& c = cache();
  Matrix acc(field_, dim_, dim_);
  if (!group_->product_info()) {
    for (std::size_t g = 0; g < x.size(); ++g)
      if (x[g]) add_scaled(F, x[g], c.elems[g], acc);
    return acc;
  }
  const std::size_t m = c.right.size();
  for (std::size_t a = 0; a < c.left.size(); ++a) {
    Matrix inner(field_, dim_, dim_);
    bool any = false;
    for (std::size_t b = 0; b < m; ++b)
      if (Elt s = x[a * m + b]) {
        add_scaled(F, s, c.right[b], inner);
        any = true;
      }
    if (any) acc = acc + c.left[a] * inner;
  }
  return acc;
}

Matrix RepModule::act_pure(const AlgebraElement& x, const AlgebraElement& y) const {
  const Field& F = *field_;
  const Cache& c = cache();
  if (!group_->product_info()) throw PreconditionFailed("act_pure needs a product group");
  Matrix l(field_, dim_, dim_), r(field_, dim_, dim_);
  for (std::size_t a = 0; a < x.size(); ++a)
    if (x[a]) add_scaled(F, x[a], c.left[a], l);
  for (std::size_t b = 0; b < y.size(); ++b)
    if (y[b]) add_scaled(F, y[b], c.right[b], r);
  return l * r;
}

std::vector<Vec> RepModule::orbit(const Vec& v) const {
  const PermGroup& G = *group_;
  std::vector<Vec> out(G.order());
  out[0] = v;
  for (int x : G.bfs_order()) {
    if (x == 0) continue;
    out[static_cast<std::size_t>(x)] =
        gens_[static_cast<std::size_t>(G.word_gen(x))] * out[static_cast<std::size_t>(G.word_parent(x))];
  }
  return out;
}

bool RepModule::check(Rng& rng, std::size_t samples) const {
  const PermGroup& G = *group_;
  for (std::size_t s = 0; s < gens_.size(); ++s) {
    if (action(G.generator_indices()[s]) != gens_[s]) return false;
    Matrix p = Matrix::identity(field_, dim_);
    for (int k = 0; k < G.element_order(G.generator_indices()[s]); ++k) p = p * gens_[s];
    if (!p.is_identity()) return false;
  }
  for (std::size_t t = 0; t < samples; ++t) {
    int a = static_cast<int>(rng.below(G.order())), b = static_cast<int>(rng.below(G.order()));
    if (action(G.mul(a, b)) != action(a) * action(b)) return false;
  }
  return true;
}

bool ModuleMap::is_equivariant() const {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  for (std::size_t s = 0; s < source.gens().size(); ++s)
    if (target.gens()[s] * matrix != matrix * source.gens()[s]) return false;
  return true;
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
  if (inner.target.dim() != source.dim()) throw ShapeMismatch("maps do not compose");
  return {inner.source, target, matrix * inner.matrix};
}

// ---------------------------------------------------------------- constructors

RepModule trivial_module(const FieldPtr& f, const GroupPtr& g) {
  return RepModule(f, g, 1, Gens(g->generator_indices().size(), Matrix::identity(f, 1)), "trivial");
}

RepModule zero_module(const FieldPtr& f, const GroupPtr& g) {
  return RepModule(f, g, 0, Gens(g->generator_indices().size(), Matrix(f, 0, 0)), "zero");
}

RepModule regular_module(const GroupAlgebra& ga) {
  const PermGroup& G = *ga.group();
  Gens gens;
  for (int s : G.generator_indices()) {
    std::vector<int> img(G.order());
    for (std::size_t x = 0; x < G.order(); ++x) img[x] = G.mul(s, static_cast<int>(x));
    gens.push_back(permutation_matrix(ga.field(), img));
  }
  return RepModule(ga.field(), ga.group(), G.order(), std::move(gens), "regular");
}

namespace {

// Module on an invariant subspace of kG spanned by seeds under the given
// coefficient permutations.
RepModule spin_in_group_algebra(const GroupAlgebra& ga, const std::vector<Vec>& seeds,
                                const std::vector<std::vector<int>>& perms, GroupPtr acting, Matrix* basis_out) {
  const FieldPtr& f = ga.field();
  const std::size_t n = ga.dim();
  auto apply = [&](const std::vector<int>& p, const Vec& x) {
    Vec y(n, 0);
    for (std::size_t g = 0; g < n; ++g)
      if (x[g]) y[static_cast<std::size_t>(p[g])] = x[g];
    return y;
  };
  RowSpace w(f, n);
  std::deque<Vec> queue;
  for (const auto& s : seeds)
    if (w.insert(s)) queue.push_back(s);
  while (!queue.empty()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& p : perms) {
      Vec u = apply(p, v);
      if (w.insert(u)) queue.push_back(std::move(u));
    }
  }
  Matrix b = w.basis();
  const std::size_t d = w.dim();
  Gens gens;
  for (const auto& p : perms) {
    Matrix m(f, d, d);
    for (std::size_t k = 0; k < d; ++k) {
      Vec c = w.coordinates(apply(p, Vec(b.row(k).begin(), b.row(k).end())));
      for (std::size_t i = 0; i < d; ++i) m(i, k) = c[i];
    }
    gens.push_back(std::move(m));
  }
  if (basis_out) *basis_out = b;
  return RepModule(f, std::move(acting), d, std::move(gens));
}

}  // namespace

RepModule left_ideal_module(const GroupAlgebra& ga, const AlgebraElement& e, Matrix* basis_elements) {
  const PermGroup& G = *ga.group();
  std::vector<std::vector<int>> perms;
  for (int s : G.generator_indices()) {
    std::vector<int> p(G.order());
    for (std::size_t x = 0; x < G.order(); ++x) p[x] = G.mul(s, static_cast<int>(x));
    perms.push_back(std::move(p));
  }
  return spin_in_group_algebra(ga, {e}, perms, ga.group(), basis_elements);
}

RepModule block_regular_module(const GroupAlgebra& ga, const AlgebraElement& b) {
  if (ga.mul(b, b) != b) throw PreconditionFailed("block element is not idempotent");
  for (int s : ga.group()->generator_indices())
    if (ga.conjugate(b, s) != b) throw PreconditionFailed("block element is not central");
  RepModule m = left_ideal_module(ga, b);
  m.label = "block";
  return m;
}

RepModule two_sided_module(const GroupAlgebra& ga, const Subgroup& l, const Subgroup& r, const AlgebraElement& e,
                           const AlgebraElement& f, GroupPtr product, Matrix* basis_elements) {
  const PermGroup& G = *ga.group();
  if (!product) product = direct_product(l.as_group(), r.as_group());
  const auto& pi = product->product_info();
  if (!pi) throw PreconditionFailed("two_sided_module needs a product group");
  auto to_ambient = [&](const PermGroup& h, int x) {
    int g = G.index_of(h.element(x));
    if (g < 0) throw ShapeMismatch("factor group is not a subgroup on the same points");
    return g;
  };
  std::vector<std::vector<int>> perms;
  for (int s : pi->left->generator_indices()) {
    int g = to_ambient(*pi->left, s);
    if (!l.contains(g)) throw PreconditionFailed("left factor outside L");
    std::vector<int> p(G.order());
    for (std::size_t x = 0; x < G.order(); ++x) p[x] = G.mul(g, static_cast<int>(x));
    perms.push_back(std::move(p));
  }
  for (int s : pi->right->generator_indices()) {
    int g = to_ambient(*pi->right, s);
    if (!r.contains(g)) throw PreconditionFailed("right factor outside R");
    int gi = G.inv(g);
    std::vector<int> p(G.order());
    for (std::size_t x = 0; x < G.order(); ++x) p[x] = G.mul(static_cast<int>(x), gi);
    perms.push_back(std::move(p));
  }
  std::vector<Vec> seeds;
  for (std::size_t g = 0; g < G.order(); ++g) seeds.push_back(ga.mul(ga.mul(e, ga.element(static_cast<int>(g))), f));
  RepModule m = spin_in_group_algebra(ga, seeds, perms, product, basis_elements);
  m.label = "bimodule";
  return m;
}

RepModule permutation_module(const FieldPtr& f, const Subgroup& h) {
  const GroupPtr& gp = h.ambient();
  const PermGroup& G = *gp;
  std::vector<int> coset_of(G.order(), -1), reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (coset_of[g] >= 0) continue;
    for (int x : h.elements()) coset_of[static_cast<std::size_t>(G.mul(static_cast<int>(g), x))] = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(g));
  }
  Gens gens;
  for (int s : G.generator_indices()) {
    std::vector<int> img(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) img[c] = coset_of[static_cast<std::size_t>(G.mul(s, reps[c]))];
    gens.push_back(permutation_matrix(f, img));
  }
  return RepModule(f, gp, reps.size(), std::move(gens), "permutation");
}

RepModule direct_sum(const RepModule& a, const RepModule& b) {
  require_same(a, b);
  Gens gens;
  for (std::size_t s = 0; s < a.gens().size(); ++s) gens.push_back(direct_sum(a.gens()[s], b.gens()[s]));
  return RepModule(a.field(), a.group(), a.dim() + b.dim(), std::move(gens));
}

RepModule dual(const RepModule& m) {
  const PermGroup& G = *m.group();
  Gens gens;
  for (int s : G.generator_indices()) gens.push_back(m.action(G.inv(s)).transpose());
  return RepModule(m.field(), m.group(), m.dim(), std::move(gens), m.label.empty() ? "" : m.label + "*");
}

RepModule outer_tensor(const RepModule& m, const RepModule& n, GroupPtr product) {
  if (*m.field() != *n.field()) throw FieldMismatch("outer tensor over different fields");
  if (!product) product = direct_product(m.group(), n.group());
  const auto& pi = product->product_info();
  if (!pi || pi->left->order() != m.group()->order() || pi->right->order() != n.group()->order())
    throw ShapeMismatch("product group does not match the factors");
  Matrix im = Matrix::identity(m.field(), m.dim()), in = Matrix::identity(n.field(), n.dim());
  Gens gens;
  for (const auto& g : m.gens()) gens.push_back(kron(g, in));
  for (const auto& g : n.gens()) gens.push_back(kron(im, g));
  return RepModule(m.field(), product, m.dim() * n.dim(), std::move(gens));
}

RepModule restrict_along(const RepModule& m, const GroupPtr& h, const std::vector<int>& map) {
  Gens gens;
  for (int s : h->generator_indices()) gens.push_back(m.action(map[static_cast<std::size_t>(s)]));
  return RepModule(m.field(), h, m.dim(), std::move(gens), m.label);
}

RepModule restrict_to(const RepModule& m, const Subgroup& sub) {
  return restrict_along(m, sub.as_group(), inclusion_map(sub));
}

RepModule induce(const RepModule& m, const Subgroup& sub) {
  const GroupPtr& gp = sub.ambient();
  const PermGroup& G = *gp;
  const std::size_t d = m.dim();
  std::vector<int> coset_of(G.order(), -1), reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (coset_of[g] >= 0) continue;
    for (int x : sub.elements()) coset_of[static_cast<std::size_t>(G.mul(static_cast<int>(g), x))] = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(g));
  }
  const std::size_t t = reps.size();
  Gens gens;
  for (int s : G.generator_indices()) {
    Matrix a(m.field(), t * d, t * d);
    for (std::size_t i = 0; i < t; ++i) {
      int y = G.mul(s, reps[i]);
      auto j = static_cast<std::size_t>(coset_of[static_cast<std::size_t>(y)]);
      int hh = G.mul(G.inv(reps[j]), y);
      a.set_block(j * d, i * d, m.action(index_in(sub, hh)));
    }
    gens.push_back(std::move(a));
  }
  return RepModule(m.field(), gp, t * d, std::move(gens));
}

RepModule submodule(const RepModule& m, const RowSpace& w, Matrix* inclusion) {
  Matrix b = w.basis();
  const std::size_t d = w.dim();
  Gens gens;
  for (const auto& g : m.gens()) {
    Matrix a(m.field(), d, d);
    for (std::size_t k = 0; k < d; ++k) {
      Vec c = w.coordinates(g * b.row(k));
      for (std::size_t i = 0; i < d; ++i) a(i, k) = c[i];
    }
    gens.push_back(std::move(a));
  }
  if (inclusion) *inclusion = b.transpose();
  return RepModule(m.field(), m.group(), d, std::move(gens));
}

RepModule quotient(const RepModule& m, const RowSpace& w, Matrix* projection) {
  auto free = w.free_columns();
  const std::size_t d = free.size();
  Matrix proj(m.field(), d, m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    Vec e(m.dim(), 0);
    e[j] = 1;
    Vec r = w.reduce(e);
    for (std::size_t i = 0; i < d; ++i) proj(i, j) = r[free[i]];
  }
  Gens gens;
  for (const auto& g : m.gens()) gens.push_back(proj * g.select_columns(free));
  if (projection) *projection = proj;
  return RepModule(m.field(), m.group(), d, std::move(gens));
}

RepModule change_basis(const RepModule& m, const Matrix& t) {
  auto ti = inverse(t);
  if (!ti) throw PreconditionFailed("change of basis is not invertible");
  Gens gens;
  for (const auto& g : m.gens()) gens.push_back(*ti * g * t);
  return RepModule(m.field(), m.group(), m.dim(), std::move(gens), m.label);
}

}  // namespace bd
