#include "confseq/ctcomplex.hpp"

#include <algorithm>
#include <functional>

namespace confseq {

namespace {
using Tuple = std::vector<std::size_t>;
}  // namespace

TupleTerms tensor_product(const Algebra& a, const Tuple& x, const Tuple& y) {
  int exponent = 0;
  int before = 0;  // degrees of y_0 .. y_{k-1}
  for (std::size_t k = 0; k < x.size(); ++k) {
    exponent += a.degree(x[k]) * before;
    before += a.degree(y[k]);
  }
  TupleTerms out{{Tuple(x.size()), sign_scalar(exponent)}};
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Element& prod = a.product(x[k], y[k]);
    TupleTerms next;
    for (const auto& [t, c] : out)
      for (const auto& [idx, v] : prod.entries()) {
        auto u = t;
        u[k] = idx;
        next.emplace_back(std::move(u), c * v);
      }
    out = std::move(next);
    if (out.empty()) break;
  }
  return out;
}

namespace {

Tuple unit_tuple(const Algebra& a, int n) { return Tuple(static_cast<std::size_t>(n), a.unit()); }

}  // namespace

std::size_t CTComplex::free_dim(int p, int hdeg) const {
  auto it = free_basis.find({p, hdeg});
  return it == free_basis.end() ? 0 : it->second.size();
}

std::size_t CTComplex::dim(int p, int hdeg) const {
  auto it = quotients.find({p, hdeg});
  return it == quotients.end() ? 0 : it->second->dim();
}

std::size_t CTComplex::add_free(int p, int hdeg, CTBasisElement e) {
  auto& block = free_basis[{p, hdeg}];
  std::size_t idx = block.size();
  index_[{monomials[e.monomial].mask(), e.factors}] = {{p, hdeg}, idx};
  block.push_back(std::move(e));
  return idx;
}

std::optional<std::pair<Bidegree, std::size_t>> CTComplex::find(std::uint32_t monomial_mask,
                                                               const std::vector<std::size_t>& factors) const {
  auto it = index_.find({monomial_mask, factors});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string CTComplex::label(int p, int hdeg, std::size_t free_index) const {
  const auto& e = free_basis.at({p, hdeg})[free_index];
  std::string out;
  for (std::size_t k = 0; k < e.factors.size(); ++k) {
    if (k) out += "⊗";
    out += h->label(e.factors[k]);
  }
  const Graph& g = monomials[e.monomial];
  if (g.edge_count() > 0) {
    out = "(" + out + ")";
    for (auto [i, j] : g.edges()) out += "x" + std::to_string(i) + std::to_string(j);
  }
  return out;
}

std::string CTComplex::render(int p, int hdeg, const SparseVector& coords) const {
  auto it = quotients.find({p, hdeg});
  if (it == quotients.end() || coords.is_zero()) return "0";
  SparseVector v = it->second->lift(coords);
  std::string out;
  for (const auto& [i, c] : v.entries()) {
    std::string cs = c.to_string();
    bool neg = cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (cs != "1") out += cs + "*";
    out += label(p, hdeg, i);
  }
  return out;
}

std::shared_ptr<CTComplex> build_CT(int n, std::shared_ptr<const Algebra> h) {
  if (n < 1 || n > 4) throw PreconditionError("n must lie in 1..4");
  auto t = std::make_shared<CTComplex>();
  t->n = n;
  t->h = h;
  t->pd = poincare_data(*h);
  t->m = t->pd.m;
  const int m = t->m;
  const bool x_odd = (m - 1) % 2 != 0;
  t->monomials = enumerate(n, Family::Full);
  std::map<std::uint32_t, std::size_t> by_mask;
  for (std::size_t k = 0; k < t->monomials.size(); ++k) by_mask[t->monomials[k].mask()] = k;

  // Tensors of H^{(x)n} by degree.
  std::map<int, std::vector<Tuple>> tensors;
  {
    Tuple cur(static_cast<std::size_t>(n));
    std::function<void(int, int)> rec = [&](int pos, int d) {
      if (pos == n) {
        tensors[d].push_back(cur);
        return;
      }
      for (std::size_t k = 0; k < h->dim(); ++k) {
        cur[pos] = k;
        rec(pos + 1, d + h->degree(k));
      }
    };
    rec(0, 0);
  }

  for (std::size_t mi = 0; mi < t->monomials.size(); ++mi) {
    const int p = static_cast<int>(t->monomials[mi].edge_count());
    for (const auto& [d, list] : tensors)
      for (const auto& beta : list) t->add_free(p, d, CTBasisElement{beta, mi});
  }

  // x_{e_1} ... x_{e_k} (edges with i < j) in normal form: (monomial index, sign), or nullopt.
  auto x_product = [&](std::vector<Graph::Edge> edges) -> std::optional<std::pair<std::size_t, int>> {
    int sign = 1;
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        if (edges[a] == edges[b]) return std::nullopt;
        if (edges[b] < edges[a] && x_odd) sign = -sign;
      }
    std::sort(edges.begin(), edges.end());
    return std::make_pair(by_mask.at(Graph(n, edges).mask()), sign);
  };
  auto free_index = [&](std::size_t mono, const Tuple& beta) {
    auto hit = t->find(t->monomials[mono].mask(), beta);
    if (!hit) throw std::logic_error("CT free basis lookup failed");
    return *hit;
  };

  // Symbol relations (e_s(a) - e_t(a)) beta' x_M for (s,t) in M.
  for (std::size_t mi = 0; mi < t->monomials.size(); ++mi) {
    const Graph& g = t->monomials[mi];
    const int p = static_cast<int>(g.edge_count());
    for (auto [s, u] : g.edges()) {
      for (std::size_t a = 0; a < h->dim(); ++a) {
        if (!h->is_positive(a)) continue;
        Tuple es = unit_tuple(*h, n), eu = unit_tuple(*h, n);
        es[s - 1] = a;
        eu[u - 1] = a;
        for (const auto& [d, list] : tensors) {
          if (d + h->degree(a) > t->h_max()) continue;
          for (const auto& beta : list) {
            SparseVector rel;
            Bidegree block{p, d + h->degree(a)};
            for (const auto& [tu, c] : tensor_product(*h, es, beta)) rel.add(free_index(mi, tu).second, c);
            for (const auto& [tu, c] : tensor_product(*h, eu, beta)) rel.add(free_index(mi, tu).second, -c);
            if (!rel.is_zero()) t->relations[block].push_back(std::move(rel));
          }
        }
      }
    }
  }

  // Arnold relations x_st x_tu + x_tu x_us + x_us x_st (times any monomial), with x_us = (-1)^m x_su.
  const int swap_sign = m % 2 ? -1 : 1;
  for (int s = 1; s <= n; ++s)
    for (int u = s + 1; u <= n; ++u)
      for (int w = u + 1; w <= n; ++w) {
        Graph::Edge st{s, u}, tu{u, w}, su{s, w};
        struct Term {
          std::vector<Graph::Edge> edges;
          int sign;
        };
        std::vector<Term> terms{{{st, tu}, 1}, {{tu, su}, swap_sign}, {{su, st}, swap_sign}};
        for (std::size_t mi = 0; mi < t->monomials.size(); ++mi) {
          const Graph& rest = t->monomials[mi];
          const int p = static_cast<int>(rest.edge_count()) + 2;
          std::vector<std::pair<std::size_t, int>> monos;
          for (const auto& term : terms) {
            auto edges = term.edges;
            edges.insert(edges.end(), rest.edges().begin(), rest.edges().end());
            if (auto prod = x_product(edges)) monos.emplace_back(prod->first, prod->second * term.sign);
          }
          if (monos.empty()) continue;
          for (const auto& [d, list] : tensors)
            for (const auto& beta : list) {
              SparseVector rel;
              for (const auto& [mono, sign] : monos) rel.add(free_index(mono, beta).second, Scalar(sign));
              if (!rel.is_zero()) t->relations[{p, d}].push_back(std::move(rel));
            }
        }
      }

  for (const auto& [block, elems] : t->free_basis)
    t->quotients[block] = std::make_shared<Quotient>(elems.size(), t->relations[block]);

  // d_1(beta x_M) = (-1)^{|beta|} sum_r (-1)^{(m-1)(r-1)} beta . delta_{e_r} x_{M - e_r}.
  for (const auto& [block, elems] : t->free_basis) {
    auto [p, d] = block;
    if (p == 0) continue;
    Bidegree target{p - 1, d + m};
    std::vector<SparseVector> cols;
    cols.reserve(elems.size());
    for (const auto& e : elems) {
      SparseVector col;
      const Graph& g = t->monomials[e.monomial];
      const auto& edges = g.edges();
      int beta_deg = 0;
      for (auto f : e.factors) beta_deg += h->degree(f);
      for (std::size_t r = 0; r < edges.size(); ++r) {
        auto rest = edges;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
        std::size_t mono = by_mask.at(Graph(n, rest).mask());
        Scalar sign = sign_scalar(beta_deg + (m - 1) * static_cast<int>(r));
        auto [s, u] = edges[r];
        for (const auto& [i, j, c] : t->pd.diagonal) {
          Tuple delta = unit_tuple(*h, n);
          delta[s - 1] = i;
          delta[u - 1] = j;
          for (const auto& [tu, v] : tensor_product(*h, e.factors, delta))
            col.add(free_index(mono, tu).second, sign * c * v);
        }
      }
      cols.push_back(std::move(col));
    }
    t->d1_free[block] = Matrix::from_columns(t->free_dim(target.first, target.second), cols);

    const auto& src = *t->quotients.at(block);
    auto tq = t->quotients.find(target);
    std::vector<SparseVector> qcols;
    for (const auto& rep : src.representatives()) {
      SparseVector img = t->d1_free[block].apply(rep);
      qcols.push_back(tq == t->quotients.end() ? SparseVector{} : tq->second->project(img));
    }
    t->d1[block] = Matrix::from_columns(t->dim(target.first, target.second), qcols);
  }
  return t;
}

std::string CTComplex::check() const {
  for (const auto& [block, rels] : relations) {
    auto it = d1_free.find(block);
    if (it == d1_free.end()) continue;
    Bidegree target{block.first - 1, block.second + m};
    auto tq = quotients.find(target);
    for (const auto& r : rels) {
      SparseVector img = it->second.apply(r);
      if (img.is_zero()) continue;
      if (tq == quotients.end() || !tq->second->project(img).is_zero())
        return "d1(I) not in I at (" + std::to_string(block.first) + "," + std::to_string(block.second) + ")";
    }
  }
  for (const auto& [block, mat] : d1) {
    Bidegree next{block.first - 1, block.second + m};
    auto it = d1.find(next);
    if (it == d1.end()) continue;
    if (!(it->second * mat).is_zero())
      return "d1 d1 != 0 at (" + std::to_string(block.first) + "," + std::to_string(block.second) + ")";
  }
  return {};
}

std::size_t CTE2::dim(int p, int hdeg) const {
  auto it = dims.find({p, hdeg});
  return it == dims.end() ? 0 : it->second;
}

std::size_t CTE2::total(int k) const {
  std::size_t out = 0;
  for (const auto& [pq, d] : dims)
    if (pq.second + pq.first * (m - 1) == k) out += d;
  return out;
}

CTE2 ct_e2(const CTComplex& t) {
  CTE2 out;
  out.m = t.m;
  for (const auto& [block, q] : t.quotients) {
    auto [p, d] = block;
    const std::size_t dim = q->dim();
    if (dim == 0) continue;
    std::vector<SparseVector> ker;
    if (auto it = t.d1.find(block); it != t.d1.end())
      ker = kernel_basis(it->second);
    else
      for (std::size_t i = 0; i < dim; ++i) ker.push_back(SparseVector::unit(i));
    std::vector<SparseVector> im;
    if (auto it = t.d1.find({p + 1, d - t.m}); it != t.d1.end()) im = it->second.columns();
    Subquotient sq(ker, im);
    out.dims[block] = sq.dim();
    out.reps[block] = sq.representatives();
  }
  return out;
}

RBasisReport rbasis_presentation(const CTComplex& t) {
  RBasisReport rep;
  const Algebra& h = *t.h;
  std::vector<std::size_t> r_index;
  for (std::size_t mi = 0; mi < t.monomials.size(); ++mi)
    if (in_family(t.monomials[mi], Family::NoDupTarget)) {
      rep.r_monomials.push_back(t.monomials[mi]);
      r_index.push_back(mi);
    }
  // Ambient H^{(x)n} (x) R per block, L spanned by (e_i(a) - e_j(a)) beta x_M with (i,j) in M.
  std::map<Bidegree, std::map<std::size_t, std::size_t>> local;  // free index -> R-block index
  for (const auto& [block, elems] : t.free_basis)
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (in_family(t.monomials[elems[k].monomial], Family::NoDupTarget)) local[block].emplace(k, local[block].size());
  std::map<Bidegree, std::vector<SparseVector>> l_span;
  for (const auto& [block, elems] : t.free_basis) {
    auto [p, d] = block;
    for (const auto& e : elems) {
      const Graph& g = t.monomials[e.monomial];
      if (!in_family(g, Family::NoDupTarget)) continue;
      for (auto [i, j] : g.edges())
        for (std::size_t a = 0; a < h.dim(); ++a) {
          if (!h.is_positive(a)) continue;
          Bidegree target{p, d + h.degree(a)};
          if (!t.free_basis.count(target)) continue;
          Tuple ei = unit_tuple(h, t.n), ej = unit_tuple(h, t.n);
          ei[i - 1] = a;
          ej[j - 1] = a;
          SparseVector v;
          for (const auto& [tu, c] : tensor_product(h, ei, e.factors))
            v.add(local[target].at(t.find(g.mask(), tu)->second), c);
          for (const auto& [tu, c] : tensor_product(h, ej, e.factors))
            v.add(local[target].at(t.find(g.mask(), tu)->second), -c);
          if (!v.is_zero()) l_span[target].push_back(std::move(v));
        }
    }
  }
  for (const auto& [block, loc] : local) {
    Quotient q(loc.size(), l_span[block]);
    rep.dims[block] = q.dim();
    if (q.dim() != t.dim(block.first, block.second))
      throw MismatchError("R-presentation has dimension " + std::to_string(q.dim()) + " but T(n,H) has " +
                          std::to_string(t.dim(block.first, block.second)) + " at (" + std::to_string(block.first) +
                          "," + std::to_string(block.second) + ")");
  }
  for (const auto& [block, q] : t.quotients)
    if (q->dim() > 0 && !local.count(block))
      throw MismatchError("T(n,H) is nonzero at (" + std::to_string(block.first) + "," + std::to_string(block.second) +
                          ") where the R-presentation vanishes");
  return rep;
}

}  // namespace confseq
