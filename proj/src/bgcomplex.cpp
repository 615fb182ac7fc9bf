#include "confseq/bgcomplex.hpp"

#include <algorithm>
#include <functional>

namespace confseq {

std::string kind_name(BGKind k) {
  switch (k) {
    case BGKind::Full: return "E";
    case BGKind::Bar: return "Ebar";
    case BGKind::J: return "J";
    case BGKind::Small: return "C";
  }
  return "?";
}

std::size_t BGComplex::add_basis(int p, int q, BGBasisElement e) {
  auto& block = basis[{p, q}];
  std::size_t idx = block.size();
  index_[{graphs[e.graph].mask(), e.factors}] = {{p, q}, idx};
  block.push_back(std::move(e));
  dims[{p, q}] = block.size();
  return idx;
}

std::optional<std::pair<Bidegree, std::size_t>> BGComplex::find(std::uint32_t graph_mask,
                                                               const std::vector<std::size_t>& factors) const {
  auto it = index_.find({graph_mask, factors});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string BGComplex::label(int p, int q, std::size_t i) const {
  const auto& e = element(p, q, i);
  std::string out;
  for (std::size_t k = 0; k < e.factors.size(); ++k) {
    if (k) out += "⊗";
    out += algebra->label(e.factors[k]);
  }
  if (p > 0) out = "(" + out + ")" + graphs[e.graph].to_string();
  return out;
}

std::string BGComplex::render(int p, int q, const SparseVector& v) const {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : v.entries()) {
    std::string cs = c.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (cs != "1") out += cs + "*";
    out += label(p, q, i);
  }
  return out;
}

namespace {

using Terms = std::vector<std::pair<std::vector<std::size_t>, Scalar>>;

int degree_sum(const Algebra& a, const std::vector<std::size_t>& f, std::size_t from, std::size_t to) {
  int s = 0;
  for (std::size_t k = from; k < to; ++k) s += a.degree(f[k]);
  return s;
}

std::vector<std::size_t> without(std::vector<std::size_t> f, std::size_t t) {
  f.erase(f.begin() + static_cast<std::ptrdiff_t>(t));
  return f;
}

/// c * (factors with position pos replaced by each term of value).
void spread(Terms& out, const std::vector<std::size_t>& f, std::size_t pos, const Element& value, const Scalar& c) {
  for (const auto& [k, v] : value.entries()) {
    auto g = f;
    g[pos] = k;
    out.emplace_back(std::move(g), c * v);
  }
}

/// Terms of a (x) e_G . e_ij in the component tensor of G + (i,j), without the add_edge sign.
Terms merge_terms(const Algebra& a, const Graph& g, const std::vector<std::size_t>& f, int i, int j) {
  Terms out;
  std::size_t s = static_cast<std::size_t>(g.component_of(i));
  std::size_t t = static_cast<std::size_t>(g.component_of(j));
  if (s == t) {
    out.emplace_back(f, Scalar(1));
    return out;
  }
  if (s > t) std::swap(s, t);
  int tau = a.degree(f[t]) * degree_sum(a, f, s + 1, t);
  spread(out, without(f, t), s, a.product(f[s], f[t]), sign_scalar(tau));
  return out;
}

/// alpha_ij of the small complex, without the add_edge sign.
Terms alpha_terms(const Algebra& a, const Graph& g, const std::vector<std::size_t>& f, int i, int j) {
  Terms out;
  std::size_t s = static_cast<std::size_t>(g.component_of(i));
  std::size_t t = static_cast<std::size_t>(g.component_of(j));
  if (s == t) return out;
  if (s > t) std::swap(s, t);
  const int ds = a.degree(f[s]);
  const int dt = a.degree(f[t]);
  const int between = degree_sum(a, f, s + 1, t);
  const int before_s = degree_sum(a, f, 1, s);

  auto rest = without(f, t);
  spread(out, rest, s, a.product(f[s], f[t]), sign_scalar(dt * between));

  auto second = rest;
  second[s] = f[t];
  spread(out, second, 0, a.product(f[0], f[s]), -sign_scalar(ds * before_s + dt * between));

  spread(out, rest, 0, a.product(f[0], f[t]), -sign_scalar(dt * (before_s + ds + between)));
  return out;
}

struct Setup {
  BGKind kind;
  Family family;
};

int natural_q_max(const Algebra& a, int n) { return n * a.max_degree(); }

std::shared_ptr<BGComplex> build(int n, std::shared_ptr<const Algebra> a, Setup setup, std::optional<int> q_max) {
  if (n < 1 || n > 4) throw PreconditionError("n must lie in 1..4");
  auto out = std::make_shared<BGComplex>();
  out->kind = setup.kind;
  out->n = n;
  out->algebra = a;
  out->name = kind_name(setup.kind) + "(" + std::to_string(n) + "," + a->name() + ")";
  out->graphs = enumerate(n, setup.family);
  out->p_max = 0;
  for (const auto& g : out->graphs) out->p_max = std::max(out->p_max, static_cast<int>(g.edge_count()));

  const int natural = natural_q_max(*a, n);
  int qm = natural;
  if (a->truncation()) {
    qm = std::min(natural, *a->truncation());
  }
  if (q_max) {
    if (a->truncation() && *q_max > *a->truncation())
      throw PreconditionError("q_max exceeds the truncation bound " + std::to_string(*a->truncation()));
    qm = *q_max;
  }
  out->q_max = qm;
  // Blocks at q_max receive no vertical map unless q_max covers the whole complex.
  const bool complete = !a->truncation() && qm >= natural;
  out->total_max = complete ? qm + out->p_max : qm - 1;

  std::vector<std::size_t> all(a->dim());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  std::vector<std::size_t> positive;
  for (std::size_t k = 0; k < a->dim(); ++k)
    if (a->is_positive(k)) positive.push_back(k);

  for (std::size_t gi = 0; gi < out->graphs.size(); ++gi) {
    const Graph& g = out->graphs[gi];
    const int p = static_cast<int>(g.edge_count());
    const std::size_t l = static_cast<std::size_t>(g.l());
    std::vector<std::size_t> f(l);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int q) {
      if (pos == l) {
        out->add_basis(p, q, BGBasisElement{gi, f});
        return;
      }
      const auto& choices = (setup.kind == BGKind::Small && pos > 0) ? positive : all;
      for (std::size_t k : choices) {
        int d = a->degree(k);
        if (q + d > qm) continue;
        f[pos] = k;
        rec(pos + 1, q + d);
      }
    };
    rec(0, 0);
  }

  for (const auto& [pq, elems] : out->basis) {
    auto [p, q] = pq;
    // Horizontal.
    if (p + 1 <= out->p_max) {
      std::vector<SparseVector> cols;
      cols.reserve(elems.size());
      for (std::size_t idx = 0; idx < elems.size(); ++idx)
        cols.push_back(out->multiply_edge(p, q, SparseVector::unit(idx), 0, 0));
      out->dh[pq] = Matrix::from_columns(out->dim(p + 1, q), cols);
    }
    // Vertical.
    if (q < qm) {
      std::vector<SparseVector> cols;
      cols.reserve(elems.size());
      for (const auto& e : elems) {
        SparseVector col;
        const Graph& g = out->graphs[e.graph];
        int prefix = 0;
        for (std::size_t k = 0; k < e.factors.size(); ++k) {
          Terms terms;
          spread(terms, e.factors, k, a->d_basis(e.factors[k]), sign_scalar(p + prefix));
          for (const auto& [tf, c] : terms) {
            auto hit = out->find(g.mask(), tf);
            if (!hit) throw std::logic_error("vertical image outside the basis of " + out->name);
            col.add(hit->second, c);
          }
          prefix += a->degree(e.factors[k]);
        }
        cols.push_back(std::move(col));
      }
      out->dv[pq] = Matrix::from_columns(out->dim(p, q + 1), cols);
    }
  }
  for (int p = 0; p <= out->p_max; ++p)
    for (int q = 0; q <= qm; ++q) out->dims.try_emplace({p, q}, 0);
  return out;
}

Family family_of(BGKind k) {
  switch (k) {
    case BGKind::Full: return Family::Full;
    case BGKind::Bar: return Family::NoDupTarget;
    case BGKind::J: return Family::JFamily;
    case BGKind::Small: return Family::HFamily;
  }
  return Family::Full;
}

}  // namespace

SparseVector BGComplex::multiply_edge(int p, int q, const SparseVector& v, int i, int j) const {
  // i == j == 0 selects the full d' (sum over all admissible edges).
  SparseVector out;
  const auto& block = basis.at({p, q});
  const Family fam = family_of(kind);
  for (const auto& [idx, coef] : v.entries()) {
    const auto& e = block[idx];
    const Graph& g = graphs[e.graph];
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (i != 0 && (a != i || b != j)) continue;
        if (kind == BGKind::Small && a == 1) continue;
        auto added = add_edge(g, a, b);
        if (!added || !in_family(added->graph, fam)) continue;
        Terms terms = kind == BGKind::Small ? alpha_terms(*algebra, g, e.factors, a, b)
                                            : merge_terms(*algebra, g, e.factors, a, b);
        const std::uint32_t mask = added->graph.mask();
        for (const auto& [tf, c] : terms) {
          auto hit = find(mask, tf);
          if (!hit) throw std::logic_error("edge image outside the basis of " + name);
          out.add(hit->second, coef * c * Scalar(added->sign));
        }
      }
    }
  }
  return out;
}

std::shared_ptr<BGComplex> build_AG(int n, std::shared_ptr<const Algebra> a, Family family, std::optional<int> q_max) {
  switch (family) {
    case Family::Full: return build(n, std::move(a), {BGKind::Full, family}, q_max);
    case Family::NoDupTarget: return build(n, std::move(a), {BGKind::Bar, family}, q_max);
    case Family::JFamily: return build(n, std::move(a), {BGKind::J, family}, q_max);
    case Family::HFamily: break;
  }
  throw PreconditionError("build_AG takes FULL, NODUPTARGET or JFAMILY");
}

std::shared_ptr<BGComplex> build_E(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max) {
  return build_AG(n, std::move(a), Family::Full, q_max);
}

std::shared_ptr<BGComplex> build_Ebar(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max) {
  return build_AG(n, std::move(a), Family::NoDupTarget, q_max);
}

std::shared_ptr<BGComplex> build_J(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max) {
  return build_AG(n, std::move(a), Family::JFamily, q_max);
}

std::shared_ptr<BGComplex> build_C(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max) {
  return build(n, std::move(a), {BGKind::Small, Family::HFamily}, q_max);
}

Terms gamma(const Algebra& a, const std::vector<std::size_t>& f) {
  Terms out;
  const std::size_t l = f.size();
  const std::size_t subsets = std::size_t{1} << (l - 1);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Element prod = Element::unit(f[0]);
    auto g = f;
    int exponent = 0;
    int kept = 0;  // degree of the factors left in place so far
    for (std::size_t k = 1; k < l; ++k) {
      if (mask & (std::size_t{1} << (k - 1))) {
        exponent += 1 + a.degree(f[k]) * kept;
        prod = a.multiply(prod, Element::unit(f[k]));
        g[k] = a.unit();
      } else {
        kept += a.degree(f[k]);
      }
    }
    spread(out, g, 0, prod, sign_scalar(exponent));
  }
  return out;
}

std::map<Bidegree, Matrix> phi_bar(const BGComplex& c, const BGComplex& ebar) {
  if (c.kind != BGKind::Small || ebar.kind != BGKind::Bar || c.n != ebar.n)
    throw PreconditionError("phi_bar maps C(n,A) to Ebar(n,A)");
  std::map<Bidegree, Matrix> out;
  for (const auto& [pq, elems] : c.basis) {
    if (pq.second > ebar.q_max) continue;
    std::vector<SparseVector> cols;
    for (const auto& e : elems) {
      SparseVector col;
      const std::uint32_t mask = c.graphs[e.graph].mask();
      for (const auto& [tf, coef] : gamma(*c.algebra, e.factors)) {
        auto hit = ebar.find(mask, tf);
        if (!hit) throw std::logic_error("phi_bar image outside Ebar");
        col.add(hit->second, coef);
      }
      cols.push_back(std::move(col));
    }
    out[pq] = Matrix::from_columns(ebar.dim(pq.first, pq.second), cols);
  }
  return out;
}

}  // namespace confseq
