#include "confseq/duality.hpp"

#include <algorithm>

#include "confseq/spectral.hpp"

namespace confseq {

Scalar PairingTable::pair_free(const CTBasisElement& z, const BGBasisElement& w) const {
  const Graph& mono = ct->monomials[z.monomial];
  const Graph& g = ebar->graphs[w.graph];
  if (mono.mask() != g.mask()) return Scalar(0);
  const Algebra& h = *ct->h;
  const std::size_t top = ct->pd.top;
  std::vector<std::size_t> spread(static_cast<std::size_t>(n), h.unit());
  for (std::size_t c = 0; c < g.components().size(); ++c) spread[g.components()[c].front() - 1] = w.factors[c];
  Scalar out(0);
  for (const auto& [bs, c1] : tensor_product(h, z.factors, spread))
    for (const auto& [dg, c2] : diagonals.at(g.mask()))
      for (const auto& [res, c3] : tensor_product(h, bs, dg))
        if (std::all_of(res.begin(), res.end(), [top](std::size_t i) { return i == top; })) out += c1 * c2 * c3;
  return out;
}

namespace {

TupleTerms diagonal_of(const Graph& g, const Algebra& h, const PoincareData& pd) {
  TupleTerms out{{std::vector<std::size_t>(static_cast<std::size_t>(g.n()), h.unit()), Scalar(1)}};
  for (auto [s, t] : g.edges()) {
    TupleTerms next;
    for (const auto& [x, c] : out)
      for (const auto& [i, j, v] : pd.diagonal) {
        std::vector<std::size_t> d(static_cast<std::size_t>(g.n()), h.unit());
        d[s - 1] = i;
        d[t - 1] = j;
        for (auto& [y, c2] : tensor_product(h, x, d)) next.emplace_back(std::move(y), c * v * c2);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

PairingTable build_pairing(int n, std::shared_ptr<const Algebra> h) {
  PairingTable t;
  t.n = n;
  t.ct = build_CT(n, h);
  t.m = t.ct->m;
  t.ebar = build_Ebar(n, h);
  for (const auto& g : t.ebar->graphs) t.diagonals[g.mask()] = diagonal_of(g, *h, t.ct->pd);
  for (const auto& [block, quotient] : t.ct->quotients) {
    auto [p, hdeg] = block;
    const int q = PairingTable::matched_q(n, t.m, p, hdeg);
    const std::size_t rows = quotient->dim();
    const std::size_t cols = t.ebar->dim(p, q);
    if (rows == 0 && cols == 0) continue;
    Matrix g(rows, cols);
    if (rows > 0 && cols > 0) {
      const auto& free = t.ct->free_basis.at(block);
      const auto& ebasis = t.ebar->basis.at({p, q});
      std::vector<std::size_t> r_idx;
      std::vector<SparseVector> images;
      for (std::size_t i = 0; i < free.size(); ++i)
        if (in_family(t.ct->monomials[free[i].monomial], Family::NoDupTarget)) {
          r_idx.push_back(i);
          images.push_back(quotient->project(SparseVector::unit(i)));
        }
      Matrix k = Matrix::from_columns(rows, images);
      for (std::size_t row = 0; row < rows; ++row) {
        auto y = solve(k, SparseVector::unit(row));
        if (!y) throw MismatchError("R-monomials do not span T(n,H)");
        for (const auto& [ri, c] : y->entries())
          for (std::size_t j = 0; j < ebasis.size(); ++j) {
            Scalar v = t.pair_free(free[r_idx[ri]], ebasis[j]);
            if (!v.is_zero()) g.add(row, j, c * v);
          }
      }
    }
    t.blocks[block] = std::move(g);
  }
  return t;
}

namespace {

Matrix or_zero(const Matrix* m, std::size_t rows, std::size_t cols) { return m ? *m : Matrix(rows, cols); }

}  // namespace

Theorem1Report theorem1_check(const PairingTable& table) {
  Theorem1Report rep;
  rep.n = table.n;
  rep.m = table.m;
  const auto& ct = *table.ct;
  const auto& eb = *table.ebar;
  auto where = [](int p, int h) { return "(" + std::to_string(p) + "," + std::to_string(h) + ")"; };

  for (const auto& [block, g] : table.blocks) {
    if (g.rows() != g.cols() || rank(g) != g.rows()) {
      rep.perfect = false;
      rep.failures.push_back("pairing not perfect at T" + where(block.first, block.second));
    }
  }
  for (const auto& [pq, d] : eb.dims) {
    if (d == 0) continue;
    const int h = (table.n - pq.first) * table.m - pq.second;
    if (!table.blocks.count({pq.first, h})) {
      rep.perfect = false;
      rep.failures.push_back("Ebar block " + where(pq.first, pq.second) + " has no partner");
    }
  }

  for (const auto& [block, d1] : ct.d1) {
    auto [p, h] = block;
    const int q = PairingTable::matched_q(table.n, table.m, p, h);
    Bidegree below{p - 1, h + table.m};
    const std::size_t t_src = ct.dim(p, h), t_dst = ct.dim(below.first, below.second);
    const std::size_t e_src = eb.dim(p - 1, q), e_dst = eb.dim(p, q);
    if (t_src == 0 || e_src == 0) continue;
    Matrix ga = table.blocks.count(below) ? table.blocks.at(below) : Matrix(t_dst, e_src);
    Matrix gb = table.blocks.count(block) ? table.blocks.at(block) : Matrix(t_src, e_dst);
    Matrix lhs = d1.transpose() * ga;
    Matrix rhs = gb * or_zero(eb.horizontal(p - 1, q), e_dst, e_src);
    int sign = 0;
    if (lhs == rhs && !lhs.is_zero())
      sign = 1;
    else if (!lhs.is_zero()) {
      bool neg = true;
      for (std::size_t r = 0; r < lhs.rows() && neg; ++r)
        if (!(lhs.row(r) + rhs.row(r)).is_zero()) neg = false;
      if (neg) sign = -1;
    }
    if (sign == 0 && !(lhs.is_zero() && rhs.is_zero())) {
      rep.adjoint = false;
      rep.failures.push_back("d1 and d' not adjoint at T" + where(p, h));
    }
    rep.signs.push_back({block, sign});
  }

  auto e2 = ct_e2(ct);
  SpectralSequence ss(eb);
  Page page2 = ss.page(2);
  for (const auto& [block, quotient] : ct.quotients) {
    auto [p, h] = block;
    const int q = PairingTable::matched_q(table.n, table.m, p, h);
    const std::size_t a = e2.dim(p, h), b = page2.dim(p, q);
    if (a == 0 && b == 0) continue;
    rep.e2[block] = {a, b};
    if (a != b) {
      rep.dimensions_match = false;
      rep.failures.push_back("E2 dimension mismatch at T" + where(p, h));
    }
  }
  for (const auto& [pq, d] : page2.dims) {
    if (d == 0) continue;
    const int h = (table.n - pq.first) * table.m - pq.second;
    if (!rep.e2.count({pq.first, h})) {
      rep.dimensions_match = false;
      rep.failures.push_back("Ebar E2 block " + where(pq.first, pq.second) + " has no partner");
    }
  }
  return rep;
}

}  // namespace confseq
