#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "torelli/linalg.hpp"

namespace oracle {

using torelli::CoordinateChange;
using torelli::Field;
using torelli::HomPoly;
using torelli::Matrix;
using torelli::Monomial;
using torelli::Scalar;

namespace {

// Plain Gauss-Jordan on rationals, returning pivot columns.
std::vector<std::size_t> eliminate(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const mpq_class inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const mpq_class factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void enumerate(std::size_t num_vars, unsigned degree, std::vector<unsigned>& cur, std::size_t pos,
               std::vector<std::vector<unsigned>>& out) {
  if (pos + 1 == num_vars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    cur[pos] = e;
    enumerate(num_vars, degree - e, cur, pos + 1, out);
  }
}

std::map<std::vector<unsigned>, std::size_t> index_map(std::size_t num_vars, unsigned degree) {
  std::map<std::vector<unsigned>, std::size_t> idx;
  const auto all = exponents(num_vars, degree);
  for (std::size_t i = 0; i < all.size(); ++i) idx[all[i]] = i;
  return idx;
}

std::vector<unsigned> exps_of(const Monomial& m) {
  std::vector<unsigned> e(m.num_vars());
  for (std::size_t i = 0; i < m.num_vars(); ++i) e[i] = m[i];
  return e;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return qpoly_trim(c);
}

QPoly qpoly_add(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return qpoly_trim(a);
}

QPoly qpoly_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return qpoly_trim(d);
}

}  // namespace

std::size_t rank(QMatrix m) { return eliminate(m).size(); }

QMatrix null_space(QMatrix m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  const auto pivots = eliminate(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMatrix out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<unsigned>> exponents(std::size_t num_vars, unsigned degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(num_vars, 0);
  enumerate(num_vars, degree, cur, 0, out);
  return out;
}

std::vector<mpq_class> dense(const HomPoly& f) {
  const auto idx = index_map(f.num_vars(), f.degree());
  std::vector<mpq_class> v(idx.size(), 0);
  for (const auto& [m, c] : f.terms()) v[idx.at(exps_of(m))] = c.rational();
  return v;
}

std::vector<mpq_class> dense_partial(const HomPoly& f, std::size_t i) {
  const auto idx = index_map(f.num_vars(), f.degree() - 1);
  std::vector<mpq_class> v(idx.size(), 0);
  for (const auto& [m, c] : f.terms()) {
    auto e = exps_of(m);
    if (e[i] == 0) continue;
    const unsigned k = e[i];
    e[i] -= 1;
    v[idx.at(e)] += c.rational() * k;
  }
  return v;
}

std::size_t st_dim(const HomPoly& f) {
  const std::size_t n1 = f.num_vars();
  const unsigned k = f.degree();
  const auto top = exponents(n1, k);
  const auto low_idx = index_map(n1, k - 1);
  const std::size_t ng = top.size();
  const std::size_t unknowns = ng + n1 * n1;

  std::vector<std::vector<mpq_class>> df;
  for (std::size_t i = 0; i < n1; ++i) df.push_back(dense_partial(f, i));

  // Row (j, mu): coefficient of mu in dg/dx_j - sum_i C_ji df/dx_i.
  QMatrix rows;
  for (std::size_t j = 0; j < n1; ++j) {
    for (const auto& [mu, pos] : low_idx) {
      std::vector<mpq_class> row(unknowns, 0);
      for (std::size_t a = 0; a < ng; ++a) {
        auto e = top[a];
        if (e[j] == 0) continue;
        const unsigned mult = e[j];
        e[j] -= 1;
        if (e == mu) row[a] = mult;
      }
      for (std::size_t i = 0; i < n1; ++i) row[ng + j * n1 + i] = -df[i][pos];
      rows.push_back(std::move(row));
    }
  }
  QMatrix sols = null_space(rows);
  for (auto& s : sols) s.resize(ng);
  return rank(sols);
}

bool in_jacobi_span(const HomPoly& f, const HomPoly& g) {
  QMatrix m;
  for (std::size_t i = 0; i < f.num_vars(); ++i) m.push_back(dense_partial(f, i));
  const std::size_t r = rank(m);
  m.push_back(dense(g));
  return rank(m) == r;
}

QPoly qpoly_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

QPoly qpoly_rem(QPoly a, const QPoly& b) {
  a = qpoly_trim(a);
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  while (a.size() >= b.size()) {
    const mpq_class factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a = qpoly_trim(a);
  }
  return a;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
  a = qpoly_trim(a);
  b = qpoly_trim(b);
  while (!b.empty()) {
    QPoly r = qpoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool binary_form_squarefree(const HomPoly& f) {
  if (f.num_vars() != 2) throw std::invalid_argument("binary form expected");
  const unsigned k = f.degree();
  QPoly p(k + 1, 0);
  for (const auto& [m, c] : f.terms()) p[m[0]] = c.rational();
  p = qpoly_trim(p);
  if (p.empty()) return false;
  const int deg = static_cast<int>(p.size()) - 1;
  // y^(k - deg) divides f: a double root at infinity once k - deg >= 2.
  if (static_cast<int>(k) - deg >= 2) return false;
  const QPoly g = qpoly_gcd(p, qpoly_derivative(p));
  return g.size() <= 1;
}

QPoly pencil_minor_gcd(const HomPoly& f, const HomPoly& g) {
  const std::size_t n1 = f.num_vars();
  std::vector<std::vector<QPoly>> m(n1);
  std::size_t cols = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    const auto a = dense_partial(f, i);
    const auto b = dense_partial(g, i);
    cols = a.size();
    for (std::size_t c = 0; c < cols; ++c) m[i].push_back(qpoly_trim({a[c], b[c]}));
  }
  QPoly acc;
  std::vector<bool> pick(cols, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(n1, cols)), true);
  if (n1 > cols) return {};
  std::vector<std::size_t> perm(n1);
  do {
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < cols; ++c)
      if (pick[c]) chosen.push_back(c);
    std::iota(perm.begin(), perm.end(), 0);
    QPoly det;
    do {
      int inversions = 0;
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = a + 1; b < n1; ++b)
          if (perm[a] > perm[b]) ++inversions;
      QPoly term{mpq_class(inversions % 2 ? -1 : 1)};
      for (std::size_t r = 0; r < n1 && !term.empty(); ++r) term = qpoly_mul(term, m[r][chosen[perm[r]]]);
      det = qpoly_add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc = qpoly_gcd(acc, det);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return acc;
}

HomPoly random_form(Rng& rng, std::size_t num_vars, unsigned degree, int bound, double density) {
  std::vector<std::size_t> vars(num_vars);
  std::iota(vars.begin(), vars.end(), 0);
  return random_form_in(rng, num_vars, vars, degree, bound, density);
}

HomPoly random_form_in(Rng& rng, std::size_t num_vars, const std::vector<std::size_t>& vars,
                       unsigned degree, int bound, double density) {
  const Field q = Field::rationals();
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  HomPoly f(q, num_vars, degree);
  for (const auto& e : exponents(vars.size(), degree)) {
    if (keep(rng) > density) continue;
    std::vector<std::uint16_t> full(num_vars, 0);
    for (std::size_t i = 0; i < vars.size(); ++i) full[vars[i]] = static_cast<std::uint16_t>(e[i]);
    f.add_term(Monomial(full), Scalar(q, coeff(rng)));
  }
  return f;
}

CoordinateChange random_unimodular(Rng& rng, std::size_t n, int bound) {
  const Field q = Field::rationals();
  Matrix m = Matrix::identity(q, n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(-bound, bound);
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    if (a == b) continue;
    const Scalar c(q, coeff(rng));
    for (std::size_t col = 0; col < n; ++col) m(b, col) += c * m(a, col);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix out(q, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(perm[r], c);
  return CoordinateChange(out);
}

CoordinateChange random_rational_change(Rng& rng, std::size_t n) {
  const Field q = Field::rationals();
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  for (;;) {
    Matrix m(q, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar(q, mpq_class(num(rng), den(rng)));
    if (!torelli::determinant(m).is_zero()) return CoordinateChange(m);
  }
}

}  // namespace oracle
