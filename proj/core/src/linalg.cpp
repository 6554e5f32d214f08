#include "horoke/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace horoke {

std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto bad = [&] { return std::nullopt; };
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (num.empty() || den.empty()) return bad();
      mpz_class n(num), d(den);
      if (d == 0) return std::nullopt;
      Rat r(n, d);
      r.canonicalize();
      return r;
    }
    auto dotpos = s.find('.');
    if (dotpos != std::string::npos) {
      std::string ip = s.substr(0, dotpos), fp = s.substr(dotpos + 1);
      if (fp.empty()) fp = "0";
      if (ip.empty() || ip == "-" || ip == "+") ip += "0";
      for (char c : fp)
        if (!isdigit(c)) return bad();
      mpz_class scale = 1;
      for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
      mpz_class whole(ip);
      mpz_class frac(fp);
      bool neg = !ip.empty() && ip[0] == '-';
      mpz_class num = whole * scale + (neg ? -frac : frac);
      Rat r(num, scale);
      r.canonicalize();
      return r;
    }
    mpz_class n(s);
    return Rat(n);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double to_double(const Rat& r) { return r.get_d(); }

QVec qvec(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

QVec add(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector add");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sub");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector dot");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

QVec primitive(const QVec& a) {
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const Rat& x : a) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  }
  if (num_gcd == 0) return a;
  Rat factor(den_lcm, num_gcd);
  factor.canonicalize();
  QVec r = scale(factor, a);
  for (const Rat& x : r) {
    if (x != 0) {
      if (x < 0) r = scale(Rat(-1), r);
      break;
    }
  }
  return r;
}


QVec primitive_dir(const QVec& a) {
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const Rat& x : a) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  }
  if (num_gcd == 0) return a;
  Rat factor(den_lcm, num_gcd);
  factor.canonicalize();
  return scale(factor, a);
}

QMat QMat::identity(size_t n) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(ncols(), nrows());
  for (size_t i = 0; i < nrows(); ++i)
    for (size_t j = 0; j < ncols(); ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  assert(a.ncols() == b.nrows());
  QMat r(a.nrows(), b.ncols());
  for (size_t i = 0; i < a.nrows(); ++i)
    for (size_t k = 0; k < a.ncols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (size_t j = 0; j < b.ncols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  assert(a.ncols() == x.size());
  QVec r(a.nrows(), Rat(0));
  for (size_t i = 0; i < a.nrows(); ++i) r[i] = dot(a.rows[i], x);
  return r;
}

std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.ncols() && row < m.nrows(); ++col) {
    size_t sel = row;
    while (sel < m.nrows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.nrows()) continue;
    std::swap(m.rows[sel], m.rows[row]);
    Rat inv = 1 / m.at(row, col);
    for (auto& x : m.rows[row]) x *= inv;
    for (size_t i = 0; i < m.nrows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (size_t j = 0; j < m.ncols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> kernel_basis(const QMat& a) {
  QMat m = a;
  auto pivots = rref(m);
  size_t n = a.ncols();
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    QVec v(n, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  QMat aug(a.nrows(), a.ncols() + 1);
  for (size_t i = 0; i < a.nrows(); ++i) {
    for (size_t j = 0; j < a.ncols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.ncols()) = b[i];
  }
  auto pivots = rref(aug);
  for (size_t p : pivots)
    if (p == a.ncols()) return std::nullopt;  // 0 = 1 row
  QVec x(a.ncols(), Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.ncols());
  return x;
}

std::optional<QMat> inverse(const QMat& a) {
  if (a.nrows() != a.ncols()) return std::nullopt;
  size_t n = a.nrows();
  QMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

Rat det(QMat m) {
  assert(m.nrows() == m.ncols());
  size_t n = m.nrows();
  Rat d(1);
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && m.at(sel, col) == 0) ++sel;
    if (sel == n) return Rat(0);
    if (sel != col) {
      std::swap(m.rows[sel], m.rows[col]);
      d = -d;
    }
    d *= m.at(col, col);
    Rat inv = 1 / m.at(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col) == 0) continue;
      Rat f = m.at(i, col) * inv;
      for (size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

bool is_positive_definite(const QMat& gram) {
  if (gram.nrows() != gram.ncols()) return false;
  for (size_t k = 1; k <= gram.nrows(); ++k) {
    QMat minor(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor.at(i, j) = gram.at(i, j);
    if (det(minor) <= 0) return false;
  }
  return true;
}

bool is_positive_definite_on_span(const QMat& gram, const std::vector<QVec>& span) {
  // Reduce to an independent subset of span, then test B^T G B.
  QMat m;
  for (const auto& v : span) m.rows.push_back(v);
  QMat red = m;
  auto pivots = rref(red);
  std::vector<QVec> basis;
  {
    // rows of `red` with pivots form a basis of the row space
    for (size_t r = 0; r < pivots.size(); ++r) basis.push_back(red.rows[r]);
  }
  if (basis.empty()) return true;
  QMat b;
  b.rows = basis;
  QMat bt = b.transpose();          // columns are basis vectors
  QMat g = mat_mul(b, mat_mul(gram, bt));
  return is_positive_definite(g);
}

QMat hnf_column_basis(const QMat& int_cols) {
  // Work on columns as mpz rows for convenience.
  size_t d = int_cols.nrows(), n = int_cols.ncols();
  std::vector<std::vector<mpz_class>> cols(n, std::vector<mpz_class>(d));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < d; ++i) {
      const Rat& x = int_cols.at(i, j);
      assert(x.get_den() == 1);
      cols[j][i] = x.get_num();
    }
  // Column HNF by integer row-position elimination.
  size_t row = 0, done = 0;
  while (row < d && done < n) {
    // find a column with nonzero entry at `row` among cols[done..]
    size_t sel = done;
    while (sel < n && cols[sel][row] == 0) ++sel;
    if (sel == n) {
      ++row;
      continue;
    }
    std::swap(cols[sel], cols[done]);
    // gcd-reduce all later columns against cols[done] at this row
    for (size_t j = done + 1; j < n; ++j) {
      while (cols[j][row] != 0) {
        mpz_class q = cols[done][row] / cols[j][row];
        for (size_t i = 0; i < d; ++i) cols[done][i] -= q * cols[j][i];
        std::swap(cols[done], cols[j]);
      }
    }
    if (cols[done][row] < 0)
      for (size_t i = 0; i < d; ++i) cols[done][i] = -cols[done][i];
    ++done;
    ++row;
  }
  QMat out(d, done);
  for (size_t j = 0; j < done; ++j)
    for (size_t i = 0; i < d; ++i) out.at(i, j) = Rat(cols[j][i]);
  return out;
}

std::vector<QVec> saturated_lattice_basis(const std::vector<QVec>& dirs, size_t dim) {
  if (dirs.empty()) return {};
  // span(dirs) ∩ Z^dim = kernel-of-complement trick: compute equations of the
  // span, then integer kernel of the equation matrix via HNF on its kernel.
  QMat m;
  for (const auto& v : dirs) m.rows.push_back(v);
  QMat red = m;
  auto pivots = rref(red);
  size_t r = pivots.size();
  if (r == 0) return {};
  // rational basis of the span
  std::vector<QVec> span_basis(red.rows.begin(), red.rows.begin() + r);
  if (r == dim) {
    std::vector<QVec> std_basis;
    for (size_t i = 0; i < dim; ++i) {
      QVec e(dim, Rat(0));
      e[i] = 1;
      std_basis.push_back(e);
    }
    return std_basis;
  }
  // Equations: vectors e with <e, s> = 0 for all span basis s.
  QMat span_mat;
  span_mat.rows = span_basis;
  auto eqs = kernel_basis(span_mat);  // each eq annihilates the span
  // Integer kernel of eqs-matrix: clear denominators per equation, then the
  // rational kernel scaled to primitive integer vectors generates a finite-
  // index sublattice; saturate with HNF over the kernel's integer span plus
  // denominator scalings. For the small dims here a direct approach works:
  // K = rational kernel basis; the saturated lattice is {x in Z^dim : Ex = 0}.
  // Compute via HNF of the projection: solve with Smith-style elimination.
  QMat E;
  for (auto& e : eqs) E.rows.push_back(primitive(e));
  // Find integer kernel basis of E using column HNF of [E^T | I] style
  // unimodular tracking.
  size_t neq = E.nrows();
  std::vector<std::vector<mpz_class>> a(neq, std::vector<mpz_class>(dim));
  for (size_t i = 0; i < neq; ++i) {
    mpz_class lcm = 1;
    for (size_t j = 0; j < dim; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), E.at(i, j).get_den().get_mpz_t());
    for (size_t j = 0; j < dim; ++j) {
      Rat x = E.at(i, j) * Rat(lcm);
      a[i][j] = x.get_num();
    }
  }
  // Column operations on A with unimodular tracking matrix U (dim x dim):
  std::vector<std::vector<mpz_class>> U(dim, std::vector<mpz_class>(dim, 0));
  for (size_t i = 0; i < dim; ++i) U[i][i] = 1;
  auto col_swap = [&](size_t p, size_t q) {
    for (size_t i = 0; i < neq; ++i) std::swap(a[i][p], a[i][q]);
    for (size_t i = 0; i < dim; ++i) std::swap(U[i][p], U[i][q]);
  };
  auto col_axpy = [&](size_t dst, size_t src, const mpz_class& f) {
    for (size_t i = 0; i < neq; ++i) a[i][dst] -= f * a[i][src];
    for (size_t i = 0; i < dim; ++i) U[i][dst] -= f * U[i][src];
  };
  size_t fixed = 0;
  for (size_t i = 0; i < neq && fixed < dim; ++i) {
    // eliminate row i across columns fixed..dim-1 down to one pivot
    while (true) {
      size_t nz = dim;
      for (size_t j = fixed; j < dim; ++j)
        if (a[i][j] != 0) {
          if (nz == dim || abs(a[i][j]) < abs(a[i][nz])) nz = j;
        }
      if (nz == dim) break;  // row already zero on the free columns
      bool others = false;
      for (size_t j = fixed; j < dim; ++j) {
        if (j == nz || a[i][j] == 0) continue;
        mpz_class q = a[i][j] / a[i][nz];
        col_axpy(j, nz, q);
        others = others || a[i][j] != 0;
      }
      if (!others) {
        col_swap(nz, fixed);
        ++fixed;
        break;
      }
    }
  }
  // Columns fixed..dim-1 of U form an integer kernel basis of E (saturated).
  std::vector<QVec> out;
  for (size_t j = fixed; j < dim; ++j) {
    QVec v(dim);
    for (size_t i = 0; i < dim; ++i) v[i] = Rat(U[i][j]);
    out.push_back(primitive(v));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace horoke
