#include "splicemult/exact_linalg.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace splicemult {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorKind::BadWeight: return "BadWeight";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::NotAnEnd: return "NotAnEnd";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::MonomialConditionFails: return "MonomialConditionFails";
    case ErrorKind::MaxBlowupsExceeded: return "MaxBlowupsExceeded";
    case ErrorKind::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

Rational fractional_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

namespace linalg {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Position of the nonzero entry of smallest absolute value in the block
// rows [r0, m) x cols [c0, c1).
std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& a, std::size_t r0,
                                                                 std::size_t c0, std::size_t c1) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t r = r0; r < a.rows(); ++r)
    for (std::size_t c = c0; c < c1; ++c) {
      if (a(r, c) == 0) continue;
      Integer v = abs(a(r, c));
      if (!best || v < best_abs) {
        best = {r, c};
        best_abs = v;
      }
    }
  return best;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

Integer determinant(const IntMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::IndexMismatch, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RatMatrix invert_rational_matrix(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::IndexMismatch, "inverse of non-square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = -a(r, c);
      a.add_row(r, c, f);
      inv.add_row(r, c, f);
    }
  }
  return inv;
}

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfResult res{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& S = res.S;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool done = false;
    while (!done) {
      auto pos = min_abs_entry(S, t, t, n);
      if (!pos) return res;  // remaining block is zero
      S.swap_rows(t, pos->first);
      U.swap_rows(t, pos->first);
      S.swap_cols(t, pos->second);
      V.swap_cols(t, pos->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = trunc_div(S(i, t), S(t, t));
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = trunc_div(S(t, j), S(t, t));
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      done = true;
      for (std::size_t i = t + 1; i < m && done; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row(t, i, Integer(1));
            U.add_row(t, i, Integer(1));
            done = false;
            break;
          }
        }
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return res;
}

HnfResult hermite_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HnfResult res{IntMatrix::identity(m), a};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      auto pos = min_abs_entry(H, r, c, c + 1);
      if (!pos) break;
      H.swap_rows(r, pos->first);
      U.swap_rows(r, pos->first);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Integer q = trunc_div(H(i, c), H(r, c));
        H.add_row(i, r, -q);
        U.add_row(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;  // no pivot in this column
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(H(i, c), H(r, c));
      if (q == 0) continue;
      H.add_row(i, r, -q);
      U.add_row(i, r, -q);
    }
    ++r;
  }
  if (r < m) throw Error(ErrorKind::RankDeficient, "matrix does not have full row rank");
  return res;
}

bool is_negative_definite(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  const IntMatrix neg = -a;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    if (determinant(neg.leading_block(k)) <= 0) return false;
  }
  return true;
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  Integer d = determinant(a);
  return d == 1 || d == -1;
}

}  // namespace linalg
}  // namespace splicemult
