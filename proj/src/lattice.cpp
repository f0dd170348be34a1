#include "cuspcert/lattice.hpp"

#include <stdexcept>

namespace cuspcert {

Lattice::Lattice(std::size_t ambient_dim, IntMatrix basis)
    : n_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != n_) throw std::invalid_argument("lattice basis has wrong ambient dimension");
  if (basis_.cols() > n_) throw std::invalid_argument("lattice basis has too many columns");
  basis_snf_ = smith_normal_form(basis_);
  for (const Int& dv : basis_snf_.d)
    if (dv == 0) throw std::invalid_argument("lattice basis columns are dependent");
}

Lattice Lattice::standard(std::size_t n) { return Lattice(n, IntMatrix::identity(n)); }

std::optional<std::vector<Int>> Lattice::coords(const std::vector<Int>& v) const {
  if (v.size() != n_) throw std::invalid_argument("vector has wrong ambient dimension");
  // basis * c = v  <=>  diag(d) * (V^-1 c) = U v
  std::vector<Int> uv = basis_snf_.U.apply(v);
  const std::size_t r = rank();
  std::vector<Int> z(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (uv[i] % basis_snf_.d[i] != 0) return std::nullopt;
    z[i] = uv[i] / basis_snf_.d[i];
  }
  for (std::size_t i = r; i < n_; ++i)
    if (uv[i] != 0) return std::nullopt;
  return basis_snf_.V.apply(z);
}

bool Lattice::contains(const std::vector<Int>& v) const { return coords(v).has_value(); }

std::vector<Int> Lattice::from_coords(const std::vector<Int>& c) const { return basis_.apply(c); }

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve shape mismatch");
  SmithDecomposition s = smith_normal_form(a);
  std::vector<Int> ub = s.U.apply(b);
  std::vector<Int> z(a.cols());
  const std::size_t k = s.d.size();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < k && s.d[i] != 0) {
      if (ub[i] % s.d[i] != 0) return std::nullopt;
      z[i] = ub[i] / s.d[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(z);
}

IntMatrix restrict_to_lattice(const IntMatrix& m, const Lattice& l) {
  if (m.rows() != l.ambient_dim() || m.cols() != l.ambient_dim())
    throw std::invalid_argument("endomorphism has wrong ambient dimension");
  const std::size_t r = l.rank();
  IntMatrix out(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    auto c = l.coords(m.apply(l.basis().column(j)));
    if (!c) throw std::invalid_argument("endomorphism does not stabilize the lattice");
    for (std::size_t i = 0; i < r; ++i) out.at(i, j) = (*c)[i];
  }
  return out;
}

std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& m, const std::vector<Int>& v,
                                                 const Lattice& l) {
  auto cv = l.coords(v);
  if (!cv) throw std::invalid_argument("right hand side is not in the lattice");
  IntMatrix ml = restrict_to_lattice(m, l);
  auto cx = solve_integer(ml, *cv);
  if (!cx) return std::nullopt;
  return l.from_coords(*cx);
}

Lattice kernel_lattice(const IntMatrix& m, const Lattice& l) {
  IntMatrix ml = restrict_to_lattice(m, l);
  SmithDecomposition s = smith_normal_form(ml);
  std::vector<std::vector<Int>> cols;
  for (std::size_t i = 0; i < s.d.size(); ++i)
    if (s.d[i] == 0) cols.push_back(l.from_coords(s.V.column(i)));
  IntMatrix basis(l.ambient_dim(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < l.ambient_dim(); ++i) basis.at(i, j) = cols[j][i];
  return Lattice(l.ambient_dim(), std::move(basis));
}

}  // namespace cuspcert
