#include "smith/local_smith.hpp"

#include <numeric>

namespace smith {

template <Field F>
LocalSmithResult<F> local_smith_reference(const MatPoly<F>& A, const Poly<F>& p) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "local Smith form needs a square matrix");
  const int mu = multiplicity_in_det(A, p);
  if (mu <= 0) fail(ErrorCode::PrimeDoesNotDivideDet, "p does not divide det A");
  const int n = A.rows();
  const ResidueField<F> K(p);

  std::vector<std::vector<Poly<F>>> x(static_cast<std::size_t>(n), std::vector<Poly<F>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly<F>(1);
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<ResidueElt<F>>> ys;  // accepted residuals
  int i = 0;
  int k = 0;
  auto budget = [&] {
    return std::accumulate(alpha.begin(), alpha.begin() + i, 0) + (n - i) * k;
  };
  while (budget() < mu) {
    if (k > mu) detail::local_failure(A, "reference loop did not terminate");
    const Poly<F> pk = pow(p, k);
    const int r = n - i;
    for (int j = 0; j < r; ++j) {
      auto Ax = A.apply(x[static_cast<std::size_t>(i)]);
      std::vector<ResidueElt<F>> y(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) {
        auto [q, rr] = divmod(Ax[static_cast<std::size_t>(t)], pk);
        if (!rr.is_zero()) fail(ErrorCode::Internal, "A x_i is not divisible by p^k");
        y[static_cast<std::size_t>(t)] = K.encode(q);
      }
      // Independence test against the accepted residuals.
      ResidueMatrix<F> M(K, n, i + 1);
      for (int m = 0; m < i; ++m) {
        for (int t = 0; t < n; ++t) M.at(t, m) = ys[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
      }
      for (int t = 0; t < n; ++t) M.at(t, i) = y[static_cast<std::size_t>(t)];
      auto rr = rref_over_residue(M);
      if (static_cast<int>(rr.pivots.size()) == i + 1) {
        alpha[static_cast<std::size_t>(i)] = k;
        ys.push_back(std::move(y));
        ++i;
        continue;
      }
      // Accepted columns are independent, so row m of the rref holds a_m.
      auto& xi = x[static_cast<std::size_t>(i)];
      for (int m = 0; m < i; ++m) {
        const auto& a = rr.rref.at(m, i);
        if (a.is_zero()) continue;
        Poly<F> coef = pow(p, k - alpha[static_cast<std::size_t>(m)]) * K.decode(a);
        for (int t = 0; t < n; ++t) xi[static_cast<std::size_t>(t)] -= coef * x[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
      }
      std::rotate(x.begin() + i, x.begin() + i + 1, x.end());
    }
    ++k;
  }
  for (int m = i; m < n; ++m) alpha[static_cast<std::size_t>(m)] = k;
  MatPoly<F> V(n, n);
  for (int j = 0; j < n; ++j) V.set_column(j, x[static_cast<std::size_t>(j)]);
  return detail::finish_local(A, p, mu, std::move(V), std::move(alpha));
}

template LocalSmithResult<Rational> local_smith_reference(const MatPoly<Rational>&, const Poly<Rational>&);
template LocalSmithResult<GaussianRational> local_smith_reference(const MatPoly<GaussianRational>&,
                                                                  const Poly<GaussianRational>&);

}  // namespace smith
