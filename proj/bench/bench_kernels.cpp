// Serial vs OpenMP timings of the two parallel kernels: the matrix product
// over Z[H] and fraction-free elimination.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "lkb/complex.hpp"
#include "lkb/linalg.hpp"

using namespace lkb;

namespace {

Poly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 3), c(-9, 9), t(1, 5);
  std::vector<Poly::Term> terms;
  for (int k = t(rng); k > 0; --k) terms.push_back({{e(rng), e(rng)}, Integer(c(rng))});
  return Poly::from_terms(std::move(terms));
}

RingMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  RingMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_poly(rng);
  return m;
}

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s   openmp %9.4f s   speedup %5.2fx   %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::mt19937_64 rng(1);

  for (std::size_t n : {16, 32, 48}) {
    const RingMatrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
    RingMatrix s, p;
    const double ts = seconds([&] { s = mat_mul_serial(a, b); }, 3);
    const double tp = seconds([&] { p = mat_mul(a, b); }, 3);
    char name[64];
    std::snprintf(name, sizeof name, "mat_mul %zux%zu", n, n);
    row(name, ts, tp, s == p);
  }

  for (std::size_t n : {4, 6, 8}) {
    const RingMatrix a = random_matrix(n, n + 2, rng);
    RowEchelon s, p;
    const double ts = seconds([&] { s = fraction_free_rref_serial(a); }, 1);
    const double tp = seconds([&] { p = fraction_free_rref(a); }, 1);
    char name[64];
    std::snprintf(name, sizeof name, "rref random %zux%zu", n, n + 2);
    row(name, ts, tp, s.form == p.form && s.pivot_cols == p.pivot_cols);
  }

  for (int n : {5, 6, 7}) {
    const RingMatrix d2 = sal_fn(n).d2;
    RowEchelon s, p;
    const double ts = seconds([&] { s = fraction_free_rref_serial(d2); }, 1);
    const double tp = seconds([&] { p = fraction_free_rref(d2); }, 1);
    char name[64];
    std::snprintf(name, sizeof name, "rref d2 of Sal(F_%d)", n);
    row(name, ts, tp, s.form == p.form && s.pivot_cols == p.pivot_cols);
  }
}
