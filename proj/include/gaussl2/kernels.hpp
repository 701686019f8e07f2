#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP implementation used
// by the library and a plain serial reference that evaluates every basis
// function independently; the two are cross-checked in tests and compared
// in bench/.

#include <complex>
#include <span>
#include <vector>

namespace gaussl2::kernels {

using cplx = std::complex<double>;

namespace omp {

/// Row-major Q x (N+1) table of e_n(x_i).
std::vector<double> real_basis_table(std::span<const double> nodes, int degree);

/// out[n] = sum_i w_i e_n(x_i) v_i.
void real_analyze(std::span<const double> nodes, std::span<const double> weights,
                  std::span<const double> samples, int degree, std::span<double> out);

/// out[p] = sum_n c_n e_n(x_p).
void real_synthesize(std::span<const double> coeffs, std::span<const double> points,
                     std::span<double> out);

/// Row-major P x (M+1)(N+1) table of eps_{m,n}(z_p).
std::vector<cplx> complex_basis_table(std::span<const cplx> nodes, int degree_m, int degree_n);

/// out[m(N+1)+n] = sum_i w_i conj(eps_{m,n}(z_i)) v_i.
void complex_analyze(std::span<const cplx> nodes, std::span<const double> weights,
                     std::span<const cplx> samples, int degree, std::span<cplx> out);

/// out[p] = sum_{m,n} c_{m,n} eps_{m,n}(z_p); coeffs row-major (M+1) x (N+1).
void complex_synthesize(std::span<const cplx> coeffs, int degree_m, int degree_n,
                        std::span<const cplx> points, std::span<cplx> out);

}  // namespace omp

namespace serial {

void real_analyze(std::span<const double> nodes, std::span<const double> weights,
                  std::span<const double> samples, int degree, std::span<double> out);
void real_synthesize(std::span<const double> coeffs, std::span<const double> points,
                     std::span<double> out);
void complex_analyze(std::span<const cplx> nodes, std::span<const double> weights,
                     std::span<const cplx> samples, int degree, std::span<cplx> out);
void complex_synthesize(std::span<const cplx> coeffs, int degree_m, int degree_n,
                        std::span<const cplx> points, std::span<cplx> out);

}  // namespace serial

}  // namespace gaussl2::kernels
