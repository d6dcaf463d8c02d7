#pragma once

#include "qhd2d/field.hpp"

namespace qhd2d {

// Spectral calculus on the periodic grid. Every function is pure: inputs are
// read, fresh fields are returned. Plans are cached per transform size and
// executed through FFTW's new-array interface, so concurrent callers are fine.

/// Unnormalized forward DFT.
ComplexField fft_forward(const ComplexField& f);
/// Inverse DFT including the 1/(nx*ny) factor, so fft_inverse(fft_forward(f)) == f.
ComplexField fft_inverse(const ComplexField& spectrum);

/// 2D transforms of an arbitrary (nx, ny) buffer, used by the padded Poisson path.
void fft_forward_inplace(std::vector<cplx>& data, int nx, int ny);
void fft_inverse_inplace(std::vector<cplx>& data, int nx, int ny);

ComplexField to_complex(const RealField& f);
/// Real part; throws InputError if the imaginary residue exceeds `tol` relative to max|f|.
RealField real_part(const ComplexField& f, double tol = 1e-12);

/// Multiplies the spectrum of f by i*k per axis (Nyquist derivative zeroed).
ComplexVectorField gradient(const ComplexField& f);
VectorField gradient(const RealField& f);

/// Spectral derivative along a single axis (0 = x, 1 = y).
ComplexField derivative(const ComplexField& f, int axis);
RealField derivative(const RealField& f, int axis);

/// Multiplies the spectrum by -|k|^2 (full Nyquist wavenumber).
ComplexField laplacian(const ComplexField& f);
RealField laplacian(const RealField& f);

RealField divergence(const VectorField& v);
/// Scalar curl d_x v_y - d_y v_x.
RealField curl(const VectorField& v);

/// Lattice quadrature: sum * dx * dy.
double integrate(const RealField& f);
cplx integrate(const ComplexField& f);
/// Conjugate-linear in the first argument: sum conj(f) g dx dy.
cplx inner(const ComplexField& f, const ComplexField& g);
double inner(const RealField& f, const RealField& g);
double norm_l2(const ComplexField& f);
double norm_l2(const RealField& f);
double norm_l2(const VectorField& v);
double norm_l2(const ComplexVectorField& v);
double max_abs(const RealField& f);
double max_abs(const ComplexField& f);

}  // namespace qhd2d
