#pragma once

#include <complex>
#include <vector>

namespace tbh::fft {

// Smallest n' >= n whose prime factors are all in {2,3,5}.
int next_fast_size(int n);

// In-place complex DFT, unnormalized.  sign=-1: sum x_j e^{-2pi i jk/n}
// (analysis); sign=+1: sum c_k e^{+2pi i jk/n} (synthesis).  Plans are
// cached per (size, sign); execution is safe from concurrent threads on
// distinct buffers.
void transform(std::complex<double>* data, int n, int sign);
void transform(std::vector<std::complex<double>>& data, int sign);

// In-place 3D complex DFT on an n*n*n cube (row-major, z fastest).
void transform3d(std::complex<double>* data, int n, int sign);

} // namespace tbh::fft
