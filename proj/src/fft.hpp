#pragma once

#include <complex>
#include <cstddef>

namespace stmas::detail {

/// In-place DFT X[q] = sum_n x[n] exp(+2 pi i q n / len), unnormalized, on
/// `count` sequences of length `len` laid out with the given stride and
/// distance between sequences.
void dft_many(std::complex<double> *data, std::size_t len, std::size_t count, std::size_t stride,
              std::size_t dist);

} // namespace stmas::detail
