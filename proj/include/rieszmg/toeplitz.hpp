/// @file toeplitz.hpp
/// @brief Symmetric Toeplitz matrix-vector products in O(n log n) via
///        circulant embedding and the FFT.

#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace rieszmg {

/// A real symmetric Toeplitz matrix, stored as its first column.
struct SymmetricToeplitz {
    std::vector<double> first_column;

    int size() const noexcept { return static_cast<int>(first_column.size()); }
};

/// Eigenvalues of the circulant that carries an n x n symmetric Toeplitz
/// matrix as its leading principal block. The embedded first column is
/// (c_0, ..., c_{n-1}, 0, ..., 0, c_{n-1}, ..., c_1), padded with zeros up
/// to the smallest power of two >= 2n so transforms always hit the radix-2
/// fast path. For a real symmetric embedding the spectrum is real up to
/// rounding; it is kept complex and checked in tests.
class CirculantSpectrum {
public:
    CirculantSpectrum(int toeplitz_size, int embedded_size,
                      std::vector<std::complex<double>> eigenvalues);

    int toeplitz_size() const noexcept { return n_; }
    int embedded_size() const noexcept { return m_; }
    std::span<const std::complex<double>> eigenvalues() const noexcept { return eig_; }

private:
    int n_;
    int m_;
    std::vector<std::complex<double>> eig_;
};

/// Builds the embedding circulant of T and returns its spectrum (one forward
/// transform). Computed once per matrix and meant to be cached by callers.
CirculantSpectrum embed_circulant(const SymmetricToeplitz& T);

/// Transform buffers and plans, one set per embedding size encountered.
/// Not shareable between concurrent callers: each worker owns a workspace,
/// while spectra are immutable and may be shared freely.
class FftWorkspace {
public:
    FftWorkspace();
    ~FftWorkspace();
    FftWorkspace(FftWorkspace&&) noexcept;
    FftWorkspace& operator=(FftWorkspace&&) noexcept;
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    /// out = T v for the Toeplitz matrix whose embedding spectrum is S.
    /// v and out have length S.toeplitz_size() and may alias.
    void matvec(const CirculantSpectrum& S, std::span<const double> v,
                std::span<double> out);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Row-major dense expansion, for test oracles only; refuses n > 4096.
std::vector<double> dense_expand(const SymmetricToeplitz& T);

} // namespace rieszmg
