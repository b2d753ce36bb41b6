#include "rieszmg/toeplitz.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rieszmg {

namespace {

// FFTW's planner mutates global state; executions are thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

int embedding_size(int n) {
    int m = 1;
    while (m < 2 * n) m <<= 1;
    return m;
}

// One complex in-place-capable transform pair of a fixed size, executing on
// buffers owned here so plan and data alignment always agree.
struct TransformSet {
    int m = 0;
    fftw_complex* a = nullptr;
    fftw_complex* b = nullptr;
    fftw_plan forward = nullptr;  // a -> b
    fftw_plan backward = nullptr; // b -> a, unnormalized

    explicit TransformSet(int size) : m(size) {
        a = fftw_alloc_complex(static_cast<std::size_t>(m));
        b = fftw_alloc_complex(static_cast<std::size_t>(m));
        if (a == nullptr || b == nullptr) {
            throw std::bad_alloc();
        }
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward = fftw_plan_dft_1d(m, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(m, b, a, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~TransformSet() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward != nullptr) fftw_destroy_plan(forward);
        if (backward != nullptr) fftw_destroy_plan(backward);
        fftw_free(a);
        fftw_free(b);
    }

    TransformSet(const TransformSet&) = delete;
    TransformSet& operator=(const TransformSet&) = delete;
};

} // namespace

CirculantSpectrum::CirculantSpectrum(int toeplitz_size, int embedded_size,
                                     std::vector<std::complex<double>> eigenvalues)
    : n_(toeplitz_size), m_(embedded_size), eig_(std::move(eigenvalues)) {
    if (n_ < 1 || m_ < 2 * n_ - 1 || static_cast<int>(eig_.size()) != m_) {
        throw std::invalid_argument("inconsistent circulant spectrum sizes");
    }
}

CirculantSpectrum embed_circulant(const SymmetricToeplitz& T) {
    const int n = T.size();
    if (n < 1) {
        throw std::invalid_argument("Toeplitz matrix must be nonempty");
    }
    const int m = embedding_size(n);
    TransformSet ts(m);
    std::memset(ts.a, 0, sizeof(fftw_complex) * static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) {
        ts.a[j][0] = T.first_column[static_cast<std::size_t>(j)];
    }
    for (int j = 1; j < n; ++j) {
        ts.a[m - j][0] = T.first_column[static_cast<std::size_t>(j)];
    }
    fftw_execute(ts.forward);
    std::vector<std::complex<double>> eig(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        eig[static_cast<std::size_t>(k)] = {ts.b[k][0], ts.b[k][1]};
    }
    return CirculantSpectrum(n, m, std::move(eig));
}

struct FftWorkspace::Impl {
    std::map<int, TransformSet> sets;

    TransformSet& set_for(int m) {
        auto it = sets.find(m);
        if (it == sets.end()) {
            it = sets.try_emplace(it, m, m);
        }
        return it->second;
    }
};

FftWorkspace::FftWorkspace() : impl_(std::make_unique<Impl>()) {}
FftWorkspace::~FftWorkspace() = default;
FftWorkspace::FftWorkspace(FftWorkspace&&) noexcept = default;
FftWorkspace& FftWorkspace::operator=(FftWorkspace&&) noexcept = default;

void FftWorkspace::matvec(const CirculantSpectrum& S, std::span<const double> v,
                          std::span<double> out) {
    const int n = S.toeplitz_size();
    const int m = S.embedded_size();
    if (static_cast<int>(v.size()) != n || static_cast<int>(out.size()) != n) {
        throw std::invalid_argument("matvec operand length does not match the matrix");
    }
    TransformSet& ts = impl_->set_for(m);
    std::memset(ts.a, 0, sizeof(fftw_complex) * static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        ts.a[i][0] = v[static_cast<std::size_t>(i)];
    }
    fftw_execute(ts.forward);
    const auto eig = S.eigenvalues();
    for (int k = 0; k < m; ++k) {
        const double re = ts.b[k][0];
        const double im = ts.b[k][1];
        const double er = eig[static_cast<std::size_t>(k)].real();
        const double ei = eig[static_cast<std::size_t>(k)].imag();
        ts.b[k][0] = re * er - im * ei;
        ts.b[k][1] = re * ei + im * er;
    }
    fftw_execute(ts.backward);
    const double scale = 1.0 / m;
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = ts.a[i][0] * scale;
    }
}

std::vector<double> dense_expand(const SymmetricToeplitz& T) {
    const int n = T.size();
    if (n > 4096) {
        throw std::invalid_argument("dense expansion is a test oracle; refusing n > 4096");
    }
    std::vector<double> dense(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            dense[static_cast<std::size_t>(i) * n + j] =
                T.first_column[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    return dense;
}

} // namespace rieszmg
