#include "rabinls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace rabinls {

namespace {

// RAII buffer from fftw_malloc. All execution buffers come from here so the
// new-array execute interface sees one consistent alignment class.
struct RawBuffer {
    fftw_complex* data = nullptr;
    std::size_t size = 0;
    explicit RawBuffer(std::size_t n) : size(n) {
        data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!data) throw std::bad_alloc();
    }
    ~RawBuffer() { fftw_free(data); }
    RawBuffer(const RawBuffer&) = delete;
    RawBuffer& operator=(const RawBuffer&) = delete;
};

// Per-thread scratch reuse; the hot loop runs several transforms per step on
// buffers of one or two sizes.
class FftwBuffer {
public:
    explicit FftwBuffer(std::size_t n) {
        auto& pool = slots();
        for (auto& slot : pool) {
            if (slot && slot->size == n) {
                buf_ = std::move(slot);
                break;
            }
        }
        if (!buf_) buf_ = std::make_unique<RawBuffer>(n);
        data = buf_->data;
    }
    ~FftwBuffer() {
        auto& pool = slots();
        for (auto& slot : pool) {
            if (!slot) {
                slot = std::move(buf_);
                return;
            }
        }
    }
    fftw_complex* data = nullptr;

private:
    static std::array<std::unique_ptr<RawBuffer>, 4>& slots() {
        thread_local std::array<std::unique_ptr<RawBuffer>, 4> pool;
        return pool;
    }
    std::unique_ptr<RawBuffer> buf_;
};

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plan creation is not thread safe; executing a plan on distinct buffers is.
// Plans use FFTW_ESTIMATE so planning is deterministic run to run.
class PlanCache {
public:
    PlanPair get(int dim, int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(dim, n);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
        scratch_.emplace_back(std::make_unique<FftwBuffer>(total));
        fftw_complex* buf = scratch_.back()->data;

        int dims[3] = {n, n, n};
        PlanPair p;
        p.forward = fftw_plan_dft(dim, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.backward = fftw_plan_dft(dim, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!p.forward || !p.backward) throw std::runtime_error("fftw plan creation failed");
        plans_[key] = p;
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, PlanPair> plans_;
    std::vector<std::unique_ptr<FftwBuffer>> scratch_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

// std::complex<double> is layout compatible with double[2]
void load(fftw_complex* dst, const std::vector<Complex>& src) {
    std::memcpy(dst, reinterpret_cast<const double*>(src.data()), sizeof(Complex) * src.size());
}

void store(std::vector<Complex>& dst, const fftw_complex* src) {
    std::memcpy(reinterpret_cast<double*>(dst.data()), src, sizeof(Complex) * dst.size());
}

}  // namespace

std::vector<Complex> forward_fft(const ScalarField& f) {
    const std::size_t total = f.values.size();
    PlanPair p = plan_cache().get(f.grid->dim, f.grid->points_per_dim);
    FftwBuffer buf(total);
    load(buf.data, f.values);
    fftw_execute_dft(p.forward, buf.data, buf.data);
    std::vector<Complex> out(total);
    store(out, buf.data);
    return out;
}

ScalarField inverse_fft(const GridPtr& grid, const std::vector<Complex>& spectrum) {
    const std::size_t total = grid->total_points();
    if (spectrum.size() != total)
        throw std::invalid_argument("inverse_fft: spectrum length does not match grid");
    PlanPair p = plan_cache().get(grid->dim, grid->points_per_dim);
    FftwBuffer buf(total);
    std::memcpy(buf.data, spectrum.data(), sizeof(Complex) * total);
    fftw_execute_dft(p.backward, buf.data, buf.data);
    ScalarField out(grid);
    store(out.values, buf.data);
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& v : out.values) v *= scale;
    return out;
}

KineticPropagator::KineticPropagator(GridPtr grid, double tau)
    : grid_(std::move(grid)), tau_(tau) {
    const Grid& g = *grid_;
    const std::size_t total = g.total_points();
    multiplier_.resize(total);
    const double scale = 1.0 / static_cast<double>(total);
    const int n = g.points_per_dim;
    std::size_t idx = 0;
    if (g.dim == 1) {
        for (int j = 0; j < n; ++j, ++idx) {
            const double xi2 = g.wavenumbers[j] * g.wavenumbers[j];
            multiplier_[idx] = std::polar(scale, -0.5 * xi2 * tau);
        }
    } else {
        for (int j0 = 0; j0 < n; ++j0) {
            const double w0 = g.wavenumbers[j0] * g.wavenumbers[j0];
            for (int j1 = 0; j1 < n; ++j1) {
                const double w01 = w0 + g.wavenumbers[j1] * g.wavenumbers[j1];
                if (g.dim == 2) {
                    multiplier_[idx++] = std::polar(scale, -0.5 * w01 * tau);
                } else {
                    for (int j2 = 0; j2 < n; ++j2, ++idx) {
                        const double xi2 = w01 + g.wavenumbers[j2] * g.wavenumbers[j2];
                        multiplier_[idx] = std::polar(scale, -0.5 * xi2 * tau);
                    }
                }
            }
        }
    }
}

ScalarField KineticPropagator::apply(const ScalarField& f) const {
    const std::size_t total = f.values.size();
    if (total != multiplier_.size())
        throw std::invalid_argument("KineticPropagator: field does not match the grid");
    PlanPair p = plan_cache().get(grid_->dim, grid_->points_per_dim);
    FftwBuffer buf(total);
    load(buf.data, f.values);
    fftw_execute_dft(p.forward, buf.data, buf.data);
    for (std::size_t i = 0; i < total; ++i) {
        const Complex v = Complex(buf.data[i][0], buf.data[i][1]) * multiplier_[i];
        buf.data[i][0] = v.real();
        buf.data[i][1] = v.imag();
    }
    fftw_execute_dft(p.backward, buf.data, buf.data);
    ScalarField out(f.grid);
    store(out.values, buf.data);
    return out;
}

ScalarField apply_kinetic(const ScalarField& f, double tau) {
    return KineticPropagator(f.grid, tau).apply(f);
}

std::vector<ScalarField> spectral_gradient(const ScalarField& f) {
    const Grid& g = *f.grid;
    const std::size_t total = f.values.size();
    PlanPair p = plan_cache().get(g.dim, g.points_per_dim);

    FftwBuffer spec(total);
    load(spec.data, f.values);
    fftw_execute_dft(p.forward, spec.data, spec.data);

    const double scale = 1.0 / static_cast<double>(total);
    std::vector<ScalarField> grad;
    grad.reserve(g.dim);
    FftwBuffer work(total);
    for (int axis = 0; axis < g.dim; ++axis) {
        for (std::size_t i = 0; i < total; ++i) {
            const double xi = g.deriv_multipliers[g.axis_index(i, axis)];
            // multiply by i*xi and fold in inverse normalization
            const Complex v = Complex(spec.data[i][0], spec.data[i][1]) *
                              Complex(0.0, xi * scale);
            work.data[i][0] = v.real();
            work.data[i][1] = v.imag();
        }
        fftw_execute_dft(p.backward, work.data, work.data);
        ScalarField df(f.grid);
        store(df.values, work.data);
        grad.push_back(std::move(df));
    }
    return grad;
}

Complex integrate(const ScalarField& f) {
    Complex sum{0.0, 0.0};
    for (const auto& v : f.values) sum += v;
    return sum * std::pow(f.grid->spacing, f.grid->dim);
}

double integrate(const GridPtr& grid, const std::vector<double>& density) {
    if (density.size() != grid->total_points())
        throw std::invalid_argument("integrate: density length does not match grid");
    double sum = 0.0;
    for (double v : density) sum += v;
    return sum * std::pow(grid->spacing, grid->dim);
}

}  // namespace rabinls
