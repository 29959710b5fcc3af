#include "nullseries/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "nullseries/errors.hpp"

namespace nullseries::fft {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mu);
        auto key = std::make_pair(n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        auto* buf = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(int(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) fail(ErrorKind::shape, "fftw could not plan a transform of this size");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::vector<std::complex<double>>& x, int sign) {
    if (x.empty()) return;
    fftw_plan p = cache().get(x.size(), sign);
    auto* d = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(p, d, d);
}

}  // namespace

void forward(std::vector<std::complex<double>>& x) { run(x, FFTW_FORWARD); }
void backward(std::vector<std::complex<double>>& x) { run(x, FFTW_BACKWARD); }

}  // namespace nullseries::fft
