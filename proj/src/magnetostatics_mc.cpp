#include "helecell/magnetostatics_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "helecell/errors.hpp"

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace helecell {

namespace {

constexpr double kSkipDistance = 1e-12;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// 53 random mantissa bits, independent of the standard library's
// distribution implementations.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr double kSkip2 = kSkipDistance * kSkipDistance;

// 1/d - 1/s with s = sqrt(d^2 + h^2), written as h^2 / (d s (d + s)) to
// avoid cancellation far from x.
inline double kernel(double d2, double gap2) {
    const double d = std::sqrt(d2);
    const double s = std::sqrt(d2 + gap2);
    return d2 >= kSkip2 ? gap2 / (d * s * (d + s)) : 0.0;
}

#if defined(__AVX512F__)
// Two Newton steps on the 14-bit hardware estimates reach full double precision.
inline __m512d rsqrt_refined(__m512d x) {
    const __m512d half = _mm512_set1_pd(0.5);
    const __m512d three_half = _mm512_set1_pd(1.5);
    const __m512d hx = _mm512_mul_pd(half, x);
    __m512d y = _mm512_rsqrt14_pd(x);
    for (int i = 0; i < 2; ++i) y = _mm512_mul_pd(y, _mm512_fnmadd_pd(hx, _mm512_mul_pd(y, y), three_half));
    return y;
}

inline __m512d rcp_refined(__m512d x) {
    const __m512d two = _mm512_set1_pd(2.0);
    __m512d y = _mm512_rcp14_pd(x);
    for (int i = 0; i < 2; ++i) y = _mm512_mul_pd(y, _mm512_fnmadd_pd(x, y, two));
    return y;
}

double kernel_sum_avx512(const Vec2& x, const double* px, const double* py, std::size_t m, double gap2,
                         std::size_t& k) {
    const __m512d vx = _mm512_set1_pd(x.x);
    const __m512d vy = _mm512_set1_pd(x.y);
    const __m512d vg = _mm512_set1_pd(gap2);
    const __m512d skip = _mm512_set1_pd(kSkip2);
    __m512d acc = _mm512_setzero_pd();
    for (; k + 8 <= m; k += 8) {
        const __m512d dx = _mm512_sub_pd(vx, _mm512_loadu_pd(px + k));
        const __m512d dy = _mm512_sub_pd(vy, _mm512_loadu_pd(py + k));
        const __m512d d2 = _mm512_fmadd_pd(dx, dx, _mm512_mul_pd(dy, dy));
        const __m512d s2 = _mm512_add_pd(d2, vg);
        const __mmask8 ok = _mm512_cmp_pd_mask(d2, skip, _CMP_GE_OQ);
        const __m512d rd = rsqrt_refined(d2);
        const __m512d rs = rsqrt_refined(s2);
        const __m512d inv = rcp_refined(_mm512_add_pd(_mm512_mul_pd(d2, rd), _mm512_mul_pd(s2, rs)));
        const __m512d kv = _mm512_mul_pd(_mm512_mul_pd(vg, _mm512_mul_pd(rd, rs)), inv);
        acc = _mm512_mask_add_pd(acc, ok, acc, kv);
    }
    return _mm512_reduce_add_pd(acc);
}
#endif

}  // namespace

std::uint64_t step_seed(std::uint64_t master_seed, std::uint64_t step_index) {
    return splitmix64(splitmix64(master_seed) ^ step_index);
}

McSampling draw_samples(const PolygonalCurve& curve, const GeometryCache& cache, std::size_t samples,
                        std::uint64_t seed) {
    if (samples < 1) {
        throw EmptyInteriorError("Monte Carlo sample count must be at least 1");
    }
    McSampling s;
    s.center = cache.barycenter;
    for (const Vec2& v : curve.vertices()) {
        s.radius = std::max(s.radius, norm(v - s.center));
    }

    std::mt19937_64 rng(seed);
    s.samples.resize(samples);
    s.inside.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double r = s.radius * std::sqrt(unit_uniform(rng));
        const double theta = 2.0 * std::numbers::pi * unit_uniform(rng);
        s.samples[k] = s.center + Vec2{r * std::cos(theta), r * std::sin(theta)};
    }
    const WindingClassifier classifier(curve);
    for (std::size_t k = 0; k < samples; ++k) {
        s.inside[k] = classifier.winding_number(s.samples[k]) == 1 ? 1 : 0;
        if (s.inside[k]) {
            s.interior_x.push_back(s.samples[k].x);
            s.interior_y.push_back(s.samples[k].y);
        }
    }
    if (s.interior_x.empty()) {
        throw EmptyInteriorError("no Monte Carlo sample fell inside the domain (M = " + std::to_string(samples) + ")");
    }
    s.area_element = cache.area / static_cast<double>(s.inside_count());
    return s;
}

double potential_at(const Vec2& x, const McSampling& sampling, double gap) {
    const double gap2 = gap * gap;
    const double* px = sampling.interior_x.data();
    const double* py = sampling.interior_y.data();
    const std::size_t m = sampling.inside_count();
    double sum = 0.0;
    std::size_t start = 0;
#if defined(__AVX512F__)
    sum = kernel_sum_avx512(x, px, py, m, gap2, start);
#endif
#pragma omp simd reduction(+ : sum)
    for (std::size_t k = start; k < m; ++k) {
        const double dx = x.x - px[k];
        const double dy = x.y - py[k];
        sum += kernel(dx * dx + dy * dy, gap2);
    }
    return -sum * sampling.area_element;
}

McEstimate potential_with_error(const Vec2& x, const McSampling& sampling, double gap) {
    const double gap2 = gap * gap;
    const std::size_t count = sampling.inside_count();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double dx = x.x - sampling.interior_x[k];
        const double dy = x.y - sampling.interior_y[k];
        const double f = kernel(dx * dx + dy * dy, gap2);
        sum += f;
        sum_sq += f * f;
    }
    const double m = static_cast<double>(count);
    const double mean = sum / m;
    const double variance = m > 1.0 ? std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0)) : 0.0;
    const double area = sampling.area_element * m;
    return {-sum * sampling.area_element, area * std::sqrt(variance / m)};
}

std::vector<double> potential_on_boundary(const GeometryCache& cache, const McSampling& sampling, double gap) {
    std::vector<double> phi(cache.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phi[i] = potential_at(cache.midpoint[i], sampling, gap);
    }
    return phi;
}

}  // namespace helecell
