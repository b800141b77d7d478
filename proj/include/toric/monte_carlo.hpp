#pragma once

// Rejection-sampling estimate of volume and first moments, used as an
// independent oracle for the exact integrator.
//
// Sample i, coordinate j is drawn from a counter-based generator keyed on
// (seed, i, j), and partial sums are formed over fixed blocks of kBlock
// samples and then added in block order. The estimate therefore depends only
// on (seed, samples), not on how blocks are spread over threads.

#include "polytope.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace toric {

struct McEstimate {
    std::uint64_t samples = 0;
    std::uint64_t accepted = 0;
    double volume = 0, volume_stderr = 0;
    std::vector<double> first_moments, first_moments_stderr;
    std::vector<double> barycentre, barycentre_stderr;

    // |exact - estimate| <= k * stderr, per quantity.
    bool volume_agrees(const Rat& exact, double k = 3.0) const {
        return std::abs(exact.to_double() - volume) <= k * volume_stderr;
    }
    bool barycentre_agrees(const QVec& exact, double k = 3.0) const {
        for (std::size_t s = 0; s < exact.size(); ++s)
            if (std::abs(exact[s].to_double() - barycentre[s]) > k * barycentre_stderr[s]) return false;
        return true;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t sample, std::uint64_t coord) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(sample * 0x100000001B3ull + coord));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct McBlock {
    std::uint64_t hits = 0;
    std::vector<double> sum, sum_sq;  // of y_s over accepted samples
};

} // namespace detail

inline McEstimate mc_moments(const VPolytope& p, std::uint64_t seed, std::uint64_t samples, unsigned threads = 1) {
    constexpr std::uint64_t kBlock = 4096;
    const std::size_t n = p.dim;
    if (samples == 0) throw std::invalid_argument("mc_moments: zero samples");
    std::vector<double> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat mn = p.vertices.at(0)[j], mx = mn;
        for (const auto& v : p.vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = mn.to_double();
        hi[j] = mx.to_double();
    }
    double box = 1;
    for (std::size_t j = 0; j < n; ++j) box *= hi[j] - lo[j];
    if (!(box > 0)) throw DegeneratePolytope("mc_moments: bounding box has zero volume");

    const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<detail::McBlock> blocks(nblocks);
    auto run = [&](std::uint64_t first, std::uint64_t stride) {
        std::vector<double> x(n);
        for (std::uint64_t b = first; b < nblocks; b += stride) {
            auto& blk = blocks[b];
            blk.sum.assign(n, 0.0);
            blk.sum_sq.assign(n, 0.0);
            const std::uint64_t end = std::min(samples, (b + 1) * kBlock);
            for (std::uint64_t i = b * kBlock; i < end; ++i) {
                for (std::size_t j = 0; j < n; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * detail::uniform01(seed, i, j);
                bool inside = true;
                for (const auto& h : p.facets)
                    if (h.eval(std::span<const double>(x)) < 0) {
                        inside = false;
                        break;
                    }
                if (!inside) continue;
                ++blk.hits;
                for (std::size_t j = 0; j < n; ++j) {
                    blk.sum[j] += x[j];
                    blk.sum_sq[j] += x[j] * x[j];
                }
            }
        }
    };
    if (threads <= 1) {
        run(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t, threads);
    }

    std::uint64_t hits = 0;
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
    for (const auto& blk : blocks) {
        hits += blk.hits;
        for (std::size_t j = 0; j < n; ++j) {
            sum[j] += blk.sum[j];
            sum_sq[j] += blk.sum_sq[j];
        }
    }
    if (hits == 0) throw DegeneratePolytope("mc_moments: no sample landed inside the polytope");

    McEstimate e;
    e.samples = samples;
    e.accepted = hits;
    const double N = static_cast<double>(samples);
    const double phat = static_cast<double>(hits) / N;
    e.volume = box * phat;
    e.volume_stderr = box * std::sqrt(phat * (1 - phat) / N);
    for (std::size_t j = 0; j < n; ++j) {
        // Per-sample value g = box * y_j * [inside]; its mean estimates the moment.
        const double mean_g = box * sum[j] / N;
        const double mean_g2 = box * box * sum_sq[j] / N;
        e.first_moments.push_back(mean_g);
        e.first_moments_stderr.push_back(std::sqrt(std::max(0.0, mean_g2 - mean_g * mean_g) / N));
        const double h = static_cast<double>(hits);
        const double mean_y = sum[j] / h;
        const double var_y = std::max(0.0, sum_sq[j] / h - mean_y * mean_y);
        e.barycentre.push_back(mean_y);
        e.barycentre_stderr.push_back(std::sqrt(var_y / h));
    }
    return e;
}

} // namespace toric
