// Copyright 2026 The ame-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ame/factor6.hpp"
#include "ame/matrix.hpp"

namespace ame {

/// Seeded generator used by every random mode: std::mt19937_64 seeded with
/// splitmix64(seed, stream), integers drawn by rejection sampling on the raw
/// 64-bit output. Results do not depend on the standard library's distributions.
class Rng {
   public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(splitmix64(seed ^ splitmix64(stream + 1))) {
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t next() {
        return engine_();
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

   private:
    std::mt19937_64 engine_;
};

enum class SamplingMode { exhaustive, random };

struct CensusCounts {
    std::uint64_t total = 0;
    std::uint64_t superregular = 0;
    std::uint64_t forward = 0;
    std::uint64_t backward = 0;
    std::uint64_t both = 0;

    CensusCounts &operator+=(const CensusCounts &o) {
        total += o.total;
        superregular += o.superregular;
        forward += o.forward;
        backward += o.backward;
        both += o.both;
        return *this;
    }
    friend CensusCounts operator+(CensusCounts a, const CensusCounts &b) {
        return a += b;
    }
    friend bool operator==(const CensusCounts &, const CensusCounts &) = default;
};

struct CensusConfig {
    Field field;
    std::size_t size = 3;
    SamplingMode mode = SamplingMode::exhaustive;
    std::uint64_t samples = 0;  // random mode
    std::uint64_t seed = 0;     // random mode
    bool factorizability = false;  // count forward/backward conditions (size 3 only)
    unsigned threads = 1;
    std::optional<std::filesystem::path> checkpoint = std::nullopt;
    bool column_major = false;  // alternative enumeration order, same totals
    std::uint64_t chunk = 1u << 20;
};

struct CensusResult {
    Field field;
    std::size_t size = 0;
    SamplingMode mode = SamplingMode::exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    bool factorizability = false;
    CensusCounts counts;
    double seconds = 0;

    double superregular_fraction() const {
        return counts.total ? static_cast<double>(counts.superregular) / static_cast<double>(counts.total) : 0.0;
    }
    double forward_fraction_of_superregular() const {
        return counts.superregular ? static_cast<double>(counts.forward) / static_cast<double>(counts.superregular)
                                   : 0.0;
    }
};

struct SearchSpaceTooLargeError : std::length_error {
    using std::length_error::length_error;
};

inline constexpr std::uint64_t exhaustive_limit = 100'000'000;

namespace detail {

inline CensusCounts classify(const Field &f, std::span<const Code> block, std::size_t n, bool factorizability) {
    CensusCounts c;
    c.total = 1;
    if (first_vanishing_minor(f, block, n)) {
        return c;
    }
    c.superregular = 1;
    if (factorizability) {
        bool fw = forward_condition_codes(f, block) != 0;
        bool bw = backward_condition_codes(f, block) != 0;
        c.forward = fw;
        c.backward = bw;
        c.both = fw && bw;
    }
    return c;
}

/// Counters [begin, end) of the row-major (or column-major) mixed-radix enumeration.
inline CensusCounts scan_range(const CensusConfig &cfg, std::uint64_t begin, std::uint64_t end) {
    const Field &f = cfg.field;
    std::size_t n = cfg.size, cells = n * n;
    std::uint32_t q = f.order();
    std::vector<Code> digits(cells), block(cells);
    std::uint64_t rest = begin;
    for (std::size_t i = cells; i-- > 0;) {
        digits[i] = static_cast<Code>(rest % q);
        rest /= q;
    }
    CensusCounts out;
    for (std::uint64_t counter = begin; counter < end; ++counter) {
        for (std::size_t i = 0; i < cells; ++i) {
            std::size_t at = cfg.column_major ? (i % n) * n + i / n : i;
            block[at] = digits[i];
        }
        out += classify(f, block, n, cfg.factorizability);
        for (std::size_t i = cells; i-- > 0;) {
            if (++digits[i] < q) {
                break;
            }
            digits[i] = 0;
        }
    }
    return out;
}

inline constexpr std::uint64_t random_block = 4096;

/// Random samples [begin, end); sample s belongs to block s / random_block,
/// which owns its own generator stream.
inline CensusCounts sample_range(const CensusConfig &cfg, std::uint64_t begin, std::uint64_t end) {
    const Field &f = cfg.field;
    std::size_t n = cfg.size, cells = n * n;
    std::vector<Code> block(cells);
    CensusCounts out;
    std::uint64_t s = begin;
    while (s < end) {
        std::uint64_t b = s / random_block;
        Rng rng(cfg.seed, b);
        std::uint64_t stop = std::min(end, (b + 1) * random_block);
        for (std::uint64_t skip = b * random_block; skip < s; ++skip) {
            for (std::size_t i = 0; i < cells; ++i) {
                rng.below(f.order());
            }
        }
        for (; s < stop; ++s) {
            for (auto &v : block) {
                v = static_cast<Code>(rng.below(f.order()));
            }
            out += classify(f, block, n, cfg.factorizability);
        }
    }
    return out;
}

inline CensusCounts run_parallel(const CensusConfig &cfg, std::uint64_t begin, std::uint64_t end) {
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        return cfg.mode == SamplingMode::exhaustive ? scan_range(cfg, lo, hi) : sample_range(cfg, lo, hi);
    };
    unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1 || end - begin < threads) {
        return work(begin, end);
    }
    std::vector<CensusCounts> partial(threads);
    std::vector<std::thread> pool;
    std::uint64_t span = (end - begin + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::uint64_t lo = begin + t * span, hi = std::min(end, lo + span);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, t, lo, hi] { partial[t] = work(lo, hi); });
    }
    for (auto &th : pool) {
        th.join();
    }
    CensusCounts sum;
    for (const auto &p : partial) {
        sum += p;
    }
    return sum;
}

inline std::string checkpoint_key(const CensusConfig &cfg) {
    std::ostringstream out;
    out << cfg.field.header() << " | size " << cfg.size << " | mode "
        << (cfg.mode == SamplingMode::exhaustive ? "exhaustive" : "random") << " | samples " << cfg.samples
        << " | seed " << cfg.seed << " | factorizability " << cfg.factorizability << " | order "
        << (cfg.column_major ? "column-major" : "row-major");
    return out.str();
}

struct Checkpoint {
    std::uint64_t completed = 0;
    CensusCounts counts;
};

inline std::optional<Checkpoint> read_checkpoint(const std::filesystem::path &path, const CensusConfig &cfg) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    std::string magic, key;
    std::getline(in, magic);
    std::getline(in, key);
    if (magic != "ame-census-checkpoint 1") {
        throw std::runtime_error("unrecognized checkpoint file " + path.string());
    }
    if (key != checkpoint_key(cfg)) {
        throw std::runtime_error("checkpoint " + path.string() + " belongs to a different census: " + key);
    }
    Checkpoint cp;
    std::string label;
    in >> label >> cp.completed >> label >> cp.counts.total >> label >> cp.counts.superregular >> label >>
        cp.counts.forward >> label >> cp.counts.backward >> label >> cp.counts.both;
    if (!in) {
        throw std::runtime_error("truncated checkpoint file " + path.string());
    }
    return cp;
}

inline void write_checkpoint(const std::filesystem::path &path, const CensusConfig &cfg, const Checkpoint &cp) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "ame-census-checkpoint 1\n"
            << checkpoint_key(cfg) << "\n"
            << "completed " << cp.completed << "\n"
            << "total " << cp.counts.total << "\n"
            << "superregular " << cp.counts.superregular << "\n"
            << "forward " << cp.counts.forward << "\n"
            << "backward " << cp.counts.backward << "\n"
            << "both " << cp.counts.both << "\n";
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Size of the candidate space q^(size^2), saturating at UINT64_MAX.
inline std::uint64_t candidate_space(const Field &f, std::size_t size) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < size * size; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / f.order()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        n *= f.order();
    }
    return n;
}

/// Counts superregular matrices (and, optionally for 3×3, those with nonzero
/// forward/backward conditions). Work proceeds in chunks; after each chunk the
/// checkpoint file, if configured, records the completed counter value and the
/// partial counts, and an existing matching checkpoint is resumed.
inline CensusResult run_census(const CensusConfig &cfg) {
    if (cfg.size == 0) {
        throw DimensionError("census matrix size must be positive");
    }
    if (cfg.factorizability && cfg.size != 3) {
        throw DimensionError("factorizability census needs 3x3 matrices");
    }
    std::uint64_t end = 0;
    if (cfg.mode == SamplingMode::exhaustive) {
        end = candidate_space(cfg.field, cfg.size);
        if (end > exhaustive_limit) {
            throw SearchSpaceTooLargeError("exhaustive census of " + std::to_string(cfg.size) + "x" +
                                           std::to_string(cfg.size) + " matrices over " + cfg.field.name() +
                                           " exceeds 1e8 candidates; use random mode");
        }
    } else {
        end = cfg.samples;
    }
    auto start = std::chrono::steady_clock::now();
    detail::Checkpoint cp;
    if (cfg.checkpoint) {
        if (auto found = detail::read_checkpoint(*cfg.checkpoint, cfg)) {
            cp = *found;
        }
    }
    std::uint64_t chunk = std::max<std::uint64_t>(1, cfg.chunk);
    while (cp.completed < end) {
        std::uint64_t hi = std::min(end, cp.completed + chunk);
        cp.counts += detail::run_parallel(cfg, cp.completed, hi);
        cp.completed = hi;
        if (cfg.checkpoint) {
            detail::write_checkpoint(*cfg.checkpoint, cfg, cp);
        }
    }
    CensusResult result{cfg.field, cfg.size, cfg.mode, cfg.seed, cfg.samples, cfg.factorizability, cp.counts, 0.0};
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

inline CensusResult census_superregular(const Field &f, std::size_t size, SamplingMode mode,
                                        std::uint64_t samples = 0, std::uint64_t seed = 0, unsigned threads = 1) {
    CensusConfig cfg{f, size, mode, samples, seed, false, threads, std::nullopt, false};
    return run_census(cfg);
}

inline CensusResult census_factorizable(const Field &f, SamplingMode mode, std::uint64_t samples = 0,
                                        std::uint64_t seed = 0, unsigned threads = 1) {
    CensusConfig cfg{f, 3, mode, samples, seed, true, threads, std::nullopt, false};
    return run_census(cfg);
}

struct MinorEstimate {
    std::size_t size = 0;
    std::uint64_t samples = 0;
    std::uint64_t singular = 0;
    double empirical = 0;
    double closed_form = 0;
    double abs_difference = 0;
    double sigma = 0;  // binomial standard deviation of the empirical fraction

    bool within_sigmas(double k) const {
        return abs_difference <= k * sigma;
    }
};

/// 1 - Π_{i=1..c} (1 - q^-i).
inline double singular_probability(std::uint32_t q, std::size_t c) {
    double keep = 1.0;
    for (std::size_t i = 1; i <= c; ++i) {
        keep *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(i));
    }
    return 1.0 - keep;
}

inline MinorEstimate minor_singularity_estimate(const Field &f, std::size_t c, std::uint64_t samples,
                                                std::uint64_t seed) {
    if (samples < 1000) {
        throw std::invalid_argument("minor singularity estimate needs at least 1000 samples");
    }
    if (c == 0) {
        throw DimensionError("minor size must be positive");
    }
    MinorEstimate est;
    est.size = c;
    est.samples = samples;
    std::vector<Code> block(c * c);
    for (std::uint64_t s = 0; s < samples; s += detail::random_block) {
        Rng rng(seed, s / detail::random_block);
        for (std::uint64_t i = s; i < std::min(samples, s + detail::random_block); ++i) {
            for (auto &v : block) {
                v = static_cast<Code>(rng.below(f.order()));
            }
            std::vector<Code> work = block;
            est.singular += detail::det_in_place(f, work.data(), c) == 0;
        }
    }
    est.empirical = static_cast<double>(est.singular) / static_cast<double>(samples);
    est.closed_form = singular_probability(f.order(), c);
    est.abs_difference = std::abs(est.empirical - est.closed_form);
    est.sigma = std::sqrt(est.closed_form * (1.0 - est.closed_form) / static_cast<double>(samples));
    return est;
}

}  // namespace ame
