// Copyright 2026 xcorr contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * @file
 * Streaming mean / variance with exact pairwise merging.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace xcorr {

class RunningStats {
  public:
    void push(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    /// Chan et al. pairwise combination; merging into an empty accumulator
    /// copies the other one bit for bit.
    void merge(const RunningStats &other) {
        if (other.n_ == 0) {
            return;
        }
        if (n_ == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(other.n_);
        const double n = na + nb;
        const double delta = other.mean_ - mean_;
        mean_ += delta * nb / n;
        m2_ += other.m2_ + delta * delta * na * nb / n;
        n_ += other.n_;
    }

    [[nodiscard]] std::uint64_t count() const { return n_; }
    [[nodiscard]] double mean() const {
        return n_ == 0 ? std::numeric_limits<double>::quiet_NaN() : mean_;
    }
    /// Unbiased sample variance; NaN below two samples.
    [[nodiscard]] double variance() const {
        return n_ < 2 ? std::numeric_limits<double>::quiet_NaN()
                      : m2_ / static_cast<double>(n_ - 1);
    }
    [[nodiscard]] double stderr_mean() const {
        return n_ < 2 ? std::numeric_limits<double>::quiet_NaN()
                      : std::sqrt(variance() / static_cast<double>(n_));
    }

  private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

enum class BoundKind { Upper, Lower, Conditional };

struct BoundEstimate {
    BoundKind kind;
    double mean;
    double stderr_mean;
    std::uint64_t count;

    static BoundEstimate from(BoundKind kind, const RunningStats &s) {
        return {kind, s.mean(), s.stderr_mean(), s.count()};
    }
};

} // namespace xcorr
