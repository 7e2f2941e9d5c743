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
 * Exact pure-state simulator on up to 24 qubits.
 *
 * Amplitude layout: site 0 is the least significant bit of the basis index.
 * A two-qubit gate on `site` acts on the pair (site, site + 1) with local
 * index bit_site + 2 * bit_{site+1}. Measurement outcome +1 is |0>, -1 is |1>.
 */
#pragma once

#include <span>
#include <vector>

#include "xcorr/density_matrix.hpp"
#include "xcorr/rng.hpp"

namespace xcorr {

inline constexpr int kMaxStatevectorQubits = 24;
inline constexpr double kBornCorruptionFloor = 1e-14;

struct MeasurementEvent {
    int step;
    int site;
    int outcome;
    double probability;
};

struct MeasurementRecord {
    std::vector<MeasurementEvent> events;
    double log_prob = 0.0;

    void append(const MeasurementEvent &e);
};

struct BornOutcome {
    int outcome;
    double probability;
};

class Statevector {
  public:
    /// |0...0> on n qubits; 2 <= n <= 24.
    static Statevector product_state(int n_qubits);
    /// Takes amplitudes as given; throws unless the norm is 1 within 1e-10.
    Statevector(int n_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] int n_qubits() const { return n_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    [[nodiscard]] double norm() const;

    /// Throws ConfigError when ||U^dagger U - I|| > 1e-8 or the site is invalid.
    void apply_two_qubit_gate(int site, const Matrix &u);
    void apply_single_qubit_gate(int site, const Matrix &u);

    /// Probability that measuring Z on `site` yields `outcome`.
    [[nodiscard]] double outcome_probability(int site, int outcome) const;

    /// Born-rule sample by inverse CDF on u in [0, 1): +1 when u < P(+1).
    BornOutcome measure_born(int site, double u);
    BornOutcome measure_born(int site, RandomStream &stream);
    BornOutcome measure_born(int site, RandomStream &stream, MeasurementRecord &record,
                             int step);

    /// Projects onto the given outcome and renormalises; returns its probability.
    double project(int site, int outcome);

    /// Reduced state of one or two distinct sites, little-endian in the
    /// order given.
    [[nodiscard]] DensityMatrix reduced_density_matrix(std::span<const int> sites) const;

  private:
    Statevector() = default;
    void check_site(int site) const;

    int n_ = 0;
    std::vector<cplx> amps_;
};

} // namespace xcorr
