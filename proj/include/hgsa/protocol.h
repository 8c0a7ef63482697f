// Copyright 2026 The hgsa Authors
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

// The two-step analyzer.
//
// Step 1 reads the polarization GHZ state out of N cavity atoms without
// disturbing the photons: atom m < N collects the parity of photon 1 and
// photon m+1 through two CPF gates, and atom N collects the relative sign
// through a CPF with every photon sandwiched between Hadamard wave plates.
//
// Step 2 transduces each photon's time bin into a path (flipping the
// polarization of the late bin), mixes the two paths on a beam splitter, and
// detects (polarization, path) per photon. The polarization click pattern
// XOR the known polarization bits gives the time-bin bits; the parity of the
// path clicks gives the time-bin sign relative to the polarization sign.

#ifndef HGSA_PROTOCOL_H
#define HGSA_PROTOCOL_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hgsa/components.h"
#include "hgsa/states.h"

namespace hgsa {

struct MeasurementStep {
    std::vector<Subsystem> subsystems;
    MeasureBasis basis = MeasureBasis::Computational;
};

struct Circuit {
    ModeSpec spec;
    std::vector<ElementOp> elements;
    std::vector<MeasurementStep> plan;
    /// Reported detector path for each physical path (identity by default).
    std::array<int, 2> path_relabel{0, 1};

    /// Throws CompositionError if an element or measurement names a subsystem
    /// outside `spec`, or a subsystem is measured twice.
    void validate() const;
    bool relabels_paths() const {
        return path_relabel[0] != 0;
    }
};

/// Applies the circuit's elements in order (no measurements).
StateVector evolve(const StateVector &state, const Circuit &circuit);

/// Prepares all atoms in |+>, then parity CPFs (atom m with photon 1 and
/// photon m+1), then Hadamard / CPF with atom N / Hadamard on every photon.
/// Measurement plan: each atom in the +/- basis.
Circuit build_step1(int photons);

struct Step1Result {
    std::vector<Sign> atoms;
    std::vector<double> probabilities;  // Born weight of each atom's outcome
    StateVector post_state;             // photonic factor, atoms discarded
};

/// Allocates the circuit's atoms in |0>, runs the elements, measures the atoms
/// in plan order (stream i of `rng_seed` for step i), and discards them.
/// `state` must carry only photonic subsystems of circuit.spec.
Step1Result run_step1(const StateVector &state, const Circuit &circuit, uint64_t rng_seed);

/// Per photon: T2P onto `paths`, then a beam splitter on `paths`. Measurement
/// plan: (polarization, path) of each photon.
Circuit build_tesa(int photons, PathPair paths = {});

struct Click {
    Pol pol = Pol::H;
    int path = 0;  // 0-based reported path
    bool operator==(const Click &) const = default;
};

using DetectorPattern = std::vector<Click>;

/// "HHV 112"
std::string format_pattern(const DetectorPattern &pattern);

/// Runs the TESA elements and checks every photon sits in one time slot.
/// Throws TemporalDistinguishabilityError otherwise.
StateVector tesa_output(const StateVector &state, const Circuit &circuit);

/// tesa_output followed by the plan's detections (stream i for step i);
/// reported paths pass through circuit.path_relabel.
DetectorPattern run_tesa(const StateVector &state, const Circuit &circuit, uint64_t rng_seed);

struct MeasurementRecord {
    std::vector<Sign> atom_outcomes;
    DetectorPattern detectors;

    /// "atoms(+,-,-) clicks HHV 111"
    std::string str() const;
};

enum class Parity : uint8_t { Even, Odd };

struct GroupId {
    BitString letter;  // canonical polarization support
    Parity parity;

    std::string str() const;
    auto operator<=>(const GroupId &) const = default;
};

/// Detector group of a click pattern: polarization letter and path parity.
GroupId group_of(const DetectorPattern &pattern);

/// Inverts the analyzer: polarization bits from the parity atoms, polarization
/// sign from the phase atom (its reading flips meaning with the parity of N),
/// time bits from clicks XOR polarization bits, time sign from path parity.
HyperLabel classify(const MeasurementRecord &record, int photons);

/// Polarization sign the phase atom reports: "+" iff (atom N reads "-") XOR
/// (N even).
Sign phase_atom_sign(Sign atom_reading, int photons);

/// Deterministic part of a run: atom readings (all Born-certain for GHZ
/// inputs) and the group read off the full support of the detector
/// distribution. Empty group if the support is not a single group.
struct Signature {
    std::vector<Sign> atoms;
    std::optional<GroupId> group;
    auto operator<=>(const Signature &) const = default;
};

/// Group of a pre-detection TESA output, from its support.
std::optional<GroupId> support_group(const StateVector &tesa_state, const Circuit &tesa);

struct Analyzer {
    explicit Analyzer(int photons);

    int photons;
    Circuit step1;
    Circuit tesa;
};

struct AnalysisResult {
    HyperLabel input;
    MeasurementRecord record;
    std::vector<double> atom_probabilities;
    double photonic_fidelity;  // input photonic state vs post-step-1 state
    HyperLabel classified;

    bool correct() const {
        return classified == input;
    }
};

/// Full pipeline on the labeled state: step 1 on stream 0 of `seed`, TESA on
/// stream 1, then classification.
AnalysisResult analyze(const Analyzer &analyzer, const HyperLabel &label, uint64_t seed);

Signature signature(const Analyzer &analyzer, const HyperLabel &label);

}  // namespace hgsa

#endif
