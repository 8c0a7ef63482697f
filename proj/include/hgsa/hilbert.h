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

// Sparse state-vector algebra for a register of photons and cavity atoms.
//
// Every photon carries three degrees of freedom (polarization, time slot,
// path); every atom is a qubit. A basis ket is packed into a 64-bit key with a
// fixed field per subsystem, so states over disjoint subsystem sets can be
// tensored by OR-ing keys. A state only "owns" the fields in its carrier set;
// fields outside it are always zero.

#ifndef HGSA_HILBERT_H
#define HGSA_HILBERT_H

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgsa/errors.h"

namespace hgsa {

using Amplitude = std::complex<double>;
using BasisKey = uint64_t;

inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;

inline constexpr int kMaxPhotons = 6;
inline constexpr int kMaxTimeSlots = 4;
inline constexpr int kMaxPaths = 2;
inline constexpr int kMaxAtoms = 6;

enum class Dof : uint8_t { Polarization, TimeSlot, Path, Atom };

/// Structured subsystem identifier: a photon degree of freedom or an atom.
/// Indices are 0-based; text forms are 1-based ("p1.pol", "a2").
struct Subsystem {
    Dof dof;
    int index;

    static constexpr Subsystem pol(int photon) {
        return {Dof::Polarization, photon};
    }
    static constexpr Subsystem slot(int photon) {
        return {Dof::TimeSlot, photon};
    }
    static constexpr Subsystem path(int photon) {
        return {Dof::Path, photon};
    }
    static constexpr Subsystem atom(int atom) {
        return {Dof::Atom, atom};
    }

    bool is_photonic() const {
        return dof != Dof::Atom;
    }
    auto operator<=>(const Subsystem &) const = default;
    std::string str() const;
};

enum class Pol : uint8_t { H = 0, V = 1 };

inline Pol flip(Pol p) {
    return p == Pol::H ? Pol::V : Pol::H;
}

struct ModeSpec {
    int photons = 1;
    int time_slots = 4;
    int paths = 2;
    int atoms = 0;

    /// Throws ArgumentError outside N in [1,6], T in [2,4], P in [1,2], M in [0,6].
    void validate() const;
    /// (2*T*P)^N * 2^M.
    uint64_t dimension() const;
    /// Number of levels of one subsystem.
    int levels(Subsystem s) const;
    bool has(Subsystem s) const;
    /// Bit mask of the key field holding subsystem s.
    BasisKey field_mask(Subsystem s) const;
    int field_shift(Subsystem s) const;

    BasisKey photonic_mask() const;
    BasisKey atom_mask() const;
    BasisKey full_mask() const;

    bool operator==(const ModeSpec &) const = default;
    std::string str() const;
};

/// Reads one subsystem's level out of a packed key.
inline int field_value(const ModeSpec &spec, BasisKey key, Subsystem s) {
    return static_cast<int>((key & spec.field_mask(s)) >> spec.field_shift(s));
}

/// Returns key with subsystem s set to level v.
inline BasisKey with_field(const ModeSpec &spec, BasisKey key, Subsystem s, int v) {
    return (key & ~spec.field_mask(s)) | (static_cast<BasisKey>(v) << spec.field_shift(s));
}

/// Mask of the key fields of several subsystems.
BasisKey carrier_mask(const ModeSpec &spec, std::span<const Subsystem> subsystems);

struct PhotonMode {
    Pol pol = Pol::H;
    int slot = 0;
    int path = 0;
    bool operator==(const PhotonMode &) const = default;
};

/// One computational basis ket of the whole register.
struct BasisState {
    std::vector<PhotonMode> photons;
    std::vector<int> atoms;

    bool operator==(const BasisState &) const = default;
};

BasisKey encode(const ModeSpec &spec, const BasisState &state);
BasisState decode(const ModeSpec &spec, BasisKey key);

/// Human-readable ket restricted to the given carriers, e.g. "H0x1 V1x2 | a:+0".
std::string format_key(const ModeSpec &spec, BasisKey carriers, BasisKey key);

/// Immutable normalized sparse state over a subset of the register.
class StateVector {
   public:
    using Entry = std::pair<BasisKey, Amplitude>;

    /// Merges duplicate keys, prunes tiny amplitudes, and requires unit norm
    /// within kNormTolerance. Keys must not set bits outside `carriers`.
    StateVector(ModeSpec spec, BasisKey carriers, std::vector<Entry> entries);

    /// As the constructor, but rescales to unit norm first.
    static StateVector normalized(ModeSpec spec, BasisKey carriers, std::vector<Entry> entries);
    static StateVector basis(ModeSpec spec, BasisKey carriers, BasisKey key);
    /// The empty product: no carriers, single amplitude 1.
    static StateVector unit(ModeSpec spec);

    const ModeSpec &spec() const {
        return spec_;
    }
    BasisKey carriers() const {
        return carriers_;
    }
    bool carries(Subsystem s) const {
        return spec_.has(s) && (carriers_ & spec_.field_mask(s)) == spec_.field_mask(s);
    }
    std::span<const Entry> entries() const {
        return entries_;
    }
    size_t size() const {
        return entries_.size();
    }
    Amplitude amplitude(BasisKey key) const;
    Amplitude amplitude(const BasisState &state) const {
        return amplitude(encode(spec_, state));
    }
    double norm_squared() const;

    /// Multiplies every amplitude by a unit-modulus phase.
    StateVector with_global_phase(Amplitude phase) const;

    std::string str() const;

   private:
    ModeSpec spec_;
    BasisKey carriers_;
    std::vector<Entry> entries_;  // sorted by key, no duplicates
};

/// Local operator on a few bound subsystems, stored as a dense matrix over
/// their joint levels (first binding most significant). Some input columns
/// may be marked as outside the operator's domain; touching them with
/// nonzero amplitude raises the chosen error instead of applying the
/// unitary completion.
class LocalUnitary {
   public:
    enum class Blocked : uint8_t { LatticeOverflow, Precondition };

    LocalUnitary() = default;
    LocalUnitary(
        const ModeSpec &spec,
        std::vector<Subsystem> bindings,
        std::vector<Amplitude> row_major,
        std::vector<bool> blocked_columns = {},
        Blocked blocked_error = Blocked::Precondition,
        bool requires_product_input = false);

    const ModeSpec &spec() const {
        return spec_;
    }
    const std::vector<Subsystem> &bindings() const {
        return bindings_;
    }
    int dim() const {
        return dim_;
    }
    Amplitude at(int row, int col) const {
        return matrix_[static_cast<size_t>(row) * dim_ + col];
    }
    bool blocked(int col) const {
        return !blocked_.empty() && blocked_[col];
    }
    Blocked blocked_error() const {
        return blocked_error_;
    }
    bool requires_product_input() const {
        return requires_product_;
    }
    /// max |(U^dagger U - I)_{ij}|.
    double unitarity_defect() const;
    /// Conjugate transpose; its domain is the image of this operator's domain.
    LocalUnitary adjoint() const;

    int local_index(BasisKey key) const;
    BasisKey with_local(BasisKey key, int local) const;

    struct Term {
        int row;
        Amplitude value;
    };
    std::span<const Term> column(int col) const {
        return columns_[col];
    }

   private:
    ModeSpec spec_;
    std::vector<Subsystem> bindings_;
    std::vector<int> levels_;
    int dim_ = 0;
    std::vector<Amplitude> matrix_;
    std::vector<bool> blocked_;
    Blocked blocked_error_ = Blocked::Precondition;
    bool requires_product_ = false;
    std::vector<std::vector<Term>> columns_;
};

/// Tensor product of states on disjoint carriers of the same spec.
StateVector tensor(const StateVector &a, const StateVector &b);

StateVector apply_op(const StateVector &state, const LocalUnitary &op);

/// <a|b>.
Amplitude inner_product(const StateVector &a, const StateVector &b);
/// |<a|b>|^2, insensitive to global phase.
double fidelity(const StateVector &a, const StateVector &b);

enum class MeasureBasis : uint8_t { Computational, PlusMinus };

struct Outcome {
    std::vector<Subsystem> subsystems;
    MeasureBasis basis = MeasureBasis::Computational;
    /// Level per subsystem; in the PlusMinus basis 0 is "+" and 1 is "-".
    std::vector<int> values;
    double probability = 0;

    std::string str() const;
};

struct MeasureResult {
    Outcome outcome;
    StateVector state;
};

/// Projective measurement with a Born-rule draw from a generator seeded by
/// `rng_seed`. The returned state keeps the measured subsystems, collapsed.
MeasureResult measure(
    const StateVector &state, std::span<const Subsystem> subsystems, MeasureBasis basis, uint64_t rng_seed);

/// Exact Born distribution over the levels of the given subsystems
/// (computational basis), keyed by level vector.
std::map<std::vector<int>, double> marginal(const StateVector &state, std::span<const Subsystem> subsystems);

/// Removes subsystems that are in a definite computational level; throws
/// PreconditionError if any of them is still in superposition.
StateVector discard(const StateVector &state, std::span<const Subsystem> subsystems);

/// Returns the same amplitudes under a different spec with identical field
/// layout for the carried subsystems (e.g. to add atom capacity).
StateVector respec(const StateVector &state, const ModeSpec &spec);

/// SplitMix64-derived seed for an independent stream.
uint64_t derive_seed(uint64_t seed, uint64_t stream);
uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t substream);

/// Uniform double in [0, 1) from the top 53 bits of one draw. The engine's
/// output sequence is fixed by the standard, so draws replay exactly on any
/// toolchain (unlike std::uniform_real_distribution).
double uniform01(std::mt19937_64 &rng);

}  // namespace hgsa

#endif
