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

// Ideal optical and atom-cavity elements as bound local unitaries.

#ifndef HGSA_COMPONENTS_H
#define HGSA_COMPONENTS_H

#include <string>
#include <variant>
#include <vector>

#include "hgsa/hilbert.h"

namespace hgsa {

struct PhotonId {
    int value;
};

struct AtomId {
    int value;
};

/// Ordered pair of 0-based path indices (x1 = 0, x2 = 1).
struct PathPair {
    int first = 0;
    int second = 1;
    bool operator==(const PathPair &) const = default;
};

enum class ElementKind : uint8_t {
    Cpf,
    HwpHadamard,
    HwpFlip,
    Pockels,
    PbsSplit,
    Delay,
    BsPath,
    T2p,
    PrepPlus,
};

std::string kind_name(ElementKind kind);

struct DelayCondition {
    enum class Kind : uint8_t { PolH, PolV, Path };
    Kind kind = Kind::PolV;
    int path = 0;  // for Kind::Path
    bool operator==(const DelayCondition &) const = default;
};

struct NoParams {
    bool operator==(const NoParams &) const = default;
};
struct PockelsParams {
    int trigger_slot;
    bool operator==(const PockelsParams &) const = default;
};
struct PbsParams {
    PathPair in_paths;
    PathPair out_paths;
    bool operator==(const PbsParams &) const = default;
};
struct DelayParams {
    DelayCondition condition;
    int slots;
    bool operator==(const DelayParams &) const = default;
};
struct BsParams {
    PathPair paths;
    bool operator==(const BsParams &) const = default;
};
struct T2pParams {
    PathPair out_paths;
    bool operator==(const T2pParams &) const = default;
};

using ElementParams = std::variant<NoParams, PockelsParams, PbsParams, DelayParams, BsParams, T2pParams>;

/// A constructed element: what it is, where it acts, and its local unitary.
struct ElementOp {
    ElementKind kind;
    int photon = -1;  // 0-based, -1 if none
    int atom = -1;    // 0-based, -1 if none
    ElementParams params;
    LocalUnitary op;

    /// The inverse element (same kind and bindings).
    ElementOp inverse() const;
};

StateVector apply_op(const StateVector &state, const ElementOp &element);

/// e^{i pi |1><1| (x) |H><H|}: sign flip on (atom = 1, pol = H). `photon` must
/// be a polarization subsystem.
ElementOp make_cpf(const ModeSpec &spec, AtomId atom, Subsystem photon);

enum class HwpMode : uint8_t { Hadamard, Flip };

ElementOp make_hwp(const ModeSpec &spec, PhotonId photon, HwpMode mode);

/// Polarization flip only on components in `trigger_slot`.
ElementOp make_pockels(const ModeSpec &spec, PhotonId photon, int trigger_slot);

/// H transmits (in.first -> out.first, in.second -> out.second); V reflects
/// (in.first -> out.second, in.second -> out.first).
ElementOp make_pbs(const ModeSpec &spec, PhotonId photon, PathPair in_paths, PathPair out_paths);

/// Adds `slots` to the time slot of components matching `condition`. Pushing
/// amplitude past the last slot raises LatticeOverflowError at apply time.
ElementOp make_delay(const ModeSpec &spec, PhotonId photon, DelayCondition condition, int slots);

/// Balanced beam splitter on two paths: |a> -> (|a>+|b>)/sqrt2, |b> -> (|a>-|b>)/sqrt2.
ElementOp make_bs(const ModeSpec &spec, PhotonId photon, PathPair paths);

/// Time-to-path transduction for a single-rail photon on x1:
///   |p, S, x1> -> |p, slot 1, out.first>
///   |p, L, x1> -> |flip(p), slot 1, out.second>
/// Any other input component raises PreconditionError.
ElementOp make_t2p(const ModeSpec &spec, PhotonId photon, PathPair out_paths);

/// Hadamard on the atom; turns a fresh |0> into |+>. Refuses atoms entangled
/// with the rest of the register.
ElementOp atom_prepare_plus(const ModeSpec &spec, AtomId atom);

/// Kind and parameters of an element without its photon binding; used for
/// per-photon templates (search alphabets, TESA configurations).
struct ElementTemplate {
    ElementKind kind;
    ElementParams params;
    bool operator==(const ElementTemplate &) const = default;
};

/// Binds a photon-level template to one photon. Cpf and PrepPlus need an atom
/// and are rejected with ArgumentError.
ElementOp instantiate(const ModeSpec &spec, const ElementTemplate &tmpl, PhotonId photon);

/// The time slot every T2P output lands in.
inline constexpr int kT2pArrivalSlot = 1;

}  // namespace hgsa

#endif
