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

// GHZ and hyperentangled-GHZ labels and their states.
//
// A GHZ label (sign, bits) names (|bits> + sign |~bits>)/sqrt2 in one degree of
// freedom. Complementary bit strings name the same state up to a global sign,
// so labels are kept canonical with the first bit 0.

#ifndef HGSA_STATES_H
#define HGSA_STATES_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgsa/hilbert.h"

namespace hgsa {

enum class Sign : uint8_t { Plus, Minus };

inline char sign_char(Sign s) {
    return s == Sign::Plus ? '+' : '-';
}
inline Sign opposite(Sign s) {
    return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}

/// One bit per photon; element 0 is photon 1 (the leftmost character).
using BitString = std::vector<uint8_t>;

std::string format_bits(const BitString &bits);
/// Throws ParseError on characters other than 0/1 or an empty string.
BitString parse_bits(std::string_view text);
BitString complement(const BitString &bits);
BitString xor_bits(const BitString &a, const BitString &b);
int popcount(const BitString &bits);

enum class GhzDof : uint8_t { Polarization, TimeBin };

struct GhzLabel {
    GhzDof dof = GhzDof::Polarization;
    Sign sign = Sign::Plus;
    BitString bits;

    int size() const {
        return static_cast<int>(bits.size());
    }
    bool is_canonical() const {
        return !bits.empty() && bits[0] == 0;
    }
    /// "+001"
    std::string str() const;
    auto operator<=>(const GhzLabel &) const = default;
};

struct HyperLabel {
    GhzLabel pol;
    GhzLabel time;

    int size() const {
        return pol.size();
    }
    /// "P+001,T-010"
    std::string str() const;
    auto operator<=>(const HyperLabel &) const = default;
};

struct CanonicalLabel {
    GhzLabel label;
    int phase;  // +1 or -1: state(sign, bits) == phase * state(label)
};

/// Complements a leading-1 bit string; the "-" family picks up a -1 phase.
CanonicalLabel canonicalize(Sign sign, const BitString &bits, GhzDof dof = GhzDof::Polarization);

/// The protocol register for N photons: T = 4 slots, P = 2 paths, N atoms.
ModeSpec protocol_spec(int photons);

/// (|b> + s|~b>)/sqrt2 over the label's degree of freedom only: the N
/// polarization carriers, or the N time-slot carriers with S = 0, L = 1.
StateVector make_ghz(const GhzLabel &label, const ModeSpec &spec);

/// Polarization GHZ (x) time-bin GHZ with every photon on path x1. Carries all
/// photonic subsystems, no atoms.
StateVector make_hyper(const HyperLabel &label, const ModeSpec &spec);

/// All 4^N canonical labels: polarization major, time minor; within a DOF "+"
/// before "-", then bits ascending.
std::vector<HyperLabel> enumerate_labels(int photons);
/// All 2^N canonical labels of one DOF in the same order.
std::vector<GhzLabel> enumerate_ghz(int photons, GhzDof dof);
/// Position of a label in enumerate_labels order.
size_t label_index(const HyperLabel &label);

/// Parses `P<sign><bits>,T<sign><bits>`. Leading bits must be 0 and both
/// factors must have the same length (equal to `photons` when given).
HyperLabel parse_hyper_label(std::string_view text, std::optional<int> photons = std::nullopt);

}  // namespace hgsa

#endif
