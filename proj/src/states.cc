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

#include "hgsa/states.h"

#include <cmath>

namespace hgsa {

std::string format_bits(const BitString &bits) {
    std::string out;
    for (auto b : bits) {
        out += b ? '1' : '0';
    }
    return out;
}

BitString parse_bits(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty bit string");
    }
    BitString out;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError(std::string("unexpected character '") + c + "' in bit string");
        }
        out.push_back(c == '1');
    }
    return out;
}

BitString complement(const BitString &bits) {
    BitString out(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        out[i] = 1 - bits[i];
    }
    return out;
}

BitString xor_bits(const BitString &a, const BitString &b) {
    if (a.size() != b.size()) {
        throw ArgumentError("xor of bit strings with different lengths");
    }
    BitString out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        out[i] = a[i] ^ b[i];
    }
    return out;
}

int popcount(const BitString &bits) {
    int n = 0;
    for (auto b : bits) {
        n += b;
    }
    return n;
}

std::string GhzLabel::str() const {
    return std::string(1, sign_char(sign)) + format_bits(bits);
}

std::string HyperLabel::str() const {
    return "P" + pol.str() + ",T" + time.str();
}

CanonicalLabel canonicalize(Sign sign, const BitString &bits, GhzDof dof) {
    if (bits.empty()) {
        throw ArgumentError("canonicalize: empty bit string");
    }
    if (bits[0] == 0) {
        return {GhzLabel{dof, sign, bits}, 1};
    }
    // (|~b> + s|b>) = s (|b> + s|~b>) for s = +-1.
    return {GhzLabel{dof, sign, complement(bits)}, sign == Sign::Plus ? 1 : -1};
}

ModeSpec protocol_spec(int photons) {
    ModeSpec spec{photons, 4, 2, photons};
    spec.validate();
    return spec;
}

StateVector make_ghz(const GhzLabel &label, const ModeSpec &spec) {
    spec.validate();
    if (label.size() != spec.photons) {
        throw ArgumentError(
            "GHZ label " + label.str() + " has " + std::to_string(label.size()) + " bits for " +
            std::to_string(spec.photons) + " photons");
    }
    std::vector<Subsystem> carriers;
    for (int k = 0; k < spec.photons; k++) {
        carriers.push_back(label.dof == GhzDof::Polarization ? Subsystem::pol(k) : Subsystem::slot(k));
    }
    BasisKey mask = carrier_mask(spec, carriers);
    BasisKey a = 0, b = 0;
    for (int k = 0; k < spec.photons; k++) {
        a = with_field(spec, a, carriers[k], label.bits[k]);
        b = with_field(spec, b, carriers[k], 1 - label.bits[k]);
    }
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector(spec, mask, {{a, r}, {b, label.sign == Sign::Plus ? r : -r}});
}

StateVector make_hyper(const HyperLabel &label, const ModeSpec &spec) {
    if (label.pol.dof != GhzDof::Polarization || label.time.dof != GhzDof::TimeBin) {
        throw ArgumentError("hyper label factors must be (polarization, time-bin)");
    }
    if (label.pol.size() != label.time.size()) {
        throw ArgumentError("hyper label factors have different lengths");
    }
    std::vector<Subsystem> paths;
    for (int k = 0; k < spec.photons; k++) {
        paths.push_back(Subsystem::path(k));
    }
    auto rails = StateVector::basis(spec, carrier_mask(spec, paths), 0);
    return tensor(tensor(make_ghz(label.pol, spec), make_ghz(label.time, spec)), rails);
}

std::vector<GhzLabel> enumerate_ghz(int photons, GhzDof dof) {
    if (photons < 1 || photons > kMaxPhotons) {
        throw ArgumentError("photon count " + std::to_string(photons) + " outside [1, 6]");
    }
    std::vector<GhzLabel> out;
    const uint32_t half = 1u << (photons - 1);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (uint32_t v = 0; v < half; v++) {
            BitString bits(photons);
            for (int k = 0; k < photons; k++) {
                bits[k] = (v >> (photons - 1 - k)) & 1;
            }
            out.push_back(GhzLabel{dof, s, std::move(bits)});
        }
    }
    return out;
}

std::vector<HyperLabel> enumerate_labels(int photons) {
    if (photons < 2 || photons > kMaxPhotons) {
        throw ArgumentError("photon count " + std::to_string(photons) + " outside [2, 6]");
    }
    auto pols = enumerate_ghz(photons, GhzDof::Polarization);
    auto times = enumerate_ghz(photons, GhzDof::TimeBin);
    std::vector<HyperLabel> out;
    out.reserve(pols.size() * times.size());
    for (const auto &p : pols) {
        for (const auto &t : times) {
            out.push_back({p, t});
        }
    }
    return out;
}

namespace {

size_t ghz_index(const GhzLabel &label) {
    size_t v = 0;
    for (int k = 1; k < label.size(); k++) {
        v = v * 2 + label.bits[k];
    }
    size_t half = size_t{1} << (label.size() - 1);
    return (label.sign == Sign::Plus ? 0 : half) + v;
}

GhzLabel parse_factor(std::string_view text, char tag, GhzDof dof, int column) {
    if (text.size() < 2 || text[0] != tag) {
        throw ParseError(std::string("expected '") + tag + "<sign><bits>'", 1, column);
    }
    Sign sign;
    if (text[1] == '+') {
        sign = Sign::Plus;
    } else if (text[1] == '-') {
        sign = Sign::Minus;
    } else {
        throw ParseError("expected sign '+' or '-'", 1, column + 1);
    }
    BitString bits;
    try {
        bits = parse_bits(text.substr(2));
    } catch (const ParseError &e) {
        throw ParseError(e.what(), 1, column + 2);
    }
    if (bits[0] != 0) {
        throw ParseError("leading bit must be 0 (write the complementary bit string)", 1, column + 2);
    }
    return GhzLabel{dof, sign, std::move(bits)};
}

}  // namespace

size_t label_index(const HyperLabel &label) {
    size_t per = size_t{1} << label.time.size();
    return ghz_index(label.pol) * per + ghz_index(label.time);
}

HyperLabel parse_hyper_label(std::string_view text, std::optional<int> photons) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError("state label needs both factors: P<sign><bits>,T<sign><bits>", 1, 1);
    }
    HyperLabel out{
        parse_factor(text.substr(0, comma), 'P', GhzDof::Polarization, 1),
        parse_factor(text.substr(comma + 1), 'T', GhzDof::TimeBin, static_cast<int>(comma) + 2),
    };
    if (out.pol.size() != out.time.size()) {
        throw ParseError("polarization and time-bin factors have different lengths", 1, 1);
    }
    if (photons && out.pol.size() != *photons) {
        throw ParseError(
            "label has " + std::to_string(out.pol.size()) + " bits but --photons is " + std::to_string(*photons), 1, 1);
    }
    if (out.pol.size() < 2 || out.pol.size() > kMaxPhotons) {
        throw ParseError("label length outside [2, 6]", 1, 1);
    }
    return out;
}

}  // namespace hgsa
