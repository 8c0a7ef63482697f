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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hgsa/states.h"
#include "test_util.h"

namespace hgsa {
namespace {

using testing::max_diff;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

GhzLabel pol(Sign s, const char *bits) {
    return {GhzDof::Polarization, s, parse_bits(bits)};
}
GhzLabel tim(Sign s, const char *bits) {
    return {GhzDof::TimeBin, s, parse_bits(bits)};
}

TEST(Bits, FormatParseAndOps) {
    EXPECT_EQ(format_bits(parse_bits("0110")), "0110");
    EXPECT_THROW(parse_bits(""), ParseError);
    EXPECT_THROW(parse_bits("01a"), ParseError);
    EXPECT_EQ(complement(parse_bits("001")), parse_bits("110"));
    EXPECT_EQ(xor_bits(parse_bits("0011"), parse_bits("0101")), parse_bits("0110"));
    EXPECT_THROW(xor_bits(parse_bits("01"), parse_bits("011")), ArgumentError);
    EXPECT_EQ(popcount(parse_bits("10110")), 3);
}

TEST(Canonicalize, LeadingZeroUnchanged) {
    auto c = canonicalize(Sign::Plus, parse_bits("011"));
    EXPECT_EQ(c.label.bits, parse_bits("011"));
    EXPECT_EQ(c.label.sign, Sign::Plus);
    EXPECT_EQ(c.phase, 1);
    auto m = canonicalize(Sign::Minus, parse_bits("011"));
    EXPECT_EQ(m.label.bits, parse_bits("011"));
    EXPECT_EQ(m.phase, 1);
}

TEST(Canonicalize, LeadingOneComplements) {
    auto p = canonicalize(Sign::Plus, parse_bits("100"));
    EXPECT_EQ(p.label.bits, parse_bits("011"));
    EXPECT_EQ(p.label.sign, Sign::Plus);
    EXPECT_EQ(p.phase, 1);
    auto m = canonicalize(Sign::Minus, parse_bits("100"), GhzDof::TimeBin);
    EXPECT_EQ(m.label.bits, parse_bits("011"));
    EXPECT_EQ(m.label.sign, Sign::Minus);
    EXPECT_EQ(m.label.dof, GhzDof::TimeBin);
    EXPECT_EQ(m.phase, -1);
    EXPECT_THROW(canonicalize(Sign::Plus, {}), ArgumentError);
}

TEST(Canonicalize, PhaseMatchesStates) {
    ModeSpec spec = protocol_spec(4);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (uint32_t v = 0; v < 16; v++) {
            BitString bits(4);
            for (int k = 0; k < 4; k++) {
                bits[k] = (v >> k) & 1;
            }
            auto c = canonicalize(s, bits);
            auto raw = make_ghz({GhzDof::Polarization, s, bits}, spec);
            auto canon = make_ghz(c.label, spec).with_global_phase(static_cast<double>(c.phase));
            ASSERT_LT(max_diff(raw, canon), 1e-12) << sign_char(s) << format_bits(bits);
            ASSERT_TRUE(c.label.is_canonical());
        }
    }
}

TEST(Canonicalize, Idempotent) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (const char *b : {"000", "100", "111", "0101", "1010"}) {
            auto once = canonicalize(s, parse_bits(b));
            auto twice = canonicalize(once.label.sign, once.label.bits);
            EXPECT_EQ(twice.label, once.label);
            EXPECT_EQ(twice.phase, 1);
        }
    }
}

TEST(MakeGhz, PolarizationAndTime) {
    ModeSpec spec = protocol_spec(3);
    auto hhh = encode(spec, BasisState{{{Pol::H, 0, 0}, {Pol::H, 0, 0}, {Pol::H, 0, 0}}, {}});
    auto vvv = encode(spec, BasisState{{{Pol::V, 0, 0}, {Pol::V, 0, 0}, {Pol::V, 0, 0}}, {}});
    auto p = make_ghz(pol(Sign::Plus, "000"), spec);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_NEAR(p.amplitude(hhh).real(), kInvSqrt2, 1e-12);
    EXPECT_NEAR(p.amplitude(vvv).real(), kInvSqrt2, 1e-12);
    EXPECT_TRUE(p.carries(Subsystem::pol(2)));
    EXPECT_FALSE(p.carries(Subsystem::slot(0)));

    auto t = make_ghz(tim(Sign::Plus, "000"), spec);
    auto lll = encode(spec, BasisState{{{Pol::H, 1, 0}, {Pol::H, 1, 0}, {Pol::H, 1, 0}}, {}});
    EXPECT_NEAR(t.amplitude(0).real(), kInvSqrt2, 1e-12);
    EXPECT_NEAR(t.amplitude(lll).real(), kInvSqrt2, 1e-12);
    EXPECT_TRUE(t.carries(Subsystem::slot(1)));
}

TEST(MakeGhz, MinusIsOrthogonalToPlus) {
    ModeSpec spec = protocol_spec(3);
    auto m = make_ghz(pol(Sign::Minus, "001"), spec);
    auto hhv = encode(spec, BasisState{{{Pol::H, 0, 0}, {Pol::H, 0, 0}, {Pol::V, 0, 0}}, {}});
    auto vvh = encode(spec, BasisState{{{Pol::V, 0, 0}, {Pol::V, 0, 0}, {Pol::H, 0, 0}}, {}});
    EXPECT_NEAR(m.amplitude(hhv).real(), kInvSqrt2, 1e-12);
    EXPECT_NEAR(m.amplitude(vvh).real(), -kInvSqrt2, 1e-12);
    EXPECT_NEAR(std::abs(inner_product(m, make_ghz(pol(Sign::Plus, "001"), spec))), 0.0, 1e-15);
}

TEST(MakeGhz, LengthMismatch) {
    EXPECT_THROW(make_ghz(pol(Sign::Plus, "00"), protocol_spec(3)), ArgumentError);
}

TEST(MakeGhz, RoundTripRecoversLabel) {
    ModeSpec spec = protocol_spec(4);
    for (GhzDof dof : {GhzDof::Polarization, GhzDof::TimeBin}) {
        for (const auto &label : enumerate_ghz(4, dof)) {
            auto s = make_ghz(label, spec);
            ASSERT_EQ(s.size(), 2u);
            // Read the term whose first photon is in level 0, and the relative sign.
            Subsystem first = dof == GhzDof::Polarization ? Subsystem::pol(0) : Subsystem::slot(0);
            const auto &e0 = s.entries()[0];
            const auto &e1 = s.entries()[1];
            const auto &lead = field_value(spec, e0.first, first) == 0 ? e0 : e1;
            const auto &other = &lead == &e0 ? e1 : e0;
            GhzLabel back{dof, (other.second / lead.second).real() > 0 ? Sign::Plus : Sign::Minus, BitString(4)};
            for (int k = 0; k < 4; k++) {
                Subsystem sk = dof == GhzDof::Polarization ? Subsystem::pol(k) : Subsystem::slot(k);
                back.bits[k] = static_cast<uint8_t>(field_value(spec, lead.first, sk));
            }
            ASSERT_EQ(back, label);
        }
    }
}

TEST(MakeHyper, FourTermProduct) {
    ModeSpec spec = protocol_spec(3);
    auto s = make_hyper({pol(Sign::Plus, "000"), tim(Sign::Plus, "000")}, spec);
    EXPECT_EQ(s.size(), 4u);
    for (const auto &[k, a] : s.entries()) {
        EXPECT_NEAR(a.real(), 0.5, 1e-12);
        for (int p = 0; p < 3; p++) {
            EXPECT_EQ(field_value(spec, k, Subsystem::path(p)), 0);
        }
    }
    EXPECT_EQ(s.carriers(), spec.photonic_mask());
}

TEST(MakeHyper, RejectsMismatchedFactors) {
    ModeSpec spec = protocol_spec(3);
    EXPECT_THROW(make_hyper({tim(Sign::Plus, "000"), tim(Sign::Plus, "000")}, spec), ArgumentError);
    EXPECT_THROW(make_hyper({pol(Sign::Plus, "000"), tim(Sign::Plus, "00")}, spec), ArgumentError);
}

TEST(MakeHyper, FamilyIsOrthonormal) {
    for (int n : {2, 3, 4}) {
        ModeSpec spec = protocol_spec(n);
        auto labels = enumerate_labels(n);
        std::vector<StateVector> states;
        for (const auto &l : labels) {
            states.push_back(make_hyper(l, spec));
            ASSERT_NEAR(states.back().norm_squared(), 1.0, kNormTolerance);
        }
        for (size_t i = 0; i < states.size(); i++) {
            for (size_t j = i + 1; j < states.size(); j++) {
                ASSERT_LT(fidelity(states[i], states[j]), 1e-20) << labels[i].str() << " " << labels[j].str();
            }
        }
    }
}

TEST(Enumerate, CountsAndOrder) {
    EXPECT_EQ(enumerate_labels(3).size(), 64u);
    EXPECT_EQ(enumerate_labels(2).size(), 16u);
    EXPECT_EQ(enumerate_labels(6).size(), 4096u);
    auto l = enumerate_labels(3);
    EXPECT_EQ(l.front().str(), "P+000,T+000");
    EXPECT_EQ(l[1].str(), "P+000,T+001");
    EXPECT_EQ(l[4].str(), "P+000,T-000");
    EXPECT_EQ(l[8].str(), "P+001,T+000");
    EXPECT_EQ(l.back().str(), "P-011,T-011");
    std::set<HyperLabel> uniq(l.begin(), l.end());
    EXPECT_EQ(uniq.size(), 64u);
    for (size_t i = 0; i < l.size(); i++) {
        ASSERT_EQ(label_index(l[i]), i);
        ASSERT_TRUE(l[i].pol.is_canonical() && l[i].time.is_canonical());
    }
    EXPECT_THROW(enumerate_labels(1), ArgumentError);
    EXPECT_THROW(enumerate_labels(7), ArgumentError);
}

TEST(ParseLabel, Accepts) {
    auto l = parse_hyper_label("P+001,T-010");
    EXPECT_EQ(l.pol, pol(Sign::Plus, "001"));
    EXPECT_EQ(l.time, tim(Sign::Minus, "010"));
    EXPECT_EQ(l.str(), "P+001,T-010");
    EXPECT_EQ(parse_hyper_label("P-01,T+00", 2).size(), 2);
}

TEST(ParseLabel, Rejects) {
    EXPECT_THROW(parse_hyper_label("P+001"), ParseError);
    EXPECT_THROW(parse_hyper_label("P*001,T+000"), ParseError);
    EXPECT_THROW(parse_hyper_label("P+100,T+000"), ParseError);
    EXPECT_THROW(parse_hyper_label("P+001,T+0000"), ParseError);
    EXPECT_THROW(parse_hyper_label("P+001,T+000", 4), ParseError);
    EXPECT_THROW(parse_hyper_label("P+0,T+0"), ParseError);
    EXPECT_THROW(parse_hyper_label("P+0000000,T+0000000"), ParseError);
    EXPECT_THROW(parse_hyper_label("T+001,P+000"), ParseError);
    EXPECT_THROW(parse_hyper_label("P+0x1,T+000"), ParseError);
}

TEST(ParseLabel, ReportsColumn) {
    try {
        parse_hyper_label("P+001,T+100");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_EQ(e.column, 9);
    }
}

}  // namespace
}  // namespace hgsa
