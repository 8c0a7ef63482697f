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

#include <map>
#include <set>

#include "hgsa/fixtures.h"
#include "hgsa/protocol.h"
#include "test_util.h"

namespace hgsa {
namespace {

Sign sign_of(char c) {
    return c == '+' ? Sign::Plus : Sign::Minus;
}

std::vector<Sign> signs(std::string_view text) {
    std::vector<Sign> out;
    for (char c : text) {
        out.push_back(sign_of(c));
    }
    return out;
}

// Loose label such as "+100", brought to canonical form.
GhzLabel loose(std::string_view text, GhzDof dof) {
    return canonicalize(sign_of(text[0]), parse_bits(text.substr(1)), dof).label;
}

DetectorPattern pattern(std::string_view pols, std::string_view paths) {
    DetectorPattern p;
    for (size_t k = 0; k < pols.size(); k++) {
        p.push_back({pols[k] == 'H' ? Pol::H : Pol::V, paths[k] - '1'});
    }
    return p;
}

StateVector photons_of(const HyperLabel &label) {
    return make_hyper(label, protocol_spec(label.size()));
}

TEST(Step1, CircuitShape) {
    Circuit c = build_step1(3);
    // 3 preparations, 2 x 2 parity CPFs, 3 + 3 Hadamards and 3 phase CPFs.
    EXPECT_EQ(c.elements.size(), 3u + 4u + 9u);
    ASSERT_EQ(c.plan.size(), 3u);
    for (const auto &m : c.plan) {
        EXPECT_EQ(m.basis, MeasureBasis::PlusMinus);
        ASSERT_EQ(m.subsystems.size(), 1u);
        EXPECT_EQ(m.subsystems[0].dof, Dof::Atom);
    }
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(build_step1(1), ArgumentError);
    EXPECT_THROW(build_step1(7), ArgumentError);
}

TEST(Step1, PublishedAtomRows) {
    Circuit c = build_step1(3);
    for (const auto &row : fixtures::kAtomTable) {
        HyperLabel l{loose(row.pol, GhzDof::Polarization), loose("+000", GhzDof::TimeBin)};
        auto r = run_step1(photons_of(l), c, 11);
        EXPECT_EQ(r.atoms, signs(row.atoms)) << row.pol;
        for (double p : r.probabilities) {
            EXPECT_NEAR(p, 1.0, 1e-10);
        }
    }
}

TEST(Step1, Examples) {
    Circuit c = build_step1(3);
    auto a = run_step1(photons_of(parse_hyper_label("P+001,T+000")), c, 1);
    EXPECT_EQ(a.atoms, signs("+--"));
    auto b = run_step1(photons_of(parse_hyper_label("P-010,T+011")), c, 2);
    EXPECT_EQ(b.atoms, signs("-++"));

    auto four = run_step1(photons_of(parse_hyper_label("P+0000,T+0000")), build_step1(4), 3);
    ASSERT_EQ(four.atoms.size(), 4u);
    EXPECT_EQ(std::vector<Sign>(four.atoms.begin(), four.atoms.begin() + 3), signs("+++"));
    EXPECT_EQ(phase_atom_sign(four.atoms[3], 4), Sign::Plus);
}

TEST(Step1, LeavesPhotonsUntouched) {
    for (int n : {2, 3, 4}) {
        Circuit c = build_step1(n);
        for (const auto &l : enumerate_labels(n)) {
            auto in = photons_of(l);
            auto r = run_step1(in, c, label_index(l));
            ASSERT_NEAR(fidelity(in, r.post_state), 1.0, 1e-10) << l.str();
            ASSERT_EQ(r.post_state.carriers(), in.carriers());
        }
    }
}

TEST(Step1, RejectsAtomicInput) {
    ModeSpec spec = protocol_spec(3);
    auto with_atom = tensor(photons_of(parse_hyper_label("P+000,T+000")),
                            StateVector::basis(spec, carrier_mask(spec, std::vector{Subsystem::atom(0)}), 0));
    EXPECT_ANY_THROW(run_step1(with_atom, build_step1(3), 0));
}

TEST(PhaseAtom, SignRule) {
    EXPECT_EQ(phase_atom_sign(Sign::Minus, 3), Sign::Plus);
    EXPECT_EQ(phase_atom_sign(Sign::Plus, 3), Sign::Minus);
    EXPECT_EQ(phase_atom_sign(Sign::Plus, 4), Sign::Plus);
    EXPECT_EQ(phase_atom_sign(Sign::Minus, 2), Sign::Minus);
}

TEST(Tesa, SingleSlotAndUniformPaths) {
    Circuit t = build_tesa(3);
    for (const auto &l : enumerate_labels(3)) {
        auto out = tesa_output(photons_of(l), t);
        for (const auto &[key, amp] : out.entries()) {
            for (int k = 0; k < 3; k++) {
                ASSERT_EQ(field_value(out.spec(), key, Subsystem::slot(k)), field_value(out.spec(), out.entries()[0].first, Subsystem::slot(k)));
            }
        }
        std::vector<Subsystem> paths{Subsystem::path(0), Subsystem::path(1), Subsystem::path(2)};
        auto m = marginal(out, paths);
        ASSERT_EQ(m.size(), 4u) << l.str();
        for (const auto &[v, p] : m) {
            ASSERT_NEAR(p, 0.25, 1e-12);
        }
    }
}

TEST(Tesa, PublishedLines) {
    // Lines for pol +001 and time +000 / -001; patterns consist of photons on
    // even (time sign equal) or odd path parity.
    Circuit t = build_tesa(3);
    auto first = tesa_output(photons_of(parse_hyper_label("P+001,T+000")), t);
    auto g1 = support_group(first, t);
    ASSERT_TRUE(g1);
    EXPECT_EQ(g1->letter, parse_bits("001"));
    EXPECT_EQ(g1->parity, Parity::Even);
    std::vector<Subsystem> paths{Subsystem::path(0), Subsystem::path(1), Subsystem::path(2)};
    std::set<std::vector<int>> support;
    for (const auto &[v, p] : marginal(first, paths)) {
        support.insert(v);
    }
    EXPECT_EQ(support, (std::set<std::vector<int>>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));

    auto fourth = tesa_output(photons_of(parse_hyper_label("P+001,T-001")), t);
    auto g4 = support_group(fourth, t);
    ASSERT_TRUE(g4);
    EXPECT_EQ(g4->letter, parse_bits("000"));
    EXPECT_EQ(g4->parity, Parity::Odd);
}

TEST(Tesa, MissingTransducerIsTemporalError) {
    ModeSpec spec = protocol_spec(3);
    Circuit broken{spec, {}, build_tesa(3).plan, {0, 1}};
    for (int k = 0; k < 3; k++) {
        broken.elements.push_back(make_bs(spec, PhotonId{k}, {}));
    }
    EXPECT_THROW(tesa_output(photons_of(parse_hyper_label("P+000,T+011")), broken), TemporalDistinguishabilityError);
}

TEST(Tesa, RunIsDeterministicPerSeed) {
    Circuit t = build_tesa(3);
    auto in = photons_of(parse_hyper_label("P-011,T+010"));
    EXPECT_EQ(run_tesa(in, t, 99), run_tesa(in, t, 99));
    std::set<std::string> seen;
    for (uint64_t s = 0; s < 64; s++) {
        seen.insert(format_pattern(run_tesa(in, t, s)));
    }
    EXPECT_EQ(seen.size(), 8u);  // 2 polarization terms x 4 path terms
}

TEST(Pattern, FormatAndGroup) {
    auto p = pattern("HHV", "112");
    EXPECT_EQ(format_pattern(p), "HHV 112");
    auto g = group_of(p);
    EXPECT_EQ(g.letter, parse_bits("001"));
    EXPECT_EQ(g.parity, Parity::Odd);
    auto flipped = group_of(pattern("VVH", "111"));
    EXPECT_EQ(flipped.letter, parse_bits("001"));
    EXPECT_EQ(flipped.parity, Parity::Even);
}

TEST(Classify, Examples) {
    MeasurementRecord a{signs("+--"), pattern("HHV", "111")};
    EXPECT_EQ(classify(a, 3).str(), "P+001,T+000");
    MeasurementRecord b{signs("+-+"), pattern("HHV", "121")};
    EXPECT_EQ(classify(b, 3).str(), "P-001,T+000");
    MeasurementRecord c{signs("+-+"), pattern("HHH", "121")};
    EXPECT_EQ(classify(c, 3).str(), "P-001,T+001");
    EXPECT_EQ(a.str(), "atoms(+,-,-) clicks HHV 111");
}

TEST(Classify, RejectsWrongSizes) {
    MeasurementRecord r{signs("+-"), pattern("HHV", "111")};
    EXPECT_ANY_THROW(classify(r, 3));
}

TEST(Analyzer, ClosedLoopAllLabels) {
    for (int n : {2, 3, 4}) {
        Analyzer a(n);
        for (const auto &l : enumerate_labels(n)) {
            auto r = analyze(a, l, 1000 + label_index(l));
            ASSERT_TRUE(r.correct()) << l.str() << " -> " << r.classified.str() << " " << r.record.str();
            ASSERT_NEAR(r.photonic_fidelity, 1.0, 1e-10);
        }
    }
}

TEST(Analyzer, SignaturesAreInjective) {
    for (int n : {2, 3, 4}) {
        Analyzer a(n);
        std::map<Signature, HyperLabel> seen;
        for (const auto &l : enumerate_labels(n)) {
            auto s = signature(a, l);
            ASSERT_TRUE(s.group) << l.str();
            auto [it, fresh] = seen.emplace(s, l);
            ASSERT_TRUE(fresh) << l.str() << " collides with " << it->second.str();
        }
    }
}

TEST(Analyzer, DeterministicForSeed) {
    Analyzer a(3);
    auto l = parse_hyper_label("P+010,T-011");
    auto x = analyze(a, l, 5);
    auto y = analyze(a, l, 5);
    EXPECT_EQ(x.record.atom_outcomes, y.record.atom_outcomes);
    EXPECT_EQ(x.record.detectors, y.record.detectors);
}

TEST(Analyzer, SwappedPathsWithRelabelStillClassify) {
    Analyzer a(3);
    a.tesa = build_tesa(3, {1, 0});
    a.tesa.path_relabel = {1, 0};
    for (const auto &l : enumerate_labels(3)) {
        ASSERT_TRUE(analyze(a, l, label_index(l)).correct()) << l.str();
    }
}

}  // namespace
}  // namespace hgsa
