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

#include "hgsa/circuit_text.h"
#include "test_util.h"

namespace hgsa {
namespace {

void expect_same(const Circuit &a, const Circuit &b) {
    EXPECT_EQ(a.spec, b.spec);
    ASSERT_EQ(a.elements.size(), b.elements.size());
    for (size_t i = 0; i < a.elements.size(); i++) {
        EXPECT_EQ(a.elements[i].kind, b.elements[i].kind) << i;
        EXPECT_EQ(a.elements[i].photon, b.elements[i].photon) << i;
        EXPECT_EQ(a.elements[i].atom, b.elements[i].atom) << i;
        EXPECT_EQ(a.elements[i].params, b.elements[i].params) << i;
    }
    ASSERT_EQ(a.plan.size(), b.plan.size());
    for (size_t i = 0; i < a.plan.size(); i++) {
        EXPECT_EQ(a.plan[i].subsystems, b.plan[i].subsystems);
        EXPECT_EQ(a.plan[i].basis, b.plan[i].basis);
    }
    EXPECT_EQ(a.path_relabel, b.path_relabel);
}

ParseError parse_error(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e;
    }
    ADD_FAILURE() << "no error for: " << text;
    return ParseError("none");
}

TEST(CircuitText, RoundTripBuiltCircuits) {
    for (int n : {2, 3, 5}) {
        for (const Circuit &c : {build_step1(n), build_tesa(n)}) {
            auto text = serialize_circuit(c);
            auto back = parse_circuit(text);
            expect_same(c, back);
            EXPECT_EQ(serialize_circuit(back), text);
        }
    }
}

TEST(CircuitText, RoundTripEveryKind) {
    ModeSpec spec = protocol_spec(2);
    Circuit c{spec, {}, {}, {1, 0}};
    c.elements = {
        atom_prepare_plus(spec, AtomId{1}),
        make_cpf(spec, AtomId{0}, Subsystem::pol(1)),
        make_hwp(spec, PhotonId{0}, HwpMode::Flip),
        make_hwp(spec, PhotonId{1}, HwpMode::Hadamard),
        make_pockels(spec, PhotonId{0}, 1),
        make_pbs(spec, PhotonId{0}, {0, 1}, {1, 0}),
        make_delay(spec, PhotonId{1}, {DelayCondition::Kind::PolV, 0}, 2),
        make_delay(spec, PhotonId{1}, {DelayCondition::Kind::Path, 1}, 1),
        make_bs(spec, PhotonId{0}, {0, 1}),
        make_t2p(spec, PhotonId{1}, {0, 1}),
    };
    c.plan = {{{Subsystem::atom(0), Subsystem::atom(1)}, MeasureBasis::PlusMinus},
              {{Subsystem::pol(0), Subsystem::path(0)}, MeasureBasis::Computational}};
    auto back = parse_circuit(serialize_circuit(c));
    expect_same(c, back);
}

TEST(CircuitText, ParsesHandWrittenText) {
    auto c = parse_circuit(
        "# front end\n"
        "spec(photons=2, slots=4, paths=2, atoms=2)\n"
        "\n"
        "t2p(p1; out=1:2)   # trailing comment\n"
        "pockels(p2; trigger=L)\n"
        "delay(p2; when=H, slots=1)\n"
        "measure(p1.pol, p1.path; basis=computational)\n"
        "relabel(paths=2:1)\n");
    EXPECT_EQ(c.spec, protocol_spec(2));
    ASSERT_EQ(c.elements.size(), 3u);
    EXPECT_EQ(c.elements[0].kind, ElementKind::T2p);
    EXPECT_EQ(std::get<PockelsParams>(c.elements[1].params).trigger_slot, 1);
    EXPECT_EQ(std::get<DelayParams>(c.elements[2].params).condition.kind, DelayCondition::Kind::PolH);
    EXPECT_TRUE(c.relabels_paths());
    ASSERT_EQ(c.plan.size(), 1u);
}

TEST(CircuitText, FallbackSpec) {
    EXPECT_THROW(parse_circuit("bs(p1; paths=1:2)\n"), ParseError);
    auto c = parse_circuit("bs(p1; paths=1:2)\n", protocol_spec(3));
    EXPECT_EQ(c.spec, protocol_spec(3));
}

TEST(CircuitText, ErrorsCarryPosition) {
    auto e = parse_error("spec(photons=2, slots=4, paths=2, atoms=2)\nfoo(p1)\n");
    EXPECT_EQ(e.line, 2);
    EXPECT_EQ(e.column, 1);
    EXPECT_NE(std::string(e.what()).find("unknown element kind 'foo'"), std::string::npos);

    auto missing = parse_error("spec(photons=2, slots=4, paths=2, atoms=2)\nbs(p1; paths=1:2\n");
    EXPECT_EQ(missing.line, 2);

    EXPECT_EQ(parse_error("spec(photons=2, slots=4, paths=2, atoms=2)\nbs(p9; paths=1:2)\n").line, 2);
    EXPECT_EQ(parse_error("spec(photons=2, slots=4, paths=2, atoms=2)\nhwp(p1; mode=half)\n").line, 2);
    EXPECT_EQ(parse_error("spec(photons=2, slots=4, paths=2, atoms=2)\npbs(p1; in=1:1, out=1:2)\n").line, 2);
    try {
        parse_circuit("bs(p1; paths=1:2)\nspec(photons=2, slots=4, paths=2, atoms=2)\n", protocol_spec(2));
        ADD_FAILURE() << "late spec accepted";
    } catch (const ParseError &late) {
        EXPECT_EQ(late.line, 2);
    }
}

TEST(CircuitText, MeasuringTwiceIsRejected) {
    EXPECT_ANY_THROW(parse_circuit(
        "spec(photons=2, slots=4, paths=2, atoms=2)\n"
        "measure(a1; basis=pm)\n"
        "measure(a1; basis=pm)\n"));
}

TEST(Templates, RoundTrip) {
    std::vector<ElementTemplate> alphabet{
        {ElementKind::PbsSplit, PbsParams{{0, 1}, {0, 1}}},
        {ElementKind::Pockels, PockelsParams{0}},
        {ElementKind::Delay, DelayParams{{DelayCondition::Kind::Path, 1}, 1}},
        {ElementKind::HwpFlip, NoParams{}},
        {ElementKind::BsPath, BsParams{{0, 1}}},
    };
    std::string text;
    for (const auto &t : alphabet) {
        text += format_template(t) + "\n";
    }
    EXPECT_EQ(parse_templates(text), alphabet);
    EXPECT_EQ(format_template(alphabet[4]), "bs(paths=1:2)");
}

TEST(Templates, Errors) {
    try {
        parse_templates("bs(paths=1:2)\nfoo()\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2);
    }
    EXPECT_THROW(parse_templates("bs(p1; paths=1:2)\n"), ParseError);
    EXPECT_TRUE(parse_templates("# nothing\n\n").empty());
}

}  // namespace
}  // namespace hgsa
