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

// Published three-photon reference data, transcribed as written. Labels use
// the published representatives (000, 001, 010, 100), so "100" appears where
// the canonical form is "011"; canonicalize before comparing.

#ifndef HGSA_FIXTURES_H
#define HGSA_FIXTURES_H

#include <array>
#include <string_view>

namespace hgsa::fixtures {

struct AtomRow {
    std::string_view pol;    // "+000"
    std::string_view atoms;  // "++-"
};

/// Three-photon atom readings per polarization GHZ state.
inline constexpr std::array<AtomRow, 8> kAtomTable{{
    {"+000", "++-"},
    {"-000", "+++"},
    {"+001", "+--"},
    {"-001", "+-+"},
    {"+010", "-+-"},
    {"-010", "-++"},
    {"+100", "---"},
    {"-100", "--+"},
}};

struct GroupMember {
    std::string_view pol;
    std::string_view time;
};

/// Three-photon detector groups, eight members each, in published order.
inline constexpr std::array<std::array<GroupMember, 8>, 8> kGroupTable{{
    {{{"+000", "+000"}, {"+001", "+001"}, {"+010", "+010"}, {"+100", "+100"},
      {"-000", "-000"}, {"-001", "-001"}, {"-010", "-010"}, {"-100", "-100"}}},
    {{{"+000", "-000"}, {"+001", "-001"}, {"+010", "-010"}, {"+100", "-100"},
      {"-000", "+000"}, {"-001", "+001"}, {"-010", "+010"}, {"-100", "+100"}}},
    {{{"+000", "+001"}, {"+001", "+000"}, {"+010", "+100"}, {"+100", "+010"},
      {"-000", "-001"}, {"-001", "-000"}, {"-010", "-100"}, {"-100", "-010"}}},
    {{{"+000", "-001"}, {"+001", "-000"}, {"+010", "-100"}, {"+100", "-010"},
      {"-000", "+001"}, {"-001", "+000"}, {"-010", "+100"}, {"-100", "+010"}}},
    {{{"+000", "+010"}, {"+001", "+100"}, {"+010", "+000"}, {"+100", "+001"},
      {"-000", "-010"}, {"-001", "-100"}, {"-010", "-000"}, {"-100", "-001"}}},
    {{{"+000", "-010"}, {"+001", "-100"}, {"+010", "-000"}, {"+100", "-001"},
      {"-000", "+010"}, {"-001", "+100"}, {"-010", "+000"}, {"-100", "+001"}}},
    {{{"+000", "+100"}, {"+001", "+010"}, {"+010", "+001"}, {"+100", "+000"},
      {"-000", "-100"}, {"-001", "-010"}, {"-010", "-001"}, {"-100", "-000"}}},
    {{{"+000", "-100"}, {"+001", "-010"}, {"+010", "-001"}, {"+100", "-000"},
      {"-000", "+100"}, {"-001", "+010"}, {"-010", "+001"}, {"-100", "+000"}}},
}};

struct PathTerm {
    char sign;                 // '+' or '-'
    std::string_view pattern;  // paths of photons A, B, C: "122" is a1 b2 c2
};

struct TesaOutput {
    std::string_view time;  // time-bin GHZ label of the input
    std::array<std::string_view, 2> pol_terms;
    std::array<PathTerm, 4> path_terms;
};

/// Outputs for the preserved polarization state +001 and each time-bin GHZ
/// input: (pol_terms[0] + pol_terms[1]) (x) (sum of path terms), overall
/// amplitude 1/(2 sqrt 2).
inline constexpr std::string_view kTesaPolLabel = "+001";
inline constexpr std::array<TesaOutput, 8> kTesaTable{{
    {"+000", {"HHV", "VVH"}, {{{'+', "111"}, {'+', "122"}, {'+', "212"}, {'+', "221"}}}},
    {"-000", {"HHV", "VVH"}, {{{'+', "112"}, {'+', "121"}, {'+', "211"}, {'+', "222"}}}},
    {"+001", {"HHH", "VVV"}, {{{'+', "111"}, {'-', "122"}, {'-', "212"}, {'+', "221"}}}},
    {"-001", {"HHH", "VVV"}, {{{'+', "112"}, {'-', "121"}, {'-', "211"}, {'+', "222"}}}},
    {"+010", {"HVV", "VHH"}, {{{'+', "111"}, {'-', "122"}, {'+', "212"}, {'-', "221"}}}},
    {"-010", {"HVV", "VHH"}, {{{'+', "112"}, {'-', "121"}, {'+', "211"}, {'-', "222"}}}},
    {"+100", {"VHV", "HVH"}, {{{'+', "111"}, {'+', "122"}, {'-', "212"}, {'-', "221"}}}},
    {"-100", {"VHV", "HVH"}, {{{'+', "112"}, {'+', "121"}, {'-', "211"}, {'-', "222"}}}},
}};

}  // namespace hgsa::fixtures

#endif
