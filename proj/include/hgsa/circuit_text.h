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

// Line-oriented circuit descriptions.
//
//     # three-photon TESA front end
//     spec(photons=3, slots=4, paths=2, atoms=3)
//     t2p(p1; out=1:2)
//     bs(p1; paths=1:2)
//     measure(p1.pol, p1.path; basis=computational)
//
// One record per line: `kind(bindings; params)`. Bindings are `pN` (a photon),
// `pN.pol` / `pN.slot` / `pN.path` (one photon DOF) or `aN` (an atom), all
// 1-based. Params are `key=value`. Commas and the semicolon both separate
// items. `#` starts a comment.
//
//     spec(photons=N, slots=T, paths=P, atoms=M)   optional, must come first
//     prep_plus(aM)
//     cpf(aM, pN)
//     hwp(pN; mode=hadamard|flip)
//     pockels(pN; trigger=<slot>)                  slot: 0-based integer, S or L
//     pbs(pN; in=a:b, out=c:d)                     1-based paths
//     delay(pN; when=H|V|path<k>, slots=<n>)
//     bs(pN; paths=a:b)
//     t2p(pN; out=a:b)
//     measure(<subsystems>; basis=pm|computational)
//     relabel(paths=a:b)                           reported path for x1, x2
//
// Template files (search alphabets) use the same records without bindings.

#ifndef HGSA_CIRCUIT_TEXT_H
#define HGSA_CIRCUIT_TEXT_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgsa/components.h"
#include "hgsa/protocol.h"

namespace hgsa {

std::string format_element(const ElementOp &element);
std::string format_template(const ElementTemplate &tmpl);
std::string serialize_circuit(const Circuit &circuit);

/// Throws ParseError (with line and column) on malformed input. Without a
/// `spec(...)` record, `fallback` is used; with neither, ParseError.
Circuit parse_circuit(std::string_view text, std::optional<ModeSpec> fallback = std::nullopt);

std::vector<ElementTemplate> parse_templates(std::string_view text);

}  // namespace hgsa

#endif
