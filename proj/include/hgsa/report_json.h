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

#ifndef HGSA_REPORT_JSON_H
#define HGSA_REPORT_JSON_H

#include <json.hpp>

#include "hgsa/oracle.h"

namespace hgsa {

/// {scope, pass, cases:[{input, expected, observed, fidelity, pass}], notes,
/// duration_ms}. Without durations the document depends only on the inputs.
nlohmann::ordered_json report_to_json(const VerificationReport &report, bool with_duration = true);

/// Inverse of report_to_json; throws ParseError on schema violations.
VerificationReport report_from_json(const nlohmann::ordered_json &doc);

}  // namespace hgsa

#endif
