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

#include "hgsa/report_json.h"

#include "hgsa/errors.h"

namespace hgsa {

nlohmann::ordered_json report_to_json(const VerificationReport &report, bool with_duration) {
    nlohmann::ordered_json doc;
    doc["scope"] = report.scope;
    doc["pass"] = report.pass;
    auto cases = nlohmann::ordered_json::array();
    for (const auto &c : report.cases) {
        cases.push_back({{"input", c.input},
                         {"expected", c.expected},
                         {"observed", c.observed},
                         {"fidelity", c.fidelity},
                         {"pass", c.pass}});
    }
    doc["cases"] = std::move(cases);
    doc["notes"] = report.notes;
    if (with_duration) {
        doc["duration_ms"] = report.duration_ms;
    }
    return doc;
}

VerificationReport report_from_json(const nlohmann::ordered_json &doc) {
    try {
        VerificationReport r;
        r.scope = doc.at("scope").get<std::string>();
        r.pass = doc.at("pass").get<bool>();
        for (const auto &c : doc.at("cases")) {
            r.cases.push_back({c.at("input").get<std::string>(), c.at("expected").get<std::string>(),
                               c.at("observed").get<std::string>(), c.at("fidelity").get<double>(),
                               c.at("pass").get<bool>()});
        }
        if (doc.contains("notes")) {
            r.notes = doc.at("notes").get<std::vector<std::string>>();
        }
        if (doc.contains("duration_ms")) {
            r.duration_ms = doc.at("duration_ms").get<double>();
        }
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

}  // namespace hgsa
