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

#include "hgsa/cli.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hgsa/circuit_text.h"
#include "hgsa/oracle.h"
#include "hgsa/report_json.h"

namespace hgsa {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct CliConfig {
    std::optional<int> photons;
    size_t shots = 100;
    uint64_t seed = 0;
    Format format = Format::Text;
    std::string state;
    std::string circuit;
    size_t max_candidates = 100000;
    int max_length = 5;
    std::string out;

    int photons_or(int fallback) const {
        return photons.value_or(fallback);
    }
};

// Usage problems detected after flag parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <typename F>
auto with_file_context(const std::string &path, F parse) {
    try {
        return parse(read_file(path));
    } catch (const ParseError &e) {
        throw ParseError(path + ":" + e.what());
    }
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? "\"\"" : std::string(1, c);
    }
    return q + "\"";
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string signs_list(const std::vector<Sign> &signs, const char *sep) {
    std::string out;
    for (size_t i = 0; i < signs.size(); i++) {
        out += (i ? sep : "");
        out += sign_char(signs[i]);
    }
    return out;
}

void add_common(CLI::App *cmd, CliConfig &cfg) {
    cmd->add_option("--photons", cfg.photons, "photon count N")->check(CLI::Range(2, 6));
    cmd->add_option("--seed", cfg.seed, "64-bit seed");
    cmd->add_option("--format", cfg.format, "text, json or csv")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}}));
    cmd->add_option("--out", cfg.out, "write the report here instead of stdout");
}

int cmd_analyze(const CliConfig &cfg, std::ostream &out) {
    if (cfg.state.empty()) {
        throw UsageError("analyze requires --state");
    }
    const HyperLabel label = parse_hyper_label(cfg.state, cfg.photons);
    const int n = label.size();
    Analyzer analyzer(n);
    if (!cfg.circuit.empty()) {
        analyzer.tesa = with_file_context(cfg.circuit, [&](const std::string &text) {
            return parse_circuit(text, analyzer.tesa.spec);
        });
        if (!(analyzer.tesa.spec == analyzer.step1.spec)) {
            throw UsageError("circuit spec " + analyzer.tesa.spec.str() + " does not match " +
                             analyzer.step1.spec.str());
        }
    }
    const AnalysisResult r = analyze(analyzer, label, cfg.seed);
    std::string pols, paths;
    for (const auto &c : r.record.detectors) {
        pols += c.pol == Pol::H ? 'H' : 'V';
        paths += static_cast<char>('1' + c.path);
    }

    switch (cfg.format) {
        case Format::Json: {
            Json doc;
            doc["scope"] = "analyze";
            doc["input"] = label.str();
            doc["seed"] = cfg.seed;
            doc["atoms"] = signs_list(r.record.atom_outcomes, "");
            doc["atom_probabilities"] = r.atom_probabilities;
            doc["clicks"] = {{"pol", pols}, {"path", paths}};
            doc["photonic_fidelity"] = r.photonic_fidelity;
            doc["classified"] = r.classified.str();
            doc["pass"] = r.correct();
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "input,seed,atoms,pol_clicks,path_clicks,photonic_fidelity,classified,pass\n";
            out << label.str() << "," << cfg.seed << "," << signs_list(r.record.atom_outcomes, "") << "," << pols
                << "," << paths << "," << fixed(r.photonic_fidelity, 12) << "," << r.classified.str() << ","
                << (r.correct() ? "pass" : "fail") << "\n";
            break;
        case Format::Text:
            out << "input        " << label.str() << "\n";
            out << "atoms        (" << signs_list(r.record.atom_outcomes, ", ") << ")\n";
            out << "clicks       " << pols << " " << paths << "\n";
            out << "fidelity     " << fixed(r.photonic_fidelity, 12) << "\n";
            out << "classified   " << r.classified.str() << "\n";
            out << "round trip   " << (r.correct() ? "pass" : "FAIL") << "\n";
            break;
    }
    return r.correct() ? kExitPass : kExitFail;
}

void write_reports_text(const std::vector<VerificationReport> &sections, std::ostream &out) {
    for (const auto &rep : sections) {
        out << (rep.pass ? "PASS " : "FAIL ") << rep.scope << "  " << rep.cases.size() - rep.failures() << "/"
            << rep.cases.size() << " cases  " << fixed(rep.duration_ms, 1) << " ms\n";
        for (const auto &note : rep.notes) {
            out << "     note: " << note << "\n";
        }
        size_t shown = 0;
        for (const auto &c : rep.cases) {
            if (!c.pass && shown++ < 10) {
                out << "     " << c.input << ": expected " << c.expected << ", observed " << c.observed << "\n";
            }
        }
    }
}

void write_reports_csv(const std::vector<VerificationReport> &sections, std::ostream &out) {
    out << "scope,input,expected,observed,fidelity,pass\n";
    for (const auto &rep : sections) {
        for (const auto &c : rep.cases) {
            out << csv_field(rep.scope) << "," << csv_field(c.input) << "," << csv_field(c.expected) << ","
                << csv_field(c.observed) << "," << fixed(c.fidelity, 12) << "," << (c.pass ? "pass" : "fail")
                << "\n";
        }
    }
}

int cmd_verify(const CliConfig &cfg, std::ostream &out) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = cfg.photons_or(3);
    Circuit tesa = build_tesa(3);
    if (!cfg.circuit.empty()) {
        tesa = with_file_context(cfg.circuit, [&](const std::string &text) { return parse_circuit(text, tesa.spec); });
    }

    std::vector<VerificationReport> sections;
    sections.push_back(verify_step1_table(n));
    sections.push_back(verify_tesa_contract(tesa));
    for (const auto &pol : enumerate_ghz(n, GhzDof::Polarization)) {
        sections.push_back(derive_tesa_table(pol).report);
    }
    sections.push_back(verify_complete_discrimination(n, cfg.shots, cfg.seed));

    VerificationReport summary;
    summary.scope = "verify/N=" + std::to_string(n);
    for (const auto &rep : sections) {
        summary.add({rep.scope, "all cases pass",
                     std::to_string(rep.cases.size() - rep.failures()) + "/" + std::to_string(rep.cases.size()) +
                         " cases pass",
                     rep.cases.empty() ? 1.0
                                       : static_cast<double>(rep.cases.size() - rep.failures()) /
                                             static_cast<double>(rep.cases.size()),
                     rep.pass});
    }
    summary.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    switch (cfg.format) {
        case Format::Json: {
            Json doc = report_to_json(summary, false);
            doc["photons"] = n;
            doc["shots"] = cfg.shots;
            doc["seed"] = cfg.seed;
            doc["sections"] = Json::array();
            for (const auto &rep : sections) {
                doc["sections"].push_back(report_to_json(rep));
            }
            doc["duration_ms"] = summary.duration_ms;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            write_reports_csv(sections, out);
            break;
        case Format::Text:
            write_reports_text(sections, out);
            out << (summary.pass ? "verify: PASS" : "verify: FAIL") << " (N=" << n << ", shots=" << cfg.shots
                << ", seed=" << cfg.seed << ", " << fixed(summary.duration_ms, 1) << " ms)\n";
            break;
    }
    return summary.pass ? kExitPass : kExitFail;
}

std::string members_str(const std::vector<HyperLabel> &members) {
    std::string s;
    for (size_t i = 0; i < members.size(); i++) {
        s += (i ? " " : "") + members[i].str();
    }
    return s;
}

int cmd_tables(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    const int n = cfg.photons_or(3);
    const auto atoms = generate_atom_table(n);
    const auto groups = generate_group_table(n);

    std::vector<std::string> diff;
    if (n == 3) {
        const auto pa = published_atom_table();
        for (size_t i = 0; i < std::max(pa.size(), atoms.size()); i++) {
            std::string want = i < pa.size() ? "P" + pa[i].pol.str() + " " + signs_list(pa[i].atoms, "") : "(none)";
            std::string got =
                i < atoms.size() ? "P" + atoms[i].pol.str() + " " + signs_list(atoms[i].atoms, "") : "(none)";
            if (want != got) {
                diff.push_back("atom row " + std::to_string(i + 1) + ": published " + want + ", generated " + got);
            }
        }
        const auto pg = published_group_table();
        for (size_t i = 0; i < std::max(pg.size(), groups.size()); i++) {
            std::string want = i < pg.size() ? members_str(pg[i].members) : "(none)";
            std::string got = i < groups.size() ? members_str(groups[i].members) : "(none)";
            if (want != got) {
                diff.push_back("group " + std::to_string(i + 1) + ": published " + want + ", generated " + got);
            }
        }
    }
    const bool match = diff.empty();

    switch (cfg.format) {
        case Format::Json: {
            Json doc;
            doc["scope"] = "tables/N=" + std::to_string(n);
            doc["photons"] = n;
            doc["atom_table"] = Json::array();
            for (const auto &r : atoms) {
                doc["atom_table"].push_back({{"pol", r.pol.str()}, {"atoms", signs_list(r.atoms, "")}});
            }
            doc["group_table"] = Json::array();
            for (const auto &g : groups) {
                Json members = Json::array();
                for (const auto &m : g.members) {
                    members.push_back(m.str());
                }
                doc["group_table"].push_back({{"group", g.group->str()}, {"members", members}});
            }
            if (n == 3) {
                doc["published_match"] = match;
                doc["diff"] = diff;
            } else {
                doc["published_match"] = nullptr;
            }
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "table,index,key,value\n";
            for (size_t i = 0; i < atoms.size(); i++) {
                out << "atoms," << i + 1 << ",P" << atoms[i].pol.str() << "," << signs_list(atoms[i].atoms, "")
                    << "\n";
            }
            for (size_t i = 0; i < groups.size(); i++) {
                for (const auto &m : groups[i].members) {
                    out << "groups," << i + 1 << "," << groups[i].group->str() << "," << csv_field(m.str()) << "\n";
                }
            }
            break;
        case Format::Text:
            out << "Atom readings (N=" << n << ")\n";
            for (const auto &r : atoms) {
                out << "  P" << r.pol.str() << "  " << signs_list(r.atoms, " ") << "\n";
            }
            out << "Detector groups (N=" << n << ")\n";
            for (size_t i = 0; i < groups.size(); i++) {
                out << "  " << i + 1 << "  " << groups[i].group->str() << "  " << members_str(groups[i].members)
                    << "\n";
            }
            if (n == 3) {
                out << (match ? "published tables: match\n" : "published tables: MISMATCH\n");
            }
            break;
    }
    for (const auto &d : diff) {
        err << d << "\n";
    }
    return match ? kExitPass : kExitFail;
}

int cmd_search(const CliConfig &cfg, std::ostream &out) {
    SearchSpace space = SearchSpace::standard();
    if (!cfg.circuit.empty()) {
        space.alphabet = with_file_context(cfg.circuit, [](const std::string &text) { return parse_templates(text); });
    }
    space.max_candidates = cfg.max_candidates;
    space.max_length = cfg.max_length;
    const SearchResult r = search_tesa_config(space);

    switch (cfg.format) {
        case Format::Json: {
            Json doc = report_to_json(r.report);
            doc["config"] = r.config ? Json(r.config->str()) : Json(nullptr);
            doc["candidates"] = r.candidates;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "config,candidates,exhausted\n"
                << csv_field(r.config ? r.config->str() : "none") << "," << r.candidates << ","
                << (r.exhausted ? "yes" : "no") << "\n";
            break;
        case Format::Text:
            if (r.config) {
                out << "found: " << r.config->str() << "\n";
            } else {
                out << "none found\n";
            }
            out << "candidates evaluated: " << r.candidates << (r.exhausted ? " (budget exhausted)" : "") << "\n";
            break;
    }
    return r.config ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Polarization and time-bin GHZ-state analyzer simulator", "hgsa"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto *analyze_cmd = app.add_subcommand("analyze", "analyze one labeled state");
    add_common(analyze_cmd, cfg);
    analyze_cmd->add_option("--state", cfg.state, "label P<sign><bits>,T<sign><bits>");
    analyze_cmd->add_option("--circuit", cfg.circuit, "TESA circuit file replacing the built-in one");

    auto *verify_cmd = app.add_subcommand("verify", "run every verification");
    add_common(verify_cmd, cfg);
    verify_cmd->add_option("--shots", cfg.shots, "shots per state")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--circuit", cfg.circuit, "three-photon TESA circuit file to check");

    auto *tables_cmd = app.add_subcommand("tables", "regenerate the atom and detector-group tables");
    add_common(tables_cmd, cfg);

    auto *search_cmd = app.add_subcommand("search-tesa", "search element-level TESA configurations");
    add_common(search_cmd, cfg);
    search_cmd->add_option("--circuit", cfg.circuit, "template file giving the search alphabet");
    search_cmd->add_option("--max-candidates", cfg.max_candidates, "candidate budget")
        ->check(CLI::Range(size_t{1}, size_t{100000}));
    search_cmd->add_option("--max-length", cfg.max_length, "longest template")->check(CLI::Range(1, 7));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        err << "hgsa: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitInternal;
    try {
        if (analyze_cmd->parsed()) {
            code = cmd_analyze(cfg, buffer);
        } else if (verify_cmd->parsed()) {
            code = cmd_verify(cfg, buffer);
        } else if (tables_cmd->parsed()) {
            code = cmd_tables(cfg, buffer, err);
        } else {
            code = cmd_search(cfg, buffer);
        }
    } catch (const ParseError &e) {
        err << "hgsa: parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError &e) {
        err << "hgsa: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "hgsa: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "hgsa: internal error: " << e.what() << "\n";
        return kExitInternal;
    }

    if (cfg.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!(f << buffer.str())) {
            err << "hgsa: cannot write " << cfg.out << "\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace hgsa
