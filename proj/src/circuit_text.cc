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

#include "hgsa/circuit_text.h"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace hgsa {

namespace {

std::string path_pair_str(PathPair p) {
    return std::to_string(p.first + 1) + ":" + std::to_string(p.second + 1);
}

std::string condition_str(const DelayCondition &c) {
    switch (c.kind) {
        case DelayCondition::Kind::PolH:
            return "H";
        case DelayCondition::Kind::PolV:
            return "V";
        case DelayCondition::Kind::Path:
            return "path" + std::to_string(c.path + 1);
    }
    return "?";
}

std::string params_str(ElementKind kind, const ElementParams &params) {
    switch (kind) {
        case ElementKind::HwpHadamard:
            return "mode=hadamard";
        case ElementKind::HwpFlip:
            return "mode=flip";
        case ElementKind::Pockels:
            return "trigger=" + std::to_string(std::get<PockelsParams>(params).trigger_slot);
        case ElementKind::PbsSplit: {
            const auto &p = std::get<PbsParams>(params);
            return "in=" + path_pair_str(p.in_paths) + ", out=" + path_pair_str(p.out_paths);
        }
        case ElementKind::Delay: {
            const auto &p = std::get<DelayParams>(params);
            return "when=" + condition_str(p.condition) + ", slots=" + std::to_string(p.slots);
        }
        case ElementKind::BsPath:
            return "paths=" + path_pair_str(std::get<BsParams>(params).paths);
        case ElementKind::T2p:
            return "out=" + path_pair_str(std::get<T2pParams>(params).out_paths);
        case ElementKind::Cpf:
        case ElementKind::PrepPlus:
            return "";
    }
    return "";
}

struct Located {
    std::string text;
    int column;
};

struct Record {
    int line;
    Located kind;
    std::vector<Located> bindings;
    std::map<std::string, Located> params;
    int close_column;

    [[noreturn]] void fail(const std::string &msg, int column) const {
        throw ParseError(msg, line, column);
    }

    const Located &param(const std::string &key) const {
        auto it = params.find(key);
        if (it == params.end()) {
            fail(kind.text + ": missing parameter '" + key + "'", close_column);
        }
        return it->second;
    }

    void allow_params(std::initializer_list<const char *> keys) const {
        for (const auto &[k, v] : params) {
            bool ok = false;
            for (const char *allowed : keys) {
                ok |= k == allowed;
            }
            if (!ok) {
                fail(kind.text + ": unknown parameter '" + k + "'", v.column - static_cast<int>(k.size()) - 1);
            }
        }
    }

    void expect_bindings(size_t n) const {
        if (bindings.size() != n) {
            fail(
                kind.text + ": expected " + std::to_string(n) + " binding(s), got " + std::to_string(bindings.size()),
                bindings.empty() ? close_column : bindings[0].column);
        }
    }
};

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        a++;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        b--;
    }
    return std::string(s.substr(a, b - a));
}

// Returns nullopt for blank/comment lines.
std::optional<Record> lex_line(std::string_view raw, int line) {
    std::string_view text = raw.substr(0, raw.find('#'));
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            i++;
        }
    };
    skip_ws();
    if (i == text.size()) {
        return std::nullopt;
    }
    Record rec{line, {"", static_cast<int>(i) + 1}, {}, {}, 0};
    while (i < text.size() && is_ident_char(text[i])) {
        rec.kind.text += text[i++];
    }
    if (rec.kind.text.empty()) {
        throw ParseError("expected an element kind", line, static_cast<int>(i) + 1);
    }
    skip_ws();
    if (i == text.size() || text[i] != '(') {
        throw ParseError("expected '(' after '" + rec.kind.text + "'", line, static_cast<int>(i) + 1);
    }
    i++;
    size_t close = text.find(')', i);
    if (close == std::string_view::npos) {
        throw ParseError("missing ')'", line, static_cast<int>(text.size()) + 1);
    }
    rec.close_column = static_cast<int>(close) + 1;
    std::string_view tail = text.substr(close + 1);
    if (!trim(tail).empty()) {
        throw ParseError("unexpected text after ')'", line, static_cast<int>(close) + 2);
    }
    // Split the argument list on ',' and ';'.
    struct Item {
        size_t start;
        size_t end;
        char sep;
    };
    std::vector<Item> items;
    size_t start = i;
    for (size_t j = i; j <= close; j++) {
        if (j == close || text[j] == ',' || text[j] == ';') {
            items.push_back({start, j, j == close ? ')' : text[j]});
            start = j + 1;
        }
    }
    bool no_args = items.size() == 1 && trim(text.substr(items[0].start, items[0].end - items[0].start)).empty();
    for (size_t n = 0; n < items.size() && !no_args; n++) {
        std::string_view item = text.substr(items[n].start, items[n].end - items[n].start);
        size_t lead = 0;
        while (lead < item.size() && std::isspace(static_cast<unsigned char>(item[lead]))) {
            lead++;
        }
        std::string word = trim(item);
        int col = static_cast<int>(items[n].start + lead) + 1;
        if (word.empty()) {
            // "kind(; key=value)" has an empty binding list.
            if (n == 0 && items[n].sep == ';') {
                continue;
            }
            throw ParseError("empty argument", line, col);
        }
        if (auto eq = word.find('='); eq != std::string::npos) {
            std::string key = trim(word.substr(0, eq));
            std::string value = trim(word.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ParseError("malformed parameter '" + word + "'", line, col);
            }
            if (rec.params.count(key)) {
                throw ParseError("duplicate parameter '" + key + "'", line, col);
            }
            size_t value_off = word.find_first_not_of(" \t", eq + 1);
            rec.params[key] = {value, col + static_cast<int>(value_off)};
        } else {
            if (!rec.params.empty()) {
                throw ParseError("binding '" + word + "' after parameters", line, col);
            }
            rec.bindings.push_back({word, col});
        }
    }
    return rec;
}

int parse_int(const Record &rec, const Located &v, int lo, int hi) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
        rec.fail("expected an integer, got '" + v.text + "'", v.column);
    }
    if (out < lo || out > hi) {
        rec.fail("value " + v.text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", v.column);
    }
    return out;
}

PathPair parse_path_pair(const Record &rec, const Located &v) {
    auto colon = v.text.find(':');
    if (colon == std::string::npos) {
        rec.fail("expected a path pair 'a:b', got '" + v.text + "'", v.column);
    }
    Located a{v.text.substr(0, colon), v.column};
    Located b{v.text.substr(colon + 1), v.column + static_cast<int>(colon) + 1};
    PathPair p{parse_int(rec, a, 1, kMaxPaths) - 1, parse_int(rec, b, 1, kMaxPaths) - 1};
    if (p.first == p.second) {
        rec.fail("path pair must name two distinct paths", v.column);
    }
    return p;
}

int parse_slot(const Record &rec, const Located &v) {
    if (v.text == "S") {
        return 0;
    }
    if (v.text == "L") {
        return 1;
    }
    return parse_int(rec, v, 0, kMaxTimeSlots - 1);
}

DelayCondition parse_condition(const Record &rec, const Located &v) {
    if (v.text == "H") {
        return {DelayCondition::Kind::PolH, 0};
    }
    if (v.text == "V") {
        return {DelayCondition::Kind::PolV, 0};
    }
    if (v.text.rfind("path", 0) == 0) {
        Located k{v.text.substr(4), v.column + 4};
        return {DelayCondition::Kind::Path, parse_int(rec, k, 1, kMaxPaths) - 1};
    }
    rec.fail("delay condition must be H, V, or path<k>, got '" + v.text + "'", v.column);
}

// Parses the kind + params of a photon-level element.
std::optional<ElementTemplate> parse_template_fields(const Record &rec) {
    const std::string &k = rec.kind.text;
    if (k == "hwp") {
        rec.allow_params({"mode"});
        const auto &m = rec.param("mode");
        if (m.text == "hadamard") {
            return ElementTemplate{ElementKind::HwpHadamard, NoParams{}};
        }
        if (m.text == "flip") {
            return ElementTemplate{ElementKind::HwpFlip, NoParams{}};
        }
        rec.fail("hwp mode must be hadamard or flip, got '" + m.text + "'", m.column);
    }
    if (k == "pockels") {
        rec.allow_params({"trigger"});
        return ElementTemplate{ElementKind::Pockels, PockelsParams{parse_slot(rec, rec.param("trigger"))}};
    }
    if (k == "pbs") {
        rec.allow_params({"in", "out"});
        return ElementTemplate{
            ElementKind::PbsSplit,
            PbsParams{parse_path_pair(rec, rec.param("in")), parse_path_pair(rec, rec.param("out"))}};
    }
    if (k == "delay") {
        rec.allow_params({"when", "slots"});
        return ElementTemplate{
            ElementKind::Delay,
            DelayParams{
                parse_condition(rec, rec.param("when")), parse_int(rec, rec.param("slots"), 1, kMaxTimeSlots - 1)}};
    }
    if (k == "bs") {
        rec.allow_params({"paths"});
        return ElementTemplate{ElementKind::BsPath, BsParams{parse_path_pair(rec, rec.param("paths"))}};
    }
    if (k == "t2p") {
        rec.allow_params({"out"});
        return ElementTemplate{ElementKind::T2p, T2pParams{parse_path_pair(rec, rec.param("out"))}};
    }
    return std::nullopt;
}

int parse_index(const Record &rec, const Located &v, size_t offset, int hi) {
    Located num{v.text.substr(offset), v.column + static_cast<int>(offset)};
    return parse_int(rec, num, 1, hi) - 1;
}

Subsystem parse_subsystem(const Record &rec, const Located &b, bool photon_dof_required) {
    if (b.text.size() >= 2 && b.text[0] == 'a') {
        return Subsystem::atom(parse_index(rec, b, 1, kMaxAtoms));
    }
    if (b.text.size() >= 2 && b.text[0] == 'p') {
        auto dot = b.text.find('.');
        Located head{b.text.substr(0, dot), b.column};
        int photon = parse_index(rec, head, 1, kMaxPhotons);
        if (dot == std::string::npos) {
            if (photon_dof_required) {
                rec.fail("expected pN.pol, pN.slot or pN.path", b.column);
            }
            return Subsystem::pol(photon);
        }
        std::string dof = b.text.substr(dot + 1);
        if (dof == "pol") {
            return Subsystem::pol(photon);
        }
        if (dof == "slot") {
            return Subsystem::slot(photon);
        }
        if (dof == "path") {
            return Subsystem::path(photon);
        }
        rec.fail("unknown photon degree of freedom '" + dof + "'", b.column + static_cast<int>(dot) + 1);
    }
    rec.fail("expected a binding pN, pN.<dof> or aN, got '" + b.text + "'", b.column);
}

int parse_photon(const Record &rec, const Located &b, const ModeSpec &spec) {
    if (b.text.size() < 2 || b.text[0] != 'p' || b.text.find('.') != std::string::npos) {
        rec.fail("expected a photon binding pN, got '" + b.text + "'", b.column);
    }
    int p = parse_index(rec, b, 1, kMaxPhotons);
    if (p >= spec.photons) {
        rec.fail("photon " + b.text + " outside " + spec.str(), b.column);
    }
    return p;
}

int parse_atom(const Record &rec, const Located &b, const ModeSpec &spec) {
    if (b.text.size() < 2 || b.text[0] != 'a') {
        rec.fail("expected an atom binding aN, got '" + b.text + "'", b.column);
    }
    int a = parse_index(rec, b, 1, kMaxAtoms);
    if (a >= spec.atoms) {
        rec.fail("atom " + b.text + " outside " + spec.str(), b.column);
    }
    return a;
}

// Builds an element, converting simulator argument errors into positioned parse errors.
template <typename F>
auto positioned(const Record &rec, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        rec.fail(e.what(), rec.kind.column);
    }
}

}  // namespace

std::string format_template(const ElementTemplate &tmpl) {
    std::string p = params_str(tmpl.kind, tmpl.params);
    return kind_name(tmpl.kind) + "(" + p + ")";
}

std::string format_element(const ElementOp &e) {
    std::string b;
    if (e.kind == ElementKind::Cpf) {
        b = "a" + std::to_string(e.atom + 1) + ", p" + std::to_string(e.photon + 1);
    } else if (e.kind == ElementKind::PrepPlus) {
        b = "a" + std::to_string(e.atom + 1);
    } else {
        b = "p" + std::to_string(e.photon + 1);
    }
    std::string p = params_str(e.kind, e.params);
    return kind_name(e.kind) + "(" + b + (p.empty() ? "" : "; " + p) + ")";
}

std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "spec(photons=" << c.spec.photons << ", slots=" << c.spec.time_slots << ", paths=" << c.spec.paths
        << ", atoms=" << c.spec.atoms << ")\n";
    for (const auto &e : c.elements) {
        out << format_element(e) << "\n";
    }
    for (const auto &m : c.plan) {
        out << "measure(";
        for (size_t i = 0; i < m.subsystems.size(); i++) {
            out << (i ? ", " : "") << m.subsystems[i].str();
        }
        out << "; basis=" << (m.basis == MeasureBasis::PlusMinus ? "pm" : "computational") << ")\n";
    }
    if (c.relabels_paths()) {
        out << "relabel(paths=" << c.path_relabel[0] + 1 << ":" << c.path_relabel[1] + 1 << ")\n";
    }
    return out.str();
}

Circuit parse_circuit(std::string_view text, std::optional<ModeSpec> fallback) {
    Circuit c;
    std::optional<ModeSpec> spec;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;
        auto rec_opt = lex_line(line, line_no);
        if (!rec_opt) {
            continue;
        }
        const Record &rec = *rec_opt;
        const std::string &k = rec.kind.text;

        if (k == "spec") {
            if (spec) {
                rec.fail("spec(...) may appear only once, before any element", rec.kind.column);
            }
            rec.expect_bindings(0);
            rec.allow_params({"photons", "slots", "paths", "atoms"});
            ModeSpec s;
            s.photons = parse_int(rec, rec.param("photons"), 1, kMaxPhotons);
            s.time_slots = rec.params.count("slots") ? parse_int(rec, rec.param("slots"), 2, kMaxTimeSlots) : 4;
            s.paths = rec.params.count("paths") ? parse_int(rec, rec.param("paths"), 1, kMaxPaths) : 2;
            s.atoms = rec.params.count("atoms") ? parse_int(rec, rec.param("atoms"), 0, kMaxAtoms) : 0;
            spec = s;
            c.spec = s;
            continue;
        }
        if (!spec) {
            if (!fallback) {
                rec.fail("missing spec(...) record before the first element", rec.kind.column);
            }
            spec = *fallback;
            c.spec = *fallback;
        }

        if (k == "measure") {
            rec.allow_params({"basis"});
            if (rec.bindings.empty()) {
                rec.fail("measure: needs at least one subsystem", rec.close_column);
            }
            MeasurementStep step;
            const auto &b = rec.param("basis");
            if (b.text == "pm") {
                step.basis = MeasureBasis::PlusMinus;
            } else if (b.text == "computational") {
                step.basis = MeasureBasis::Computational;
            } else {
                rec.fail("basis must be pm or computational, got '" + b.text + "'", b.column);
            }
            for (const auto &bind : rec.bindings) {
                Subsystem s = parse_subsystem(rec, bind, true);
                if (!spec->has(s)) {
                    rec.fail(s.str() + " outside " + spec->str(), bind.column);
                }
                if (step.basis == MeasureBasis::PlusMinus && s.dof != Dof::Atom) {
                    rec.fail("pm basis only applies to atoms", bind.column);
                }
                step.subsystems.push_back(s);
            }
            c.plan.push_back(std::move(step));
            continue;
        }
        if (k == "relabel") {
            rec.expect_bindings(0);
            rec.allow_params({"paths"});
            PathPair p = parse_path_pair(rec, rec.param("paths"));
            c.path_relabel = {p.first, p.second};
            continue;
        }
        if (k == "prep_plus") {
            rec.expect_bindings(1);
            rec.allow_params({});
            int a = parse_atom(rec, rec.bindings[0], *spec);
            c.elements.push_back(positioned(rec, [&] {
                return atom_prepare_plus(*spec, AtomId{a});
            }));
            continue;
        }
        if (k == "cpf") {
            rec.expect_bindings(2);
            rec.allow_params({});
            int a = parse_atom(rec, rec.bindings[0], *spec);
            Subsystem s = parse_subsystem(rec, rec.bindings[1], false);
            if (s.dof == Dof::Atom) {
                rec.fail("cpf: second binding must be a photon", rec.bindings[1].column);
            }
            c.elements.push_back(positioned(rec, [&] {
                return make_cpf(*spec, AtomId{a}, s);
            }));
            continue;
        }
        auto tmpl = parse_template_fields(rec);
        if (!tmpl) {
            rec.fail("unknown element kind '" + k + "'", rec.kind.column);
        }
        rec.expect_bindings(1);
        int photon = parse_photon(rec, rec.bindings[0], *spec);
        c.elements.push_back(positioned(rec, [&] {
            return instantiate(*spec, *tmpl, PhotonId{photon});
        }));
    }
    if (!spec) {
        if (!fallback) {
            throw ParseError("empty circuit description without a spec(...) record", line_no, 1);
        }
        c.spec = *fallback;
    }
    try {
        c.validate();
    } catch (const Error &e) {
        throw ParseError(e.what(), line_no, 1);
    }
    return c;
}

std::vector<ElementTemplate> parse_templates(std::string_view text) {
    std::vector<ElementTemplate> out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;
        auto rec = lex_line(line, line_no);
        if (!rec) {
            continue;
        }
        auto tmpl = parse_template_fields(*rec);
        if (!tmpl) {
            rec->fail("unknown element kind '" + rec->kind.text + "'", rec->kind.column);
        }
        if (!rec->bindings.empty() && !(rec->bindings.size() == 1 && rec->bindings[0].text == "*")) {
            rec->fail("template records take no bindings (or '*')", rec->bindings[0].column);
        }
        out.push_back(*tmpl);
    }
    return out;
}

}  // namespace hgsa
