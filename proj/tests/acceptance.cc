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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "hgsa/cli.h"
#include "hgsa/fixtures.h"
#include "hgsa/oracle.h"
#include "test_util.h"

namespace {

using namespace hgsa;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass;
    std::string detail;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Sign sign_of(char c) {
    return c == '+' ? Sign::Plus : Sign::Minus;
}

GhzLabel loose(std::string_view text, GhzDof dof) {
    return canonicalize(sign_of(text[0]), parse_bits(text.substr(1)), dof).label;
}

std::string failures(const VerificationReport &r) {
    return std::to_string(r.cases.size() - r.failures()) + "/" + std::to_string(r.cases.size()) + " cases";
}

Verdict step1_table() {
    auto t0 = Clock::now();
    auto report = verify_step1_table(3);
    auto generated = generate_atom_table(3);
    auto published = published_atom_table();
    bool rows = generated.size() == published.size();
    for (size_t i = 0; rows && i < generated.size(); i++) {
        rows = generated[i].pol == published[i].pol && generated[i].atoms == published[i].atoms;
    }
    double ms = ms_since(t0);
    bool ok = report.pass && report.cases.size() >= 64 && rows && ms < 10000;
    return {ok, failures(report) + ", 8/8 rows " + (rows ? "match" : "differ")};
}

Verdict tesa_outputs() {
    auto report = verify_tesa_contract(build_tesa(3));
    bool fid = report.cases.size() == 8;
    for (const auto &c : report.cases) {
        fid = fid && c.fidelity >= 1.0 - 1e-10;
    }
    auto table = derive_tesa_table(loose(fixtures::kTesaPolLabel, GhzDof::Polarization));
    bool single = table.rows.size() == 8;
    for (const auto &row : table.rows) {
        single = single && row.single_slot;
    }
    return {report.pass && fid && single,
            failures(report) + ", single slot per photon " + (single ? "yes" : "no")};
}

Verdict group_table() {
    auto generated = generate_group_table(3);
    auto published = published_group_table();
    bool ok = generated.size() == 8 && published.size() == 8;
    size_t members = 0;
    for (size_t i = 0; ok && i < 8; i++) {
        auto g = generated[i].members;
        auto p = published[i].members;
        std::sort(g.begin(), g.end());
        std::sort(p.begin(), p.end());
        ok = generated[i].group.has_value() && g == p;
        members += g.size();
    }
    ok = ok && members == 64;
    return {ok, std::to_string(generated.size()) + " groups, " + std::to_string(members) + " members"};
}

Verdict discrimination() {
    std::string detail;
    bool ok = true;
    for (auto [n, shots] : {std::pair{3, size_t{100}}, std::pair{4, size_t{10}}, std::pair{5, size_t{1}}}) {
        auto r = verify_complete_discrimination(n, shots, 20261014);
        ok = ok && r.pass;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += "N=" + std::to_string(n) + " " + r.notes.back();
    }
    return {ok, detail};
}

Verdict nondestructive() {
    double worst = 1.0;
    size_t count = 0;
    for (int n : {3, 4}) {
        Circuit c = build_step1(n);
        for (const auto &l : enumerate_labels(n)) {
            auto in = make_hyper(l, c.spec);
            auto r = run_step1(in, c, label_index(l));
            worst = std::min(worst, fidelity(in, r.post_state));
            count++;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu inputs, min fidelity 1 - %.2e", count, 1.0 - worst);
    return {1.0 - worst <= 1e-10, buf};
}

Verdict element_properties() {
    using testing::all_elements;
    size_t unitary = 0, involutions = 0, commuting = 0;
    bool ok = true;
    for (const ModeSpec &spec : {ModeSpec{3, 4, 2, 3}, ModeSpec{2, 2, 2, 1}}) {
        for (const auto &e : all_elements(spec)) {
            ok = ok && e.op.unitarity_defect() <= kUnitaryTolerance;
            unitary++;
            bool involutive = e.kind == ElementKind::Cpf || e.kind == ElementKind::HwpHadamard ||
                              e.kind == ElementKind::HwpFlip || e.kind == ElementKind::Pockels ||
                              e.kind == ElementKind::BsPath;
            if (involutive) {
                ok = ok && testing::matrix_square_defect(e.op) <= kUnitaryTolerance;
                involutions++;
            }
        }
    }

    const ModeSpec spec{3, 4, 2, 2};
    std::vector<std::function<ElementOp(int)>> factories{
        [&](int k) { return make_hwp(spec, PhotonId{k}, HwpMode::Hadamard); },
        [&](int k) { return make_hwp(spec, PhotonId{k}, HwpMode::Flip); },
        [&](int k) { return make_pockels(spec, PhotonId{k}, 0); },
        [&](int k) { return make_pbs(spec, PhotonId{k}, {0, 1}, {1, 0}); },
        [&](int k) { return make_delay(spec, PhotonId{k}, {DelayCondition::Kind::PolH, 0}, 1); },
        [&](int k) { return make_bs(spec, PhotonId{k}, {0, 1}); },
        [&](int k) { return make_t2p(spec, PhotonId{k}, {0, 1}); },
        [&](int k) { return make_cpf(spec, AtomId{k % 2}, Subsystem::pol(k)); },
    };
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<size_t> pick(0, factories.size() - 1);
    std::uniform_int_distribution<int> photon(0, 2);
    auto subs = testing::all_subsystems(spec);
    while (commuting < 150) {
        int i = photon(rng), j = photon(rng);
        if (i == j) {
            continue;
        }
        ElementOp a = factories[pick(rng)](i);
        ElementOp b = factories[pick(rng)](j);
        if (a.kind == ElementKind::Cpf && b.kind == ElementKind::Cpf && a.atom == b.atom) {
            continue;
        }
        auto psi = testing::random_state(spec, subs, rng, [&](BasisKey k) {
            for (int p = 0; p < 3; p++) {
                if (field_value(spec, k, Subsystem::slot(p)) > 1 || field_value(spec, k, Subsystem::path(p)) != 0) {
                    return false;
                }
            }
            return true;
        });
        auto ab = apply_op(apply_op(psi, a), b);
        auto ba = apply_op(apply_op(psi, b), a);
        ok = ok && fidelity(ab, ba) >= 1.0 - kNormTolerance;
        commuting++;
    }
    return {ok, std::to_string(unitary) + " unitaries, " + std::to_string(involutions) + " involutions, " +
                    std::to_string(commuting) + " commuting pairs"};
}

Verdict path_statistics() {
    const size_t shots = 10000;
    const double sigma = std::sqrt(0.25 * 0.75 / shots);
    const Circuit tesa = build_tesa(3);
    const GhzLabel pol = loose(fixtures::kTesaPolLabel, GhzDof::Polarization);
    bool ok = true;
    double worst = 0;
    uint64_t cls = 0;
    for (const auto &row : fixtures::kTesaTable) {
        std::set<std::string> admissible;
        for (const auto &t : row.path_terms) {
            admissible.insert(std::string(t.pattern));
        }
        auto in = make_hyper({pol, loose(row.time, GhzDof::TimeBin)}, tesa.spec);
        std::map<std::string, size_t> counts;
        for (size_t s = 0; s < shots; s++) {
            auto p = run_tesa(in, tesa, derive_seed(7007, cls, s));
            std::string paths;
            for (const auto &c : p) {
                paths += static_cast<char>('1' + c.path);
            }
            counts[paths]++;
        }
        ok = ok && counts.size() == 4;
        for (const auto &[pattern, n] : counts) {
            double z = std::abs(static_cast<double>(n) / shots - 0.25) / sigma;
            worst = std::max(worst, z);
            ok = ok && admissible.contains(pattern) && z <= 3.0;
        }
        cls++;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "8 classes x %zu shots, max deviation %.2f sigma", shots, worst);
    return {ok, buf};
}

Verdict phase_rule() {
    bool ok = true;
    bool flagged = true;
    size_t checked = 0;
    for (int n : {2, 4}) {
        auto r = verify_step1_table(n);
        ok = ok && r.pass;
        flagged = flagged && std::any_of(r.notes.begin(), r.notes.end(),
                                         [](const std::string &s) { return s.starts_with("even N"); });
        Circuit c = build_step1(n);
        for (const auto &l : enumerate_labels(n)) {
            auto s = run_step1(make_hyper(l, c.spec), c, label_index(l));
            // Even N: the phase atom reading equals the polarization sign.
            ok = ok && s.atoms.back() == l.pol.sign && phase_atom_sign(s.atoms.back(), n) == l.pol.sign;
            checked++;
        }
    }
    return {ok && flagged, std::to_string(checked) + " inputs, deviation " + (flagged ? "flagged" : "not flagged")};
}

Verdict performance() {
    auto timed = [](std::vector<std::string> args, int &code) {
        std::ostringstream out, err;
        auto t0 = Clock::now();
        code = run_cli(args, out, err);
        return ms_since(t0);
    };
    int c3 = -1, c5 = -1;
    double t3 = timed({"verify", "--photons", "3", "--shots", "100"}, c3);
    double t5 = timed({"verify", "--photons", "5", "--shots", "1"}, c5);
    char buf[96];
    std::snprintf(buf, sizeof buf, "N=3 x100 %.2f s, N=5 x1 %.2f s", t3 / 1000, t5 / 1000);
    return {c3 == kExitPass && c5 == kExitPass && t3 < 5000 && t5 < 120000, buf};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, Verdict (*)()>> criteria{
        {"step-1 atom table for all 64 three-photon inputs", step1_table},
        {"TESA outputs for the eight time-bin inputs", tesa_outputs},
        {"detector group table", group_table},
        {"complete discrimination at N = 3, 4, 5", discrimination},
        {"photonic state preserved by step 1", nondestructive},
        {"element unitarity, involutions and commutation", element_properties},
        {"path pattern frequencies", path_statistics},
        {"phase atom convention for even N", phase_rule},
        {"verify runtime", performance},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        auto t0 = Clock::now();
        Verdict o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu: %s (%s, %.0f ms)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), ms_since(t0));
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
