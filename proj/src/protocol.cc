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

#include "hgsa/protocol.h"

#include <set>
#include <sstream>

namespace hgsa {

namespace {

void check_photon_range(int photons) {
    if (photons < 2 || photons > kMaxPhotons) {
        throw ArgumentError("photon count " + std::to_string(photons) + " outside [2, 6]");
    }
}

}  // namespace

void Circuit::validate() const {
    spec.validate();
    for (const auto &e : elements) {
        for (const auto &s : e.op.bindings()) {
            if (!spec.has(s)) {
                throw CompositionError(kind_name(e.kind) + " binds " + s.str() + " outside " + spec.str());
            }
        }
    }
    std::set<Subsystem> measured;
    for (const auto &step : plan) {
        for (const auto &s : step.subsystems) {
            if (!spec.has(s)) {
                throw CompositionError("measurement of " + s.str() + " outside " + spec.str());
            }
            if (!measured.insert(s).second) {
                throw CompositionError("measurement plan covers " + s.str() + " twice");
            }
        }
    }
    if (!((path_relabel[0] == 0 && path_relabel[1] == 1) || (path_relabel[0] == 1 && path_relabel[1] == 0))) {
        throw CompositionError("path relabeling must be a permutation of {x1, x2}");
    }
}

StateVector evolve(const StateVector &state, const Circuit &circuit) {
    if (!(state.spec() == circuit.spec)) {
        throw CompositionError("state spec " + state.spec().str() + " does not match circuit " + circuit.spec.str());
    }
    StateVector cur = state;
    for (const auto &e : circuit.elements) {
        cur = apply_op(cur, e);
    }
    return cur;
}

Circuit build_step1(int photons) {
    check_photon_range(photons);
    Circuit c;
    c.spec = protocol_spec(photons);
    const int n = photons;
    for (int a = 0; a < n; a++) {
        c.elements.push_back(atom_prepare_plus(c.spec, AtomId{a}));
    }
    for (int a = 0; a + 1 < n; a++) {
        c.elements.push_back(make_cpf(c.spec, AtomId{a}, Subsystem::pol(0)));
        c.elements.push_back(make_cpf(c.spec, AtomId{a}, Subsystem::pol(a + 1)));
    }
    for (int k = 0; k < n; k++) {
        c.elements.push_back(make_hwp(c.spec, PhotonId{k}, HwpMode::Hadamard));
    }
    for (int k = 0; k < n; k++) {
        c.elements.push_back(make_cpf(c.spec, AtomId{n - 1}, Subsystem::pol(k)));
    }
    for (int k = 0; k < n; k++) {
        c.elements.push_back(make_hwp(c.spec, PhotonId{k}, HwpMode::Hadamard));
    }
    for (int a = 0; a < n; a++) {
        c.plan.push_back({{Subsystem::atom(a)}, MeasureBasis::PlusMinus});
    }
    c.validate();
    return c;
}

Step1Result run_step1(const StateVector &state, const Circuit &circuit, uint64_t rng_seed) {
    if (!(state.spec() == circuit.spec)) {
        throw CompositionError("state spec " + state.spec().str() + " does not match circuit " + circuit.spec.str());
    }
    if (state.carriers() & circuit.spec.atom_mask()) {
        throw CompositionError("run_step1 expects a photonic input state without atoms");
    }
    std::vector<Subsystem> atoms;
    for (int a = 0; a < circuit.spec.atoms; a++) {
        atoms.push_back(Subsystem::atom(a));
    }
    StateVector cur = tensor(state, StateVector::basis(state.spec(), carrier_mask(state.spec(), atoms), 0));
    cur = evolve(cur, circuit);

    Step1Result out{{}, {}, cur};
    std::vector<Subsystem> measured;
    for (size_t i = 0; i < circuit.plan.size(); i++) {
        const auto &step = circuit.plan[i];
        auto r = measure(cur, step.subsystems, step.basis, derive_seed(rng_seed, i));
        for (size_t j = 0; j < step.subsystems.size(); j++) {
            const auto &s = step.subsystems[j];
            if (s.dof != Dof::Atom) {
                continue;
            }
            int level = r.outcome.values[j];
            // +/- basis reports 0 for "+"; a computational readout of |0> / |1> is reported as is.
            out.atoms.push_back(level == 0 ? Sign::Plus : Sign::Minus);
            out.probabilities.push_back(r.outcome.probability);
            measured.push_back(s);
        }
        cur = r.state;
    }
    // The measured atoms are left in |+> or |->; rotate to a definite level and drop them.
    for (const auto &a : measured) {
        cur = apply_op(cur, atom_prepare_plus(cur.spec(), AtomId{a.index}).op);
    }
    out.post_state = discard(cur, measured);
    return out;
}

Circuit build_tesa(int photons, PathPair paths) {
    check_photon_range(photons);
    Circuit c;
    c.spec = protocol_spec(photons);
    for (int k = 0; k < photons; k++) {
        c.elements.push_back(make_t2p(c.spec, PhotonId{k}, paths));
        c.elements.push_back(make_bs(c.spec, PhotonId{k}, paths));
    }
    for (int k = 0; k < photons; k++) {
        c.plan.push_back({{Subsystem::pol(k), Subsystem::path(k)}, MeasureBasis::Computational});
    }
    c.validate();
    return c;
}

std::string format_pattern(const DetectorPattern &pattern) {
    std::string pols, paths;
    for (const auto &c : pattern) {
        pols += c.pol == Pol::H ? 'H' : 'V';
        paths += static_cast<char>('1' + c.path);
    }
    return pols + " " + paths;
}

StateVector tesa_output(const StateVector &state, const Circuit &circuit) {
    StateVector out = evolve(state, circuit);
    for (int k = 0; k < circuit.spec.photons; k++) {
        Subsystem slot = Subsystem::slot(k);
        if (!out.carries(slot)) {
            continue;
        }
        std::array<Subsystem, 1> one{slot};
        auto dist = marginal(out, one);
        if (dist.size() != 1) {
            std::ostringstream msg;
            msg << "photon " << k + 1 << " reaches the detectors in " << dist.size() << " time slots";
            throw TemporalDistinguishabilityError(msg.str());
        }
    }
    return out;
}

DetectorPattern run_tesa(const StateVector &state, const Circuit &circuit, uint64_t rng_seed) {
    StateVector cur = tesa_output(state, circuit);
    DetectorPattern pattern(circuit.spec.photons);
    for (size_t i = 0; i < circuit.plan.size(); i++) {
        const auto &step = circuit.plan[i];
        auto r = measure(cur, step.subsystems, step.basis, derive_seed(rng_seed, i));
        for (size_t j = 0; j < step.subsystems.size(); j++) {
            const auto &s = step.subsystems[j];
            if (s.dof == Dof::Polarization) {
                pattern[s.index].pol = static_cast<Pol>(r.outcome.values[j]);
            } else if (s.dof == Dof::Path) {
                pattern[s.index].path = circuit.path_relabel[r.outcome.values[j]];
            }
        }
        cur = r.state;
    }
    return pattern;
}

std::string MeasurementRecord::str() const {
    std::string out = "atoms(";
    for (size_t i = 0; i < atom_outcomes.size(); i++) {
        out += (i ? "," : "");
        out += sign_char(atom_outcomes[i]);
    }
    return out + ") clicks " + format_pattern(detectors);
}

std::string GroupId::str() const {
    return format_bits(letter) + (parity == Parity::Even ? "/even" : "/odd");
}

GroupId group_of(const DetectorPattern &pattern) {
    BitString pols;
    int x2 = 0;
    for (const auto &c : pattern) {
        pols.push_back(c.pol == Pol::V);
        x2 += c.path;
    }
    return {canonicalize(Sign::Plus, pols).label.bits, x2 % 2 == 0 ? Parity::Even : Parity::Odd};
}

Sign phase_atom_sign(Sign atom_reading, int photons) {
    bool flipped = atom_reading == Sign::Minus;
    bool even = photons % 2 == 0;
    return flipped != even ? Sign::Plus : Sign::Minus;
}

HyperLabel classify(const MeasurementRecord &record, int photons) {
    if (static_cast<int>(record.atom_outcomes.size()) != photons ||
        static_cast<int>(record.detectors.size()) != photons) {
        throw ArgumentError("measurement record length does not match the photon count");
    }
    GhzLabel pol{GhzDof::Polarization, Sign::Plus, BitString(photons, 0)};
    for (int m = 0; m + 1 < photons; m++) {
        pol.bits[m + 1] = record.atom_outcomes[m] == Sign::Minus;
    }
    pol.sign = phase_atom_sign(record.atom_outcomes[photons - 1], photons);

    BitString clicks;
    int x2 = 0;
    for (const auto &c : record.detectors) {
        clicks.push_back(c.pol == Pol::V);
        x2 += c.path;
    }
    auto time_bits = canonicalize(Sign::Plus, xor_bits(clicks, pol.bits)).label.bits;
    Sign time_sign = x2 % 2 == 0 ? pol.sign : opposite(pol.sign);
    return {pol, GhzLabel{GhzDof::TimeBin, time_sign, time_bits}};
}

std::optional<GroupId> support_group(const StateVector &tesa_state, const Circuit &tesa) {
    const auto &spec = tesa_state.spec();
    std::set<GroupId> groups;
    for (const auto &[key, amp] : tesa_state.entries()) {
        DetectorPattern p(spec.photons);
        for (int k = 0; k < spec.photons; k++) {
            p[k].pol = static_cast<Pol>(field_value(spec, key, Subsystem::pol(k)));
            p[k].path = tesa.path_relabel[field_value(spec, key, Subsystem::path(k))];
        }
        groups.insert(group_of(p));
    }
    if (groups.size() != 1) {
        return std::nullopt;
    }
    return *groups.begin();
}

Analyzer::Analyzer(int photons) : photons(photons), step1(build_step1(photons)), tesa(build_tesa(photons)) {
}

AnalysisResult analyze(const Analyzer &analyzer, const HyperLabel &label, uint64_t seed) {
    const StateVector input = make_hyper(label, analyzer.step1.spec);
    auto s1 = run_step1(input, analyzer.step1, derive_seed(seed, 0));
    DetectorPattern clicks = run_tesa(s1.post_state, analyzer.tesa, derive_seed(seed, 1));
    MeasurementRecord record{s1.atoms, clicks};
    double f = fidelity(input, s1.post_state);
    HyperLabel classified = classify(record, analyzer.photons);
    return {label, std::move(record), std::move(s1.probabilities), f, classified};
}

Signature signature(const Analyzer &analyzer, const HyperLabel &label) {
    const StateVector input = make_hyper(label, analyzer.step1.spec);
    auto s1 = run_step1(input, analyzer.step1, 0);
    for (double p : s1.probabilities) {
        if (p < 1.0 - kNormTolerance) {
            return {s1.atoms, std::nullopt};
        }
    }
    return {s1.atoms, support_group(tesa_output(s1.post_state, analyzer.tesa), analyzer.tesa)};
}

}  // namespace hgsa
