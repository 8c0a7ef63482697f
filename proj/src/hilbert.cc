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

#include "hgsa/hilbert.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hgsa {

namespace {

// Key layout: photon k occupies bits [4k, 4k+4) as pol(1) slot(2) path(1);
// atom m occupies bit 24+m.
constexpr int kPhotonStride = 4;
constexpr int kAtomBase = kPhotonStride * kMaxPhotons;

void sort_and_merge(std::vector<StateVector::Entry> &entries) {
    std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
        return a.first < b.first;
    });
    size_t out = 0;
    for (size_t i = 0; i < entries.size();) {
        BasisKey key = entries[i].first;
        Amplitude sum = 0;
        for (; i < entries.size() && entries[i].first == key; ++i) {
            sum += entries[i].second;
        }
        if (std::abs(sum) >= kPruneThreshold) {
            entries[out++] = {key, sum};
        }
    }
    entries.resize(out);
}

double sum_norm(const std::vector<StateVector::Entry> &entries) {
    double total = 0;
    for (const auto &[k, a] : entries) {
        total += std::norm(a);
    }
    return total;
}

void require_same_spec(const StateVector &a, const StateVector &b, const char *op) {
    if (!(a.spec() == b.spec())) {
        throw CompositionError(std::string(op) + ": mismatched mode specs " + a.spec().str() + " vs " + b.spec().str());
    }
}

void require_carried(const StateVector &state, std::span<const Subsystem> subsystems, const char *op) {
    for (const auto &s : subsystems) {
        if (!state.spec().has(s)) {
            throw CompositionError(std::string(op) + ": subsystem " + s.str() + " not in " + state.spec().str());
        }
        if (!state.carries(s)) {
            throw CompositionError(std::string(op) + ": subsystem " + s.str() + " is not carried by the state");
        }
    }
}

// Hadamard on each listed atom; used to read atoms out in the +/- basis.
StateVector rotate_atoms(const StateVector &state, std::span<const Subsystem> atoms) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<StateVector::Entry> cur(state.entries().begin(), state.entries().end());
    for (const auto &a : atoms) {
        BasisKey bit = state.spec().field_mask(a);
        std::vector<StateVector::Entry> next;
        next.reserve(cur.size() * 2);
        for (const auto &[key, amp] : cur) {
            bool one = (key & bit) != 0;
            next.emplace_back(key & ~bit, amp * r);
            next.emplace_back(key | bit, one ? -amp * r : amp * r);
        }
        sort_and_merge(next);
        cur = std::move(next);
    }
    return StateVector::normalized(state.spec(), state.carriers(), std::move(cur));
}

}  // namespace

std::string Subsystem::str() const {
    switch (dof) {
        case Dof::Polarization:
            return "p" + std::to_string(index + 1) + ".pol";
        case Dof::TimeSlot:
            return "p" + std::to_string(index + 1) + ".slot";
        case Dof::Path:
            return "p" + std::to_string(index + 1) + ".path";
        case Dof::Atom:
            return "a" + std::to_string(index + 1);
    }
    return "?";
}

void ModeSpec::validate() const {
    if (photons < 1 || photons > kMaxPhotons) {
        throw ArgumentError("photon count " + std::to_string(photons) + " outside [1, 6]");
    }
    if (time_slots < 2 || time_slots > kMaxTimeSlots) {
        throw ArgumentError("time slot count " + std::to_string(time_slots) + " outside [2, 4]");
    }
    if (paths < 1 || paths > kMaxPaths) {
        throw ArgumentError("path count " + std::to_string(paths) + " outside [1, 2]");
    }
    if (atoms < 0 || atoms > kMaxAtoms) {
        throw ArgumentError("atom count " + std::to_string(atoms) + " outside [0, 6]");
    }
}

uint64_t ModeSpec::dimension() const {
    validate();
    uint64_t d = 1;
    for (int k = 0; k < photons; k++) {
        d *= static_cast<uint64_t>(2 * time_slots * paths);
    }
    return d << atoms;
}

int ModeSpec::levels(Subsystem s) const {
    switch (s.dof) {
        case Dof::Polarization:
            return 2;
        case Dof::TimeSlot:
            return time_slots;
        case Dof::Path:
            return paths;
        case Dof::Atom:
            return 2;
    }
    return 0;
}

bool ModeSpec::has(Subsystem s) const {
    if (s.index < 0) {
        return false;
    }
    return s.dof == Dof::Atom ? s.index < atoms : s.index < photons;
}

int ModeSpec::field_shift(Subsystem s) const {
    switch (s.dof) {
        case Dof::Polarization:
            return kPhotonStride * s.index;
        case Dof::TimeSlot:
            return kPhotonStride * s.index + 1;
        case Dof::Path:
            return kPhotonStride * s.index + 3;
        case Dof::Atom:
            return kAtomBase + s.index;
    }
    return 0;
}

BasisKey ModeSpec::field_mask(Subsystem s) const {
    BasisKey width = s.dof == Dof::TimeSlot ? 3 : 1;
    return width << field_shift(s);
}

BasisKey ModeSpec::photonic_mask() const {
    BasisKey m = 0;
    for (int k = 0; k < photons; k++) {
        m |= field_mask(Subsystem::pol(k)) | field_mask(Subsystem::slot(k)) | field_mask(Subsystem::path(k));
    }
    return m;
}

BasisKey ModeSpec::atom_mask() const {
    BasisKey m = 0;
    for (int a = 0; a < atoms; a++) {
        m |= field_mask(Subsystem::atom(a));
    }
    return m;
}

BasisKey ModeSpec::full_mask() const {
    return photonic_mask() | atom_mask();
}

std::string ModeSpec::str() const {
    std::ostringstream out;
    out << "ModeSpec{N=" << photons << ", T=" << time_slots << ", P=" << paths << ", M=" << atoms << "}";
    return out.str();
}

BasisKey carrier_mask(const ModeSpec &spec, std::span<const Subsystem> subsystems) {
    BasisKey m = 0;
    for (const auto &s : subsystems) {
        if (!spec.has(s)) {
            throw CompositionError("subsystem " + s.str() + " not in " + spec.str());
        }
        m |= spec.field_mask(s);
    }
    return m;
}

BasisKey encode(const ModeSpec &spec, const BasisState &state) {
    if (static_cast<int>(state.photons.size()) > spec.photons || static_cast<int>(state.atoms.size()) > spec.atoms) {
        throw ArgumentError("basis state has more subsystems than " + spec.str());
    }
    BasisKey key = 0;
    for (size_t k = 0; k < state.photons.size(); k++) {
        const auto &m = state.photons[k];
        int p = static_cast<int>(k);
        if (m.slot < 0 || m.slot >= spec.time_slots || m.path < 0 || m.path >= spec.paths) {
            throw ArgumentError("photon " + std::to_string(k + 1) + " mode outside the lattice of " + spec.str());
        }
        key = with_field(spec, key, Subsystem::pol(p), static_cast<int>(m.pol));
        key = with_field(spec, key, Subsystem::slot(p), m.slot);
        key = with_field(spec, key, Subsystem::path(p), m.path);
    }
    for (size_t a = 0; a < state.atoms.size(); a++) {
        if (state.atoms[a] != 0 && state.atoms[a] != 1) {
            throw ArgumentError("atom level must be 0 or 1");
        }
        key = with_field(spec, key, Subsystem::atom(static_cast<int>(a)), state.atoms[a]);
    }
    return key;
}

BasisState decode(const ModeSpec &spec, BasisKey key) {
    BasisState out;
    out.photons.resize(spec.photons);
    out.atoms.resize(spec.atoms);
    for (int k = 0; k < spec.photons; k++) {
        out.photons[k].pol = static_cast<Pol>(field_value(spec, key, Subsystem::pol(k)));
        out.photons[k].slot = field_value(spec, key, Subsystem::slot(k));
        out.photons[k].path = field_value(spec, key, Subsystem::path(k));
    }
    for (int a = 0; a < spec.atoms; a++) {
        out.atoms[a] = field_value(spec, key, Subsystem::atom(a));
    }
    return out;
}

std::string format_key(const ModeSpec &spec, BasisKey carriers, BasisKey key) {
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k < spec.photons; k++) {
        auto pol = Subsystem::pol(k), slot = Subsystem::slot(k), path = Subsystem::path(k);
        bool any = false;
        auto owns = [&](Subsystem s) {
            return (carriers & spec.field_mask(s)) != 0;
        };
        std::string word;
        if (owns(pol)) {
            word += field_value(spec, key, pol) ? 'V' : 'H';
            any = true;
        }
        if (owns(slot)) {
            word += std::to_string(field_value(spec, key, slot));
            any = true;
        }
        if (owns(path)) {
            word += "x" + std::to_string(field_value(spec, key, path) + 1);
            any = true;
        }
        if (any) {
            out << (first ? "" : " ") << word;
            first = false;
        }
    }
    std::string atoms;
    for (int a = 0; a < spec.atoms; a++) {
        if (carriers & spec.field_mask(Subsystem::atom(a))) {
            atoms += std::to_string(field_value(spec, key, Subsystem::atom(a)));
        }
    }
    if (!atoms.empty()) {
        out << (first ? "" : " ") << "| " << atoms;
    }
    return out.str();
}

StateVector::StateVector(ModeSpec spec, BasisKey carriers, std::vector<Entry> entries)
    : spec_(spec), carriers_(carriers), entries_(std::move(entries)) {
    spec_.validate();
    if (carriers_ & ~spec_.full_mask()) {
        throw CompositionError("carrier set exceeds " + spec_.str());
    }
    for (const auto &[key, amp] : entries_) {
        if (key & ~carriers_) {
            throw CompositionError("basis key sets a field outside the carrier set");
        }
        for (int k = 0; k < spec_.photons; k++) {
            if (field_value(spec_, key, Subsystem::slot(k)) >= spec_.time_slots ||
                field_value(spec_, key, Subsystem::path(k)) >= spec_.paths) {
                throw ArgumentError("basis key outside the lattice of " + spec_.str());
            }
        }
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw ArgumentError("non-finite amplitude");
        }
    }
    sort_and_merge(entries_);
    double n = sum_norm(entries_);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw ArgumentError("state norm " + std::to_string(n) + " differs from 1");
    }
}

StateVector StateVector::normalized(ModeSpec spec, BasisKey carriers, std::vector<Entry> entries) {
    sort_and_merge(entries);
    double n = sum_norm(entries);
    if (n < kPruneThreshold * kPruneThreshold) {
        throw ArgumentError("cannot normalize the zero vector");
    }
    double s = 1.0 / std::sqrt(n);
    for (auto &e : entries) {
        e.second *= s;
    }
    return StateVector(spec, carriers, std::move(entries));
}

StateVector StateVector::basis(ModeSpec spec, BasisKey carriers, BasisKey key) {
    return StateVector(spec, carriers, {{key, 1.0}});
}

StateVector StateVector::unit(ModeSpec spec) {
    return StateVector(spec, 0, {{0, 1.0}});
}

Amplitude StateVector::amplitude(BasisKey key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const Entry &e, BasisKey k) {
        return e.first < k;
    });
    if (it == entries_.end() || it->first != key) {
        return 0;
    }
    return it->second;
}

double StateVector::norm_squared() const {
    return sum_norm(entries_);
}

StateVector StateVector::with_global_phase(Amplitude phase) const {
    if (std::abs(std::abs(phase) - 1.0) > kNormTolerance) {
        throw ArgumentError("global phase must have unit modulus");
    }
    std::vector<Entry> out = entries_;
    for (auto &e : out) {
        e.second *= phase;
    }
    return StateVector(spec_, carriers_, std::move(out));
}

std::string StateVector::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[key, amp] : entries_) {
        out << (first ? "" : " + ") << "(" << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag() << "i)|"
            << format_key(spec_, carriers_, key) << ">";
        first = false;
    }
    return out.str();
}

LocalUnitary::LocalUnitary(
    const ModeSpec &spec,
    std::vector<Subsystem> bindings,
    std::vector<Amplitude> row_major,
    std::vector<bool> blocked_columns,
    Blocked blocked_error,
    bool requires_product_input)
    : spec_(spec),
      bindings_(std::move(bindings)),
      matrix_(std::move(row_major)),
      blocked_(std::move(blocked_columns)),
      blocked_error_(blocked_error),
      requires_product_(requires_product_input) {
    if (bindings_.empty()) {
        throw BindingError("element binds no subsystems");
    }
    std::set<Subsystem> seen;
    dim_ = 1;
    for (const auto &s : bindings_) {
        if (!spec_.has(s)) {
            throw BindingError("element binds " + s.str() + ", which is not in " + spec_.str());
        }
        if (!seen.insert(s).second) {
            throw BindingError("element binds " + s.str() + " twice");
        }
        levels_.push_back(spec_.levels(s));
        dim_ *= levels_.back();
    }
    if (matrix_.size() != static_cast<size_t>(dim_) * dim_) {
        throw ElementError("element matrix has the wrong size for its bindings");
    }
    if (!blocked_.empty() && blocked_.size() != static_cast<size_t>(dim_)) {
        throw ElementError("blocked-column mask has the wrong size");
    }
    double defect = unitarity_defect();
    if (!(defect <= kUnitaryTolerance)) {
        throw ElementError("element matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
    columns_.resize(dim_);
    for (int c = 0; c < dim_; c++) {
        for (int r = 0; r < dim_; r++) {
            Amplitude v = at(r, c);
            if (std::abs(v) > kPruneThreshold) {
                columns_[c].push_back({r, v});
            }
        }
    }
}

double LocalUnitary::unitarity_defect() const {
    double worst = 0;
    for (int i = 0; i < dim_; i++) {
        for (int j = 0; j < dim_; j++) {
            Amplitude s = 0;
            for (int k = 0; k < dim_; k++) {
                s += std::conj(at(k, i)) * at(k, j);
            }
            worst = std::max(worst, std::abs(s - Amplitude(i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

LocalUnitary LocalUnitary::adjoint() const {
    std::vector<Amplitude> m(matrix_.size());
    for (int r = 0; r < dim_; r++) {
        for (int c = 0; c < dim_; c++) {
            m[static_cast<size_t>(r) * dim_ + c] = std::conj(at(c, r));
        }
    }
    std::vector<bool> blocked;
    if (!blocked_.empty()) {
        blocked.assign(dim_, false);
        for (int c = 0; c < dim_; c++) {
            if (blocked_[c]) {
                for (const auto &t : columns_[c]) {
                    blocked[t.row] = true;
                }
            }
        }
    }
    return LocalUnitary(spec_, bindings_, std::move(m), std::move(blocked), blocked_error_, requires_product_);
}

int LocalUnitary::local_index(BasisKey key) const {
    int idx = 0;
    for (size_t i = 0; i < bindings_.size(); i++) {
        idx = idx * levels_[i] + field_value(spec_, key, bindings_[i]);
    }
    return idx;
}

BasisKey LocalUnitary::with_local(BasisKey key, int local) const {
    for (size_t i = bindings_.size(); i-- > 0;) {
        key = with_field(spec_, key, bindings_[i], local % levels_[i]);
        local /= levels_[i];
    }
    return key;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    require_same_spec(a, b, "tensor");
    if (a.carriers() & b.carriers()) {
        throw CompositionError("tensor: operands share subsystems");
    }
    std::vector<StateVector::Entry> out;
    out.reserve(a.size() * b.size());
    for (const auto &[ka, va] : a.entries()) {
        for (const auto &[kb, vb] : b.entries()) {
            out.emplace_back(ka | kb, va * vb);
        }
    }
    return StateVector(a.spec(), a.carriers() | b.carriers(), std::move(out));
}

namespace {

void check_product_input(const StateVector &state, const LocalUnitary &op) {
    BasisKey bound = carrier_mask(state.spec(), op.bindings());
    std::unordered_map<BasisKey, std::vector<Amplitude>> rows;
    for (const auto &[key, amp] : state.entries()) {
        auto &v = rows[key & ~bound];
        if (v.empty()) {
            v.assign(op.dim(), 0);
        }
        v[op.local_index(key)] += amp;
    }
    const std::vector<Amplitude> *ref = nullptr;
    for (const auto &[rest, v] : rows) {
        if (ref == nullptr) {
            ref = &v;
            continue;
        }
        Amplitude overlap = 0;
        double na = 0, nb = 0;
        for (int i = 0; i < op.dim(); i++) {
            overlap += std::conj((*ref)[i]) * v[i];
            na += std::norm((*ref)[i]);
            nb += std::norm(v[i]);
        }
        if (std::abs(std::norm(overlap) - na * nb) > kNormTolerance * std::max(1.0, na * nb)) {
            std::string names;
            for (const auto &s : op.bindings()) {
                names += s.str() + " ";
            }
            throw PreconditionError("element applied to entangled subsystem(s) " + names);
        }
    }
}

}  // namespace

StateVector apply_op(const StateVector &state, const LocalUnitary &op) {
    if (!(state.spec() == op.spec())) {
        throw CompositionError("apply_op: element built for " + op.spec().str() + ", state is " + state.spec().str());
    }
    require_carried(state, op.bindings(), "apply_op");
    if (op.requires_product_input()) {
        check_product_input(state, op);
    }
    std::vector<StateVector::Entry> out;
    out.reserve(state.size() * 2);
    for (const auto &[key, amp] : state.entries()) {
        int col = op.local_index(key);
        if (op.blocked(col)) {
            std::string where = format_key(state.spec(), state.carriers(), key);
            if (op.blocked_error() == LocalUnitary::Blocked::LatticeOverflow) {
                throw LatticeOverflowError("amplitude on |" + where + "> would leave the time-slot lattice");
            }
            throw PreconditionError("element undefined on component |" + where + ">");
        }
        for (const auto &t : op.column(col)) {
            out.emplace_back(op.with_local(key, t.row), amp * t.value);
        }
    }
    return StateVector(state.spec(), state.carriers(), std::move(out));
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    require_same_spec(a, b, "inner_product");
    if (a.carriers() != b.carriers()) {
        throw CompositionError("inner_product: states carry different subsystems");
    }
    Amplitude s = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].first < eb[j].first) {
            i++;
        } else if (eb[j].first < ea[i].first) {
            j++;
        } else {
            s += std::conj(ea[i].second) * eb[j].second;
            i++;
            j++;
        }
    }
    return s;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

std::string Outcome::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < subsystems.size(); i++) {
        out << (i ? " " : "") << subsystems[i].str() << "=";
        if (basis == MeasureBasis::PlusMinus) {
            out << (values[i] ? '-' : '+');
        } else {
            out << values[i];
        }
    }
    out << " (p=" << probability << ")";
    return out.str();
}

std::map<std::vector<int>, double> marginal(const StateVector &state, std::span<const Subsystem> subsystems) {
    require_carried(state, subsystems, "marginal");
    std::map<std::vector<int>, double> dist;
    std::vector<int> values(subsystems.size());
    for (const auto &[key, amp] : state.entries()) {
        for (size_t i = 0; i < subsystems.size(); i++) {
            values[i] = field_value(state.spec(), key, subsystems[i]);
        }
        dist[values] += std::norm(amp);
    }
    return dist;
}

MeasureResult measure(
    const StateVector &state, std::span<const Subsystem> subsystems, MeasureBasis basis, uint64_t rng_seed) {
    if (subsystems.empty()) {
        throw ArgumentError("measure: empty subsystem list");
    }
    std::set<Subsystem> distinct(subsystems.begin(), subsystems.end());
    if (distinct.size() != subsystems.size()) {
        throw ArgumentError("measure: repeated subsystem");
    }
    require_carried(state, subsystems, "measure");
    if (basis == MeasureBasis::PlusMinus) {
        for (const auto &s : subsystems) {
            if (s.dof != Dof::Atom) {
                throw ArgumentError("measure: +/- basis is only defined for atoms, got " + s.str());
            }
        }
    }

    const StateVector rotated = basis == MeasureBasis::PlusMinus ? rotate_atoms(state, subsystems) : state;
    auto dist = marginal(rotated, subsystems);

    std::mt19937_64 rng(rng_seed);
    double u = uniform01(rng);
    double acc = 0;
    auto chosen = dist.end();
    for (auto it = dist.begin(); it != dist.end(); ++it) {
        acc += it->second;
        if (u < acc) {
            chosen = it;
            break;
        }
    }
    if (chosen == dist.end()) {
        // u landed in the rounding gap above the accumulated total.
        chosen = std::prev(dist.end());
    }

    const auto &spec = state.spec();
    std::vector<StateVector::Entry> kept;
    for (const auto &[key, amp] : rotated.entries()) {
        bool match = true;
        for (size_t i = 0; i < subsystems.size() && match; i++) {
            match = field_value(spec, key, subsystems[i]) == chosen->first[i];
        }
        if (match) {
            kept.emplace_back(key, amp);
        }
    }
    StateVector projected = StateVector::normalized(spec, state.carriers(), std::move(kept));
    if (basis == MeasureBasis::PlusMinus) {
        projected = rotate_atoms(projected, subsystems);
    }

    Outcome outcome{
        std::vector<Subsystem>(subsystems.begin(), subsystems.end()),
        basis,
        chosen->first,
        chosen->second,
    };
    return {std::move(outcome), std::move(projected)};
}

StateVector discard(const StateVector &state, std::span<const Subsystem> subsystems) {
    require_carried(state, subsystems, "discard");
    auto dist = marginal(state, subsystems);
    if (dist.size() != 1) {
        throw PreconditionError("discard: subsystems are not in a definite level");
    }
    BasisKey mask = carrier_mask(state.spec(), subsystems);
    std::vector<StateVector::Entry> out;
    out.reserve(state.size());
    for (const auto &[key, amp] : state.entries()) {
        out.emplace_back(key & ~mask, amp);
    }
    return StateVector(state.spec(), state.carriers() & ~mask, std::move(out));
}

StateVector respec(const StateVector &state, const ModeSpec &spec) {
    std::vector<StateVector::Entry> out(state.entries().begin(), state.entries().end());
    return StateVector(spec, state.carriers(), std::move(out));
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t substream) {
    return derive_seed(derive_seed(seed, stream), substream);
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hgsa
