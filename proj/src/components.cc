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

#include "hgsa/components.h"

#include <cmath>

namespace hgsa {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_photon(const ModeSpec &spec, PhotonId p) {
    if (p.value < 0 || p.value >= spec.photons) {
        throw BindingError("photon " + std::to_string(p.value + 1) + " not in " + spec.str());
    }
}

void check_atom(const ModeSpec &spec, AtomId a) {
    if (a.value < 0 || a.value >= spec.atoms) {
        throw BindingError("atom " + std::to_string(a.value + 1) + " not in " + spec.str());
    }
}

void check_path_pair(const ModeSpec &spec, PathPair pair, const char *what) {
    if (pair.first < 0 || pair.first >= spec.paths || pair.second < 0 || pair.second >= spec.paths) {
        throw ArgumentError(std::string(what) + ": path index outside [1, " + std::to_string(spec.paths) + "]");
    }
    if (pair.first == pair.second) {
        throw ArgumentError(std::string(what) + ": path pair must name two distinct paths");
    }
}

// Dense matrix builder over the joint levels of the bindings.
struct MatrixBuilder {
    int dim;
    std::vector<Amplitude> m;
    explicit MatrixBuilder(int dim) : dim(dim), m(static_cast<size_t>(dim) * dim, 0) {
    }
    void set(int row, int col, Amplitude v) {
        m[static_cast<size_t>(row) * dim + col] = v;
    }
};

// Builds a permutation matrix from a partial map on `domain` columns and fills
// the unused rows/columns in ascending order. Columns outside `domain` are
// blocked.
LocalUnitary partial_permutation(
    const ModeSpec &spec,
    std::vector<Subsystem> bindings,
    int dim,
    const std::vector<int> &image,  // image[col] or -1 if col is outside the domain
    LocalUnitary::Blocked error) {
    MatrixBuilder b(dim);
    std::vector<bool> row_used(dim, false), blocked(dim, false);
    for (int c = 0; c < dim; c++) {
        if (image[c] >= 0) {
            if (row_used[image[c]]) {
                throw ElementError("partial map is not injective");
            }
            row_used[image[c]] = true;
            b.set(image[c], c, 1.0);
        }
    }
    int next_row = 0;
    for (int c = 0; c < dim; c++) {
        if (image[c] >= 0) {
            continue;
        }
        blocked[c] = true;
        while (row_used[next_row]) {
            next_row++;
        }
        row_used[next_row] = true;
        b.set(next_row, c, 1.0);
    }
    return LocalUnitary(spec, std::move(bindings), std::move(b.m), std::move(blocked), error);
}

}  // namespace

std::string kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::Cpf:
            return "cpf";
        case ElementKind::HwpHadamard:
        case ElementKind::HwpFlip:
            return "hwp";
        case ElementKind::Pockels:
            return "pockels";
        case ElementKind::PbsSplit:
            return "pbs";
        case ElementKind::Delay:
            return "delay";
        case ElementKind::BsPath:
            return "bs";
        case ElementKind::T2p:
            return "t2p";
        case ElementKind::PrepPlus:
            return "prep_plus";
    }
    return "?";
}

ElementOp ElementOp::inverse() const {
    ElementOp out = *this;
    out.op = op.adjoint();
    return out;
}

StateVector apply_op(const StateVector &state, const ElementOp &element) {
    return apply_op(state, element.op);
}

ElementOp make_cpf(const ModeSpec &spec, AtomId atom, Subsystem photon) {
    check_atom(spec, atom);
    if (photon.dof != Dof::Polarization) {
        throw BindingError("cpf must bind a photon's polarization, got " + photon.str());
    }
    check_photon(spec, PhotonId{photon.index});
    // local index = atom * 2 + pol; the phase sits on (atom 1, H).
    MatrixBuilder b(4);
    b.set(0, 0, 1.0);
    b.set(1, 1, 1.0);
    b.set(2, 2, -1.0);
    b.set(3, 3, 1.0);
    LocalUnitary op(spec, {Subsystem::atom(atom.value), photon}, std::move(b.m));
    return {ElementKind::Cpf, photon.index, atom.value, NoParams{}, std::move(op)};
}

ElementOp make_hwp(const ModeSpec &spec, PhotonId photon, HwpMode mode) {
    check_photon(spec, photon);
    MatrixBuilder b(2);
    if (mode == HwpMode::Hadamard) {
        b.set(0, 0, kInvSqrt2);
        b.set(1, 0, kInvSqrt2);
        b.set(0, 1, kInvSqrt2);
        b.set(1, 1, -kInvSqrt2);
    } else {
        b.set(1, 0, 1.0);
        b.set(0, 1, 1.0);
    }
    LocalUnitary op(spec, {Subsystem::pol(photon.value)}, std::move(b.m));
    return {
        mode == HwpMode::Hadamard ? ElementKind::HwpHadamard : ElementKind::HwpFlip,
        photon.value,
        -1,
        NoParams{},
        std::move(op)};
}

ElementOp make_pockels(const ModeSpec &spec, PhotonId photon, int trigger_slot) {
    check_photon(spec, photon);
    if (trigger_slot < 0 || trigger_slot >= spec.time_slots) {
        throw ArgumentError("pockels trigger slot " + std::to_string(trigger_slot) + " outside the lattice");
    }
    const int t = spec.time_slots;
    // local index = pol * T + slot
    MatrixBuilder b(2 * t);
    for (int pol = 0; pol < 2; pol++) {
        for (int s = 0; s < t; s++) {
            int out_pol = s == trigger_slot ? 1 - pol : pol;
            b.set(out_pol * t + s, pol * t + s, 1.0);
        }
    }
    LocalUnitary op(spec, {Subsystem::pol(photon.value), Subsystem::slot(photon.value)}, std::move(b.m));
    return {ElementKind::Pockels, photon.value, -1, PockelsParams{trigger_slot}, std::move(op)};
}

ElementOp make_pbs(const ModeSpec &spec, PhotonId photon, PathPair in_paths, PathPair out_paths) {
    check_photon(spec, photon);
    check_path_pair(spec, in_paths, "pbs input");
    check_path_pair(spec, out_paths, "pbs output");
    const int p = spec.paths;
    // local index = pol * P + path; paths outside the input pair pass through.
    std::vector<int> image(2 * p, -1);
    for (int pol = 0; pol < 2; pol++) {
        for (int x = 0; x < p; x++) {
            int out = x;
            if (x == in_paths.first) {
                out = pol == 0 ? out_paths.first : out_paths.second;
            } else if (x == in_paths.second) {
                out = pol == 0 ? out_paths.second : out_paths.first;
            }
            image[pol * p + x] = pol * p + out;
        }
    }
    auto op = partial_permutation(
        spec,
        {Subsystem::pol(photon.value), Subsystem::path(photon.value)},
        2 * p,
        image,
        LocalUnitary::Blocked::Precondition);
    return {ElementKind::PbsSplit, photon.value, -1, PbsParams{in_paths, out_paths}, std::move(op)};
}

ElementOp make_delay(const ModeSpec &spec, PhotonId photon, DelayCondition condition, int slots) {
    check_photon(spec, photon);
    if (slots < 1 || slots >= spec.time_slots) {
        throw ArgumentError("delay of " + std::to_string(slots) + " slots does not fit the lattice");
    }
    const int t = spec.time_slots;
    Subsystem cond_dof = Subsystem::pol(photon.value);
    int cond_levels = 2;
    int match_level = 0;
    switch (condition.kind) {
        case DelayCondition::Kind::PolH:
            match_level = 0;
            break;
        case DelayCondition::Kind::PolV:
            match_level = 1;
            break;
        case DelayCondition::Kind::Path:
            if (condition.path < 0 || condition.path >= spec.paths) {
                throw ArgumentError("delay condition path outside the lattice");
            }
            cond_dof = Subsystem::path(photon.value);
            cond_levels = spec.paths;
            match_level = condition.path;
            break;
    }
    // local index = cond * T + slot. The matching branch is a cyclic shift; its
    // wrap-around columns are blocked so overflow is an error, not a wrap.
    MatrixBuilder b(cond_levels * t);
    std::vector<bool> blocked(cond_levels * t, false);
    for (int c = 0; c < cond_levels; c++) {
        for (int s = 0; s < t; s++) {
            int col = c * t + s;
            if (c == match_level) {
                b.set(c * t + (s + slots) % t, col, 1.0);
                blocked[col] = s + slots >= t;
            } else {
                b.set(col, col, 1.0);
            }
        }
    }
    LocalUnitary op(
        spec,
        {cond_dof, Subsystem::slot(photon.value)},
        std::move(b.m),
        std::move(blocked),
        LocalUnitary::Blocked::LatticeOverflow);
    return {ElementKind::Delay, photon.value, -1, DelayParams{condition, slots}, std::move(op)};
}

ElementOp make_bs(const ModeSpec &spec, PhotonId photon, PathPair paths) {
    check_photon(spec, photon);
    check_path_pair(spec, paths, "bs");
    const int p = spec.paths;
    MatrixBuilder b(p);
    for (int x = 0; x < p; x++) {
        if (x != paths.first && x != paths.second) {
            b.set(x, x, 1.0);
        }
    }
    b.set(paths.first, paths.first, kInvSqrt2);
    b.set(paths.second, paths.first, kInvSqrt2);
    b.set(paths.first, paths.second, kInvSqrt2);
    b.set(paths.second, paths.second, -kInvSqrt2);
    LocalUnitary op(spec, {Subsystem::path(photon.value)}, std::move(b.m));
    return {ElementKind::BsPath, photon.value, -1, BsParams{paths}, std::move(op)};
}

ElementOp make_t2p(const ModeSpec &spec, PhotonId photon, PathPair out_paths) {
    check_photon(spec, photon);
    check_path_pair(spec, out_paths, "t2p output");
    if (spec.time_slots <= kT2pArrivalSlot) {
        throw ArgumentError("t2p needs at least two time slots");
    }
    const int t = spec.time_slots, p = spec.paths;
    // local index = (pol * T + slot) * P + path
    auto index = [&](int pol, int slot, int path) {
        return (pol * t + slot) * p + path;
    };
    std::vector<int> image(2 * t * p, -1);
    for (int pol = 0; pol < 2; pol++) {
        image[index(pol, 0, 0)] = index(pol, kT2pArrivalSlot, out_paths.first);
        image[index(pol, 1, 0)] = index(1 - pol, kT2pArrivalSlot, out_paths.second);
    }
    auto op = partial_permutation(
        spec,
        {Subsystem::pol(photon.value), Subsystem::slot(photon.value), Subsystem::path(photon.value)},
        2 * t * p,
        image,
        LocalUnitary::Blocked::Precondition);
    return {ElementKind::T2p, photon.value, -1, T2pParams{out_paths}, std::move(op)};
}

ElementOp atom_prepare_plus(const ModeSpec &spec, AtomId atom) {
    check_atom(spec, atom);
    MatrixBuilder b(2);
    b.set(0, 0, kInvSqrt2);
    b.set(1, 0, kInvSqrt2);
    b.set(0, 1, kInvSqrt2);
    b.set(1, 1, -kInvSqrt2);
    LocalUnitary op(
        spec, {Subsystem::atom(atom.value)}, std::move(b.m), {}, LocalUnitary::Blocked::Precondition, true);
    return {ElementKind::PrepPlus, -1, atom.value, NoParams{}, std::move(op)};
}

ElementOp instantiate(const ModeSpec &spec, const ElementTemplate &tmpl, PhotonId photon) {
    switch (tmpl.kind) {
        case ElementKind::HwpHadamard:
            return make_hwp(spec, photon, HwpMode::Hadamard);
        case ElementKind::HwpFlip:
            return make_hwp(spec, photon, HwpMode::Flip);
        case ElementKind::Pockels:
            return make_pockels(spec, photon, std::get<PockelsParams>(tmpl.params).trigger_slot);
        case ElementKind::PbsSplit: {
            const auto &p = std::get<PbsParams>(tmpl.params);
            return make_pbs(spec, photon, p.in_paths, p.out_paths);
        }
        case ElementKind::Delay: {
            const auto &p = std::get<DelayParams>(tmpl.params);
            return make_delay(spec, photon, p.condition, p.slots);
        }
        case ElementKind::BsPath:
            return make_bs(spec, photon, std::get<BsParams>(tmpl.params).paths);
        case ElementKind::T2p:
            return make_t2p(spec, photon, std::get<T2pParams>(tmpl.params).out_paths);
        case ElementKind::Cpf:
        case ElementKind::PrepPlus:
            break;
    }
    throw ArgumentError(kind_name(tmpl.kind) + " cannot be used as a per-photon template");
}

}  // namespace hgsa
