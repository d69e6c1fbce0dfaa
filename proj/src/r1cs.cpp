// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/r1cs.hpp"

#include <stdexcept>

#include "anoncred/poseidon.hpp"

namespace anoncred {

LinComb LinComb::operator+(const LinComb& o) const {
    LinComb out;
    out.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].wire < o.terms_[j].wire)) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].wire < terms_[i].wire) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Fr sum = terms_[i].coeff + o.terms_[j].coeff;
            if (!sum.is_zero()) out.terms_.push_back({terms_[i].wire, sum});
            ++i;
            ++j;
        }
    }
    return out;
}

LinComb LinComb::scaled(const Fr& k) const {
    LinComb out;
    if (k.is_zero()) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.wire, t.coeff * k});
    return out;
}

WireId ConstraintSystem::alloc_input() {
    if (aux_started_)
        throw std::logic_error("r1cs: public inputs must be allocated before witnesses");
    ++num_inputs_;
    return num_wires_++;
}

WireId ConstraintSystem::alloc() {
    aux_started_ = true;
    return num_wires_++;
}

bool ConstraintSystem::is_satisfied(std::span<const Fr> assignment,
                                    size_t* first_violation) const {
    if (assignment.size() != num_wires_) {
        if (first_violation) *first_violation = (size_t)-1;
        return false;
    }
    for (size_t i = 0; i < constraints_.size(); ++i) {
        const auto& row = constraints_[i];
        if (row.a.evaluate(assignment) * row.b.evaluate(assignment) !=
            row.c.evaluate(assignment)) {
            if (first_violation) *first_violation = i;
            return false;
        }
    }
    return true;
}

Fr ConstraintSystem::structural_digest() const {
    // order-sensitive polynomial accumulation; a diagnostic fingerprint for
    // determinism tests, not a cryptographic commitment
    std::array<Fr, 3> seed = {Fr::from_u64(num_inputs_), Fr::from_u64(num_wires_),
                              Fr::from_u64(constraints_.size())};
    Fr h = sponge(dom::KDF, seed);
    const Fr base = h + Fr::from_u64(2);
    for (const auto& row : constraints_) {
        for (const auto* lc : {&row.a, &row.b, &row.c}) {
            for (const auto& t : lc->terms())
                h = (h * base + Fr::from_u64(t.wire)) * base + t.coeff;
            h = h * base + Fr::from_u64(0xffffffffull);
        }
    }
    return h;
}

void CircuitBuilder::enforce(const LinComb& a, const LinComb& b, const LinComb& c) {
    if (proving_) {
        // eager satisfaction check: catches inconsistent hints at the gadget
        // that produced them instead of deep inside the prover
        if (value(a) * value(b) != value(c))
            throw std::logic_error("r1cs: unsatisfied constraint during witness generation");
    }
    cs_.enforce(a, b, c);
}

}  // namespace anoncred
