// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Rank-1 constraint system over Fr: rows <a,z> * <b,z> = <c,z> with
// z = (1, public inputs..., auxiliary witness...). The circuit builder
// emits an identical constraint layout whether or not it carries an
// assignment; layout depends only on the relation description, never on
// witness values (deterministic keys rely on this).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anoncred/field.hpp"

namespace anoncred {

using WireId = uint32_t;
inline constexpr WireId kOneWire = 0;

struct Term {
    WireId wire;
    Fr coeff;
};

class LinComb {
public:
    LinComb() = default;
    /*implicit*/ LinComb(const Fr& constant) {
        if (!constant.is_zero()) terms_.push_back({kOneWire, constant});
    }
    static LinComb wire(WireId w, const Fr& coeff = Fr::one()) {
        LinComb lc;
        if (!coeff.is_zero()) lc.terms_.push_back({w, coeff});
        return lc;
    }

    LinComb operator+(const LinComb& o) const;
    LinComb operator-(const LinComb& o) const { return *this + o.scaled(-Fr::one()); }
    LinComb scaled(const Fr& k) const;
    LinComb& operator+=(const LinComb& o) { return *this = *this + o; }

    bool empty() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].wire == kOneWire);
    }
    Fr constant_value() const { return terms_.empty() ? Fr::zero() : terms_[0].coeff; }

    std::span<const Term> terms() const { return terms_; }

    Fr evaluate(std::span<const Fr> assignment) const {
        Fr acc = Fr::zero();
        for (const auto& t : terms_) acc += t.coeff * assignment[t.wire];
        return acc;
    }

private:
    std::vector<Term> terms_;  // sorted by wire, coefficients nonzero
};

struct Constraint {
    LinComb a, b, c;
};

class ConstraintSystem {
public:
    WireId alloc_input();  // public inputs allocate before any auxiliary wire
    WireId alloc();

    void enforce(LinComb a, LinComb b, LinComb c) {
        constraints_.push_back({std::move(a), std::move(b), std::move(c)});
    }

    uint32_t num_inputs() const { return num_inputs_; }  // excluding the ONE wire
    uint32_t num_wires() const { return num_wires_; }    // including the ONE wire
    size_t num_constraints() const { return constraints_.size(); }
    std::span<const Constraint> constraints() const { return constraints_; }

    // full assignment check; reports the first violated row
    bool is_satisfied(std::span<const Fr> assignment, size_t* first_violation = nullptr) const;

    // order-sensitive digest of the whole system (determinism checks)
    Fr structural_digest() const;

private:
    uint32_t num_inputs_ = 0;
    uint32_t num_wires_ = 1;  // wire 0 is the constant ONE
    bool aux_started_ = false;
    std::vector<Constraint> constraints_;
};

// =============================================================================
// builder: one code path for constraint emission and witness computation
// =============================================================================

class CircuitBuilder {
public:
    explicit CircuitBuilder(bool proving) : proving_(proving) {
        if (proving_) values_.push_back(Fr::one());
    }

    bool proving() const { return proving_; }

    // public input wire; value ignored unless proving
    WireId input(const Fr& value = Fr::zero()) {
        WireId w = cs_.alloc_input();
        if (proving_) values_.push_back(value);
        return w;
    }

    // fresh auxiliary wire; value ignored unless proving
    LinComb witness(const Fr& value = Fr::zero()) {
        WireId w = cs_.alloc();
        if (proving_) values_.push_back(value);
        return LinComb::wire(w);
    }

    Fr value(const LinComb& lc) const { return lc.evaluate(values_); }

    // allocates the product wire and enforces a*b = out
    LinComb mul(const LinComb& a, const LinComb& b) {
        LinComb out = witness(proving_ ? value(a) * value(b) : Fr::zero());
        enforce(a, b, out);
        return out;
    }

    void enforce(const LinComb& a, const LinComb& b, const LinComb& c);

    void assert_equal(const LinComb& a, const LinComb& b) { enforce(a, Fr::one(), b); }

    void assert_zero(const LinComb& a) { enforce(a, Fr::one(), LinComb()); }

    ConstraintSystem& cs() { return cs_; }
    const ConstraintSystem& cs() const { return cs_; }
    std::span<const Fr> assignment() const { return values_; }
    std::vector<Fr> take_assignment() { return std::move(values_); }

private:
    ConstraintSystem cs_;
    std::vector<Fr> values_;
    bool proving_;
};

}  // namespace anoncred
