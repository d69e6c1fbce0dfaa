// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/groth16.hpp"

#include <stdexcept>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"
#include "anoncred/poseidon.hpp"

namespace anoncred {

// =============================================================================
// FFT over the 2-adic subgroup
// =============================================================================

namespace {

Fr root_of_unity_for(size_t n) {
    size_t log_n = 0;
    while ((1ull << log_n) < n) ++log_n;
    if ((1ull << log_n) != n || log_n > FrParams::TWO_ADICITY)
        throw std::invalid_argument("fft: size must be a power of two within the 2-adic range");
    Fr w = Fr::from_u256(FrParams::ROOT_OF_UNITY);
    for (size_t i = log_n; i < FrParams::TWO_ADICITY; ++i) w = w.square();
    return w;
}

}  // namespace

void fft(std::vector<Fr>& a, bool inverse) {
    const size_t n = a.size();
    if (n <= 1) return;
    Fr w = root_of_unity_for(n);
    if (inverse) w = w.inverse();

    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        Fr wl = w;
        for (size_t rest = len; rest < n; rest <<= 1) wl = wl.square();
        for (size_t i = 0; i < n; i += len) {
            Fr cur = Fr::one();
            for (size_t k = 0; k < len / 2; ++k) {
                Fr u = a[i + k];
                Fr v = a[i + k + len / 2] * cur;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                cur = cur * wl;
            }
        }
    }
    if (inverse) {
        Fr ninv = Fr::from_u64((uint64_t)n).inverse();
        for (auto& x : a) x = x * ninv;
    }
}

// =============================================================================
// setup
// =============================================================================

namespace {

struct Trapdoor {
    Fr tau, alpha, beta, gamma, delta;
};

Trapdoor derive_trapdoor(std::span<const Fr> seed, size_t domain_size) {
    auto derive = [&](uint64_t index, uint64_t attempt) {
        std::vector<Fr> in(seed.begin(), seed.end());
        in.push_back(Fr::from_u64(index));
        in.push_back(Fr::from_u64(attempt));
        return sponge(dom::KDF, in);
    };
    Trapdoor t;
    // tau must live outside the evaluation domain (Z(tau) != 0)
    for (uint64_t attempt = 0;; ++attempt) {
        t.tau = derive(0, attempt);
        Fr zt = t.tau.pow((uint64_t)domain_size) - Fr::one();
        if (!t.tau.is_zero() && !zt.is_zero()) break;
    }
    auto nonzero = [&](uint64_t index) {
        for (uint64_t attempt = 0;; ++attempt) {
            Fr v = derive(index, attempt);
            if (!v.is_zero()) return v;
        }
    };
    t.alpha = nonzero(1);
    t.beta = nonzero(2);
    t.gamma = nonzero(3);
    t.delta = nonzero(4);
    return t;
}

size_t domain_size_for(size_t constraints) {
    size_t n = 1;
    while (n < constraints) n <<= 1;
    return std::max<size_t>(n, 2);
}

}  // namespace

const G1FixedBase& g1_generator_comb() {
    static const G1FixedBase fb(G1Affine::generator());
    return fb;
}

const G2FixedBase& g2_generator_comb() {
    static const G2FixedBase fb(G2Affine::generator());
    return fb;
}

Groth16Keys groth16_setup(const ConstraintSystem& cs, std::span<const Fr> trapdoor_seed) {
    const size_t n_constraints = cs.num_constraints();
    const size_t n = domain_size_for(n_constraints);
    if (n > (1ull << FrParams::TWO_ADICITY))
        fail(Err::CircuitTooLarge, "constraint count exceeds the FFT domain");
    const size_t m = cs.num_wires();
    const uint32_t l = cs.num_inputs();
    const Trapdoor td = derive_trapdoor(trapdoor_seed, n);

    // Lagrange values L_j(tau) = Z(tau) * w^j / (n * (tau - w^j))
    Fr w = root_of_unity_for(n);
    Fr z_tau = td.tau.pow((uint64_t)n) - Fr::one();
    std::vector<Fr> lag(n);
    {
        std::vector<Fr> dens(n);
        Fr wj = Fr::one();
        Fr nf = Fr::from_u64((uint64_t)n);
        for (size_t j = 0; j < n; ++j) {
            dens[j] = nf * (td.tau - wj);
            lag[j] = z_tau * wj;  // numerator; divided below after batch inversion
            wj = wj * w;
        }
        // batch inversion
        std::vector<Fr> prefix(n);
        Fr acc = Fr::one();
        for (size_t j = 0; j < n; ++j) {
            prefix[j] = acc;
            acc = acc * dens[j];
        }
        Fr inv = acc.inverse();
        for (size_t j = n; j-- > 0;) {
            Fr dj = inv * prefix[j];
            inv = inv * dens[j];
            lag[j] = lag[j] * dj;
        }
    }

    // per-wire QAP evaluations at tau
    std::vector<Fr> u(m, Fr::zero()), v(m, Fr::zero()), wq(m, Fr::zero());
    auto rows = cs.constraints();
    for (size_t j = 0; j < rows.size(); ++j) {
        const Fr& lj = lag[j];
        for (const auto& t : rows[j].a.terms()) u[t.wire] += t.coeff * lj;
        for (const auto& t : rows[j].b.terms()) v[t.wire] += t.coeff * lj;
        for (const auto& t : rows[j].c.terms()) wq[t.wire] += t.coeff * lj;
    }

    const Fr gamma_inv = td.gamma.inverse();
    const Fr delta_inv = td.delta.inverse();

    const G1FixedBase& g1 = g1_generator_comb();
    const G2FixedBase& g2 = g2_generator_comb();

    std::vector<G1> a_q(m), b1_q(m), l_q(m > l + 1 ? m - l - 1 : 0);
    std::vector<G2> b2_q(m);
    for (size_t i = 0; i < m; ++i) {
        a_q[i] = g1.mul(u[i]);
        b1_q[i] = g1.mul(v[i]);
        b2_q[i] = g2.mul(v[i]);
    }
    std::vector<G1> ic_q(l + 1);
    for (size_t i = 0; i < m; ++i) {
        Fr combined = td.beta * u[i] + td.alpha * v[i] + wq[i];
        if (i <= l)
            ic_q[i] = g1.mul(combined * gamma_inv);
        else
            l_q[i - l - 1] = g1.mul(combined * delta_inv);
    }
    std::vector<G1> h_q(n - 1);
    {
        Fr cur = z_tau * delta_inv;  // tau^j * Z(tau) / delta
        for (size_t j = 0; j + 1 < n; ++j) {
            h_q[j] = g1.mul(cur);
            cur = cur * td.tau;
        }
    }

    Groth16Keys keys;
    keys.pk.alpha_g1 = g1.mul(td.alpha).to_affine();
    keys.pk.beta_g1 = g1.mul(td.beta).to_affine();
    keys.pk.delta_g1 = g1.mul(td.delta).to_affine();
    keys.pk.beta_g2 = g2.mul(td.beta).to_affine();
    keys.pk.delta_g2 = g2.mul(td.delta).to_affine();
    keys.pk.a_query = g1_batch_to_affine(a_q);
    keys.pk.b_g1_query = g1_batch_to_affine(b1_q);
    keys.pk.b_g2_query = g2_batch_to_affine(b2_q);
    keys.pk.l_query = g1_batch_to_affine(l_q);
    keys.pk.h_query = g1_batch_to_affine(h_q);
    keys.pk.num_inputs = l;
    keys.pk.domain_size = (uint32_t)n;

    keys.vk.alpha_g1 = keys.pk.alpha_g1;
    keys.vk.beta_g2 = keys.pk.beta_g2;
    keys.vk.gamma_g2 = g2.mul(td.gamma).to_affine();
    keys.vk.delta_g2 = keys.pk.delta_g2;
    keys.vk.ic = g1_batch_to_affine(ic_q);
    return keys;
}

// =============================================================================
// prove
// =============================================================================

Groth16Proof groth16_prove(const Groth16ProvingKey& pk, const ConstraintSystem& cs,
                           std::span<const Fr> assignment, Rng& rng) {
    const size_t n = pk.domain_size;
    const size_t m = cs.num_wires();
    if (assignment.size() != m || pk.a_query.size() != m)
        fail(Err::UnsatisfiedWitness, "groth16: assignment does not match the circuit");

    // h(X) = (a(X) b(X) - c(X)) / Z(X) via one coset evaluation
    std::vector<Fr> a(n, Fr::zero()), b(n, Fr::zero()), c(n, Fr::zero());
    auto rows = cs.constraints();
    for (size_t j = 0; j < rows.size(); ++j) {
        a[j] = rows[j].a.evaluate(assignment);
        b[j] = rows[j].b.evaluate(assignment);
        c[j] = rows[j].c.evaluate(assignment);
    }
    fft(a, true);
    fft(b, true);
    fft(c, true);
    const Fr g = Fr::from_u64(FrParams::GENERATOR);
    {
        Fr scale = Fr::one();
        for (size_t i = 0; i < n; ++i) {
            a[i] = a[i] * scale;
            b[i] = b[i] * scale;
            c[i] = c[i] * scale;
            scale = scale * g;
        }
    }
    fft(a, false);
    fft(b, false);
    fft(c, false);
    const Fr zinv = (g.pow((uint64_t)n) - Fr::one()).inverse();  // Z is constant on the coset
    for (size_t i = 0; i < n; ++i) a[i] = (a[i] * b[i] - c[i]) * zinv;
    fft(a, true);
    {
        const Fr ginv = g.inverse();
        Fr scale = Fr::one();
        for (size_t i = 0; i < n; ++i) {
            a[i] = a[i] * scale;
            scale = scale * ginv;
        }
    }
    std::span<const Fr> h_coeffs(a.data(), n - 1);  // deg h <= n-2

    const Fr r = rng.random_fr();
    const Fr s = rng.random_fr();

    G1 a_acc = g1_msm(pk.a_query, assignment)
                   .add(G1::from_affine(pk.alpha_g1))
                   .add(g1_mul(pk.delta_g1, r.to_u256()));
    G2 b_acc = g2_msm(pk.b_g2_query, assignment)
                   .add(G2::from_affine(pk.beta_g2))
                   .add(g2_mul(pk.delta_g2, s.to_u256()));
    G1 b1_acc = g1_msm(pk.b_g1_query, assignment)
                    .add(G1::from_affine(pk.beta_g1))
                    .add(g1_mul(pk.delta_g1, s.to_u256()));

    std::span<const Fr> aux(assignment.data() + pk.num_inputs + 1,
                            assignment.size() - pk.num_inputs - 1);
    G1Affine a_aff = a_acc.to_affine();
    G1 c_acc = g1_msm(pk.l_query, aux)
                   .add(g1_msm(pk.h_query, h_coeffs))
                   .add(g1_mul(a_aff, s.to_u256()))
                   .add(g1_mul(b1_acc.to_affine(), r.to_u256()))
                   .add(g1_mul(pk.delta_g1, (-(r * s)).to_u256()));

    return {a_aff, b_acc.to_affine(), c_acc.to_affine()};
}

// =============================================================================
// verify
// =============================================================================

bool groth16_verify(const Groth16VerifyingKey& vk, std::span<const Fr> public_inputs,
                    const Groth16Proof& proof) {
    if (public_inputs.size() + 1 != vk.ic.size()) return false;
    if (!proof.a.on_curve() || !proof.b.on_curve() || !proof.c.on_curve()) return false;

    G1 ic = G1::from_affine(vk.ic[0]);
    if (!public_inputs.empty())
        ic = ic.add(g1_msm(std::span<const G1Affine>(vk.ic.data() + 1, public_inputs.size()),
                           public_inputs));

    // e(-A, B) * e(alpha, beta) * e(IC, gamma) * e(C, delta) == 1
    std::array<std::pair<G1Affine, G2Affine>, 4> pairs = {
        std::make_pair(proof.a.neg(), proof.b), std::make_pair(vk.alpha_g1, vk.beta_g2),
        std::make_pair(ic.to_affine(), vk.gamma_g2), std::make_pair(proof.c, vk.delta_g2)};
    return pairing_product_is_one(pairs);
}

bool Groth16VerifyingKey::operator==(const Groth16VerifyingKey& o) const {
    if (!(alpha_g1 == o.alpha_g1) || !(beta_g2 == o.beta_g2) || !(gamma_g2 == o.gamma_g2) ||
        !(delta_g2 == o.delta_g2) || ic.size() != o.ic.size())
        return false;
    for (size_t i = 0; i < ic.size(); ++i)
        if (!(ic[i] == o.ic[i])) return false;
    return true;
}

// =============================================================================
// serialization
// =============================================================================

namespace {

void put_g1(Encoder& enc, const G1Affine& p) { enc.append(g1_to_bytes(p)); }
void put_g2(Encoder& enc, const G2Affine& p) { enc.append(g2_to_bytes(p)); }

std::optional<G1Affine> get_g1(Decoder& dec) {
    auto b = dec.take(64);
    if (!b) return std::nullopt;
    return g1_from_bytes(*b);
}
std::optional<G2Affine> get_g2(Decoder& dec) {
    auto b = dec.take(128);
    if (!b) return std::nullopt;
    return g2_from_bytes(*b);
}

template <typename T, typename Put>
void put_vec(Encoder& enc, const std::vector<T>& v, Put put) {
    enc.u32((uint32_t)v.size());
    for (const auto& p : v) put(enc, p);
}

}  // namespace

std::vector<uint8_t> groth16_proof_to_bytes(const Groth16Proof& proof) {
    Encoder enc;
    put_g1(enc, proof.a);
    put_g2(enc, proof.b);
    put_g1(enc, proof.c);
    return enc.take();
}

std::optional<Groth16Proof> groth16_proof_from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto a = get_g1(dec);
    auto b = get_g2(dec);
    auto c = get_g1(dec);
    if (!a || !b || !c || !dec.done()) return std::nullopt;
    return Groth16Proof{*a, *b, *c};
}

std::vector<uint8_t> groth16_vk_to_bytes(const Groth16VerifyingKey& vk) {
    Encoder enc;
    put_g1(enc, vk.alpha_g1);
    put_g2(enc, vk.beta_g2);
    put_g2(enc, vk.gamma_g2);
    put_g2(enc, vk.delta_g2);
    put_vec(enc, vk.ic, put_g1);
    return enc.take();
}

std::optional<Groth16VerifyingKey> groth16_vk_from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    Groth16VerifyingKey vk;
    auto alpha = get_g1(dec);
    auto beta = get_g2(dec);
    auto gamma = get_g2(dec);
    auto delta = get_g2(dec);
    if (!alpha || !beta || !gamma || !delta) return std::nullopt;
    vk.alpha_g1 = *alpha;
    vk.beta_g2 = *beta;
    vk.gamma_g2 = *gamma;
    vk.delta_g2 = *delta;
    auto count = dec.u32();
    if (!count) return std::nullopt;
    vk.ic.reserve(*count);
    for (uint32_t i = 0; i < *count; ++i) {
        auto p = get_g1(dec);
        if (!p) return std::nullopt;
        vk.ic.push_back(*p);
    }
    if (!dec.done()) return std::nullopt;
    return vk;
}

std::vector<uint8_t> groth16_pk_to_bytes(const Groth16ProvingKey& pk) {
    Encoder enc;
    put_g1(enc, pk.alpha_g1);
    put_g1(enc, pk.beta_g1);
    put_g1(enc, pk.delta_g1);
    put_g2(enc, pk.beta_g2);
    put_g2(enc, pk.delta_g2);
    put_vec(enc, pk.a_query, put_g1);
    put_vec(enc, pk.b_g1_query, put_g1);
    put_vec(enc, pk.b_g2_query, put_g2);
    put_vec(enc, pk.l_query, put_g1);
    put_vec(enc, pk.h_query, put_g1);
    enc.u32(pk.num_inputs);
    enc.u32(pk.domain_size);
    return enc.take();
}

std::optional<Groth16ProvingKey> groth16_pk_from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    Groth16ProvingKey pk;
    auto alpha = get_g1(dec);
    auto beta1 = get_g1(dec);
    auto delta1 = get_g1(dec);
    auto beta2 = get_g2(dec);
    auto delta2 = get_g2(dec);
    if (!alpha || !beta1 || !delta1 || !beta2 || !delta2) return std::nullopt;
    pk.alpha_g1 = *alpha;
    pk.beta_g1 = *beta1;
    pk.delta_g1 = *delta1;
    pk.beta_g2 = *beta2;
    pk.delta_g2 = *delta2;

    auto get_vec_g1 = [&](std::vector<G1Affine>& out) {
        auto count = dec.u32();
        if (!count) return false;
        out.reserve(*count);
        for (uint32_t i = 0; i < *count; ++i) {
            auto p = get_g1(dec);
            if (!p) return false;
            out.push_back(*p);
        }
        return true;
    };
    if (!get_vec_g1(pk.a_query)) return std::nullopt;
    if (!get_vec_g1(pk.b_g1_query)) return std::nullopt;
    auto count = dec.u32();
    if (!count) return std::nullopt;
    pk.b_g2_query.reserve(*count);
    for (uint32_t i = 0; i < *count; ++i) {
        auto p = get_g2(dec);
        if (!p) return std::nullopt;
        pk.b_g2_query.push_back(*p);
    }
    if (!get_vec_g1(pk.l_query)) return std::nullopt;
    if (!get_vec_g1(pk.h_query)) return std::nullopt;
    auto ni = dec.u32();
    auto ds = dec.u32();
    if (!ni || !ds || !dec.done()) return std::nullopt;
    pk.num_inputs = *ni;
    pk.domain_size = *ds;
    return pk;
}

}  // namespace anoncred
