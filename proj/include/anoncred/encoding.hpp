// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Canonical byte encoding used for hashing, signing and persistence.
// Bit-exact across platforms:
//
//   enc(field f)     = f as 32 bytes little-endian (canonical, < r)
//   enc(bytes b)     = u32le(|b|) || b
//   enc(pair a, b)   = u32le(2) || enc(a) || enc(b)
//   enc(vector v)    = u32le(|v|) || enc(v[0]) || ...   (homogeneous)
//
// Composition is length-prefixed (4-byte little-endian element count), so
// distinct structured values of a common shape yield distinct byte strings.
// Decoding is schema-directed: decode(schema, encode(x)) == x.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anoncred/field.hpp"

namespace anoncred {

// ---- structured values (the domain of the spec-level encode operation) ----

struct Value {
    enum class Kind : uint8_t { Field, Bytes, Pair, Vector };

    Kind kind = Kind::Field;
    Fr fe;
    std::vector<uint8_t> raw;
    std::vector<Value> children;  // pair: exactly two; vector: homogeneous

    static Value field(const Fr& f) {
        Value v;
        v.fe = f;
        return v;
    }
    static Value bytes(std::span<const uint8_t> b) {
        Value v;
        v.kind = Kind::Bytes;
        v.raw.assign(b.begin(), b.end());
        return v;
    }
    static Value pair(Value a, Value b) {
        Value v;
        v.kind = Kind::Pair;
        v.children.push_back(std::move(a));
        v.children.push_back(std::move(b));
        return v;
    }
    static Value vector(std::vector<Value> elems);  // throws on heterogeneous input

    bool operator==(const Value& o) const;
};

// type descriptor for decoding
struct Schema {
    Value::Kind kind = Value::Kind::Field;
    std::vector<Schema> children;  // pair: two entries; vector: one element schema

    static Schema field() { return {}; }
    static Schema bytes() { return {Value::Kind::Bytes, {}}; }
    static Schema pair(Schema a, Schema b) {
        return {Value::Kind::Pair, {std::move(a), std::move(b)}};
    }
    static Schema vector(Schema elem) { return {Value::Kind::Vector, {std::move(elem)}}; }

    // schema of a concrete value
    static Schema of(const Value& v);
};

std::vector<uint8_t> encode(const Value& v);

// total parse; rejects trailing bytes and malformed input
std::optional<Value> decode(const Schema& schema, std::span<const uint8_t> data);

// ---- flat writer/reader used by persistence and wire formats ----

class Encoder {
public:
    void u8(uint8_t x) { buf_.push_back(x); }
    void u32(uint32_t x) {
        for (int i = 0; i < 4; ++i) buf_.push_back((uint8_t)(x >> (8 * i)));
    }
    void u64(uint64_t x) {
        for (int i = 0; i < 8; ++i) buf_.push_back((uint8_t)(x >> (8 * i)));
    }
    void field(const Fr& f) { append(f.to_bytes()); }
    void field_q(const Fq& f) { append(f.to_bytes()); }
    void bytes(std::span<const uint8_t> b) {
        u32((uint32_t)b.size());
        buf_.insert(buf_.end(), b.begin(), b.end());
    }
    void append(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

    const std::vector<uint8_t>& data() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

class Decoder {
public:
    explicit Decoder(std::span<const uint8_t> data) : data_(data) {}

    std::optional<uint8_t> u8() {
        if (pos_ + 1 > data_.size()) return std::nullopt;
        return data_[pos_++];
    }
    std::optional<uint32_t> u32() {
        if (pos_ + 4 > data_.size()) return std::nullopt;
        uint32_t x = 0;
        for (int i = 3; i >= 0; --i) x = (x << 8) | data_[pos_ + i];
        pos_ += 4;
        return x;
    }
    std::optional<uint64_t> u64() {
        if (pos_ + 8 > data_.size()) return std::nullopt;
        uint64_t x = 0;
        for (int i = 7; i >= 0; --i) x = (x << 8) | data_[pos_ + i];
        pos_ += 8;
        return x;
    }
    std::optional<Fr> field() {
        auto b = take(32);
        if (!b) return std::nullopt;
        return Fr::from_bytes(*b);
    }
    std::optional<Fq> field_q() {
        auto b = take(32);
        if (!b) return std::nullopt;
        return Fq::from_bytes(*b);
    }
    std::optional<std::span<const uint8_t>> bytes() {
        auto n = u32();
        if (!n) return std::nullopt;
        return take(*n);
    }
    std::optional<std::span<const uint8_t>> take(size_t n) {
        if (pos_ + n > data_.size()) return std::nullopt;
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }

private:
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

// hex helpers for the CLI file envelopes
std::string to_hex(std::span<const uint8_t> data);
std::optional<std::vector<uint8_t>> from_hex(std::string_view hex);

}  // namespace anoncred
