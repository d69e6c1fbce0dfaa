// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/encoding.hpp"

#include <stdexcept>

namespace anoncred {

Value Value::vector(std::vector<Value> elems) {
    for (size_t i = 1; i < elems.size(); ++i) {
        if (elems[i].kind != elems[0].kind)
            throw std::invalid_argument("encode: heterogeneous vector");
    }
    Value v;
    v.kind = Kind::Vector;
    v.children = std::move(elems);
    return v;
}

bool Value::operator==(const Value& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Field: return fe == o.fe;
        case Kind::Bytes: return raw == o.raw;
        case Kind::Pair:
        case Kind::Vector: return children == o.children;
    }
    return false;
}

Schema Schema::of(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Field: return field();
        case Value::Kind::Bytes: return bytes();
        case Value::Kind::Pair: return pair(of(v.children[0]), of(v.children[1]));
        case Value::Kind::Vector:
            // empty vectors default to field elements
            return vector(v.children.empty() ? field() : of(v.children[0]));
    }
    return field();
}

namespace {

void encode_into(const Value& v, Encoder& enc) {
    switch (v.kind) {
        case Value::Kind::Field:
            enc.field(v.fe);
            break;
        case Value::Kind::Bytes:
            enc.bytes(v.raw);
            break;
        case Value::Kind::Pair:
            enc.u32(2);
            encode_into(v.children[0], enc);
            encode_into(v.children[1], enc);
            break;
        case Value::Kind::Vector:
            enc.u32((uint32_t)v.children.size());
            for (const auto& c : v.children) encode_into(c, enc);
            break;
    }
}

std::optional<Value> decode_one(const Schema& s, Decoder& dec) {
    switch (s.kind) {
        case Value::Kind::Field: {
            auto f = dec.field();
            if (!f) return std::nullopt;
            return Value::field(*f);
        }
        case Value::Kind::Bytes: {
            auto b = dec.bytes();
            if (!b) return std::nullopt;
            return Value::bytes(*b);
        }
        case Value::Kind::Pair: {
            auto n = dec.u32();
            if (!n || *n != 2) return std::nullopt;
            auto a = decode_one(s.children[0], dec);
            if (!a) return std::nullopt;
            auto b = decode_one(s.children[1], dec);
            if (!b) return std::nullopt;
            return Value::pair(std::move(*a), std::move(*b));
        }
        case Value::Kind::Vector: {
            auto n = dec.u32();
            if (!n) return std::nullopt;
            std::vector<Value> elems;
            elems.reserve(*n);
            for (uint32_t i = 0; i < *n; ++i) {
                auto e = decode_one(s.children[0], dec);
                if (!e) return std::nullopt;
                elems.push_back(std::move(*e));
            }
            Value v;
            v.kind = Value::Kind::Vector;
            v.children = std::move(elems);
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<uint8_t> encode(const Value& v) {
    Encoder enc;
    encode_into(v, enc);
    return enc.take();
}

std::optional<Value> decode(const Schema& schema, std::span<const uint8_t> data) {
    Decoder dec(data);
    auto v = decode_one(schema, dec);
    if (!v || !dec.done()) return std::nullopt;
    return v;
}

std::string to_hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (uint8_t b : data) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

std::optional<std::vector<uint8_t>> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) return std::nullopt;
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<uint8_t> out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = nib(hex[i]), lo = nib(hex[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back((uint8_t)((hi << 4) | lo));
    }
    return out;
}

}  // namespace anoncred
