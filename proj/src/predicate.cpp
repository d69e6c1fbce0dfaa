// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/predicate.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"
#include "anoncred/poseidon.hpp"

namespace anoncred {

Fr encode_attribute_value(ValueKind kind, const std::string& text) {
    if (kind == ValueKind::Categorical) {
        return hash_to_field({reinterpret_cast<const uint8_t*>(text.data()), text.size()});
    }
    uint64_t v = 0;
    std::string_view sv(text);
    int base = 10;
    if (sv.starts_with("0x") || sv.starts_with("0X")) {
        sv.remove_prefix(2);
        base = 16;
    }
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v, base);
    if (ec != std::errc() || ptr != sv.data() + sv.size())
        fail(Err::ValueOutOfRange, "numeric attribute value out of 64-bit range: " + text);
    return Fr::from_u64(v);
}

const char* cmp_op_name(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

namespace {

uint32_t clause_idx(const Clause& c) {
    return std::visit([](const auto& cl) { return cl.idx; }, c);
}

bool eval_compare(const CompareClause& c, const Fr& value) {
    int cmp = value.cmp(c.constant);
    switch (c.op) {
        case CmpOp::Lt: return cmp < 0;
        case CmpOp::Le: return cmp <= 0;
        case CmpOp::Eq: return cmp == 0;
        case CmpOp::Ge: return cmp >= 0;
        case CmpOp::Gt: return cmp > 0;
        case CmpOp::Ne: return cmp != 0;
    }
    return false;
}

}  // namespace

bool pred_eval(const Predicate& phi, const std::map<uint32_t, Fr>& assignment) {
    for (const auto& clause : phi.clauses) {
        uint32_t idx = clause_idx(clause);
        auto it = assignment.find(idx);
        if (it == assignment.end())
            fail(Err::MissingAttribute,
                 "assignment does not cover attribute index " + std::to_string(idx));
        const Fr& value = it->second;

        bool ok = std::visit(
            [&](const auto& cl) -> bool {
                using T = std::decay_t<decltype(cl)>;
                if constexpr (std::is_same_v<T, CompareClause>) {
                    return eval_compare(cl, value);
                } else if constexpr (std::is_same_v<T, MemberClause>) {
                    return std::any_of(cl.members.begin(), cl.members.end(),
                                       [&](const Fr& m) { return m == value; });
                } else {
                    // the committed layout pins 0 and r-1 as boundary entries,
                    // so non-membership is only provable strictly inside them
                    if (value.is_zero() || value == -Fr::one()) return false;
                    return std::none_of(cl.list.begin(), cl.list.end(),
                                        [&](const Fr& m) { return m == value; });
                }
            },
            clause);
        if (!ok) return false;
    }
    return true;
}

std::set<uint32_t> pred_required_attrs(const Predicate& phi) {
    std::set<uint32_t> out;
    for (const auto& clause : phi.clauses) out.insert(clause_idx(clause));
    return out;
}

std::vector<uint32_t> pred_slot_indices(const Predicate& phi) {
    std::vector<uint32_t> out;
    for (const auto& clause : phi.clauses) {
        uint32_t idx = clause_idx(clause);
        if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
    }
    return out;
}

namespace {

uint32_t depth_for_capacity(uint32_t capacity) {
    uint32_t depth = 1;
    while ((2u << (depth - 1)) < capacity) ++depth;
    return depth;
}

}  // namespace

PredicateShape pred_structure(const Predicate& phi) {
    PredicateShape shape;
    auto slots = pred_slot_indices(phi);
    shape.num_slots = (uint32_t)slots.size();
    for (const auto& clause : phi.clauses) {
        ClauseShape cs;
        uint32_t idx = clause_idx(clause);
        cs.slot = (uint32_t)(std::find(slots.begin(), slots.end(), idx) - slots.begin());
        std::visit(
            [&](const auto& cl) {
                using T = std::decay_t<decltype(cl)>;
                if constexpr (std::is_same_v<T, CompareClause>) {
                    cs.kind = ClauseShape::Kind::Compare;
                    cs.op = cl.op;
                    cs.numeric = cl.numeric;
                } else if constexpr (std::is_same_v<T, MemberClause>) {
                    cs.kind = ClauseShape::Kind::Member;
                    cs.member_count = (uint32_t)cl.members.size();
                } else {
                    cs.kind = ClauseShape::Kind::NotInList;
                    cs.list_depth = depth_for_capacity(cl.capacity);
                }
            },
            clause);
        shape.clauses.push_back(cs);
    }
    return shape;
}

std::vector<uint8_t> pred_shape_id(const Predicate& phi, uint32_t n_attr, uint32_t n_revoc,
                                   uint32_t n_issuer, uint32_t bit_width) {
    PredicateShape shape = pred_structure(phi);
    Encoder enc;
    enc.u8(1);  // shape format version
    enc.u32(n_attr);
    enc.u32(n_revoc);
    enc.u32(n_issuer);
    enc.u32(bit_width);
    enc.u32(shape.num_slots);
    enc.u32((uint32_t)shape.clauses.size());
    for (const auto& cs : shape.clauses) {
        enc.u8((uint8_t)cs.kind);
        enc.u32(cs.slot);
        enc.u8((uint8_t)cs.op);
        enc.u8(cs.numeric ? 1 : 0);
        enc.u32(cs.member_count);
        enc.u32(cs.list_depth);
    }
    return enc.take();
}

// =============================================================================
// text format
// =============================================================================

namespace {

struct Tokenizer {
    std::string_view text;
    size_t pos = 0;
    int line = 1;

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == '\n') {
                ++line;
                ++pos;
            } else if (isspace((unsigned char)c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    [[noreturn]] void error(const std::string& msg) {
        fail(Err::ParseError, "predicate line " + std::to_string(line) + ": " + msg);
    }

    std::string next() {
        skip_space();
        if (pos >= text.size()) error("unexpected end of input");
        char c = text[pos];
        if (c == '"') {
            size_t end = text.find('"', pos + 1);
            if (end == std::string_view::npos) error("unterminated string");
            std::string s(text.substr(pos, end - pos + 1));
            pos = end + 1;
            return s;
        }
        if (std::string_view("{},[]").find(c) != std::string_view::npos) {
            ++pos;
            return std::string(1, c);
        }
        if (std::string_view("<>=!").find(c) != std::string_view::npos) {
            size_t start = pos;
            while (pos < text.size() &&
                   std::string_view("<>=!").find(text[pos]) != std::string_view::npos)
                ++pos;
            return std::string(text.substr(start, pos - start));
        }
        size_t start = pos;
        while (pos < text.size() && !isspace((unsigned char)text[pos]) &&
               std::string_view("{},[]<>=!#").find(text[pos]) == std::string_view::npos)
            ++pos;
        if (pos == start) error("unexpected character");
        return std::string(text.substr(start, pos - start));
    }

    std::string peek() {
        size_t save_pos = pos;
        int save_line = line;
        std::string t = eof() ? "" : next();
        pos = save_pos;
        line = save_line;
        return t;
    }
};

const AttributeId& resolve(Tokenizer& tok, std::span<const AttributeId> universe,
                           const std::string& name) {
    for (const auto& a : universe)
        if (a.name == name) return a;
    tok.error("unknown attribute '" + name + "'");
}

bool is_quoted(const std::string& t) { return t.size() >= 2 && t.front() == '"'; }

Fr parse_constant(Tokenizer& tok, const AttributeId& attr, const std::string& token) {
    if (is_quoted(token)) {
        if (attr.kind != ValueKind::Categorical)
            tok.error("string constant for numeric attribute '" + attr.name + "'");
        return encode_attribute_value(ValueKind::Categorical,
                                      token.substr(1, token.size() - 2));
    }
    if (attr.kind != ValueKind::Numeric)
        tok.error("numeric constant for categorical attribute '" + attr.name + "'");
    try {
        return encode_attribute_value(ValueKind::Numeric, token);
    } catch (const Error&) {
        tok.error("bad numeric constant '" + token + "'");
    }
}

std::optional<CmpOp> to_op(const std::string& t) {
    if (t == "<") return CmpOp::Lt;
    if (t == "<=") return CmpOp::Le;
    if (t == "=" || t == "==") return CmpOp::Eq;
    if (t == ">=") return CmpOp::Ge;
    if (t == ">") return CmpOp::Gt;
    if (t == "!=") return CmpOp::Ne;
    return std::nullopt;
}

uint32_t next_pow2_u32(uint64_t v) {
    uint32_t p = 2;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

Predicate parse_predicate(const std::string& text, std::span<const AttributeId> universe) {
    Tokenizer tok{text};
    Predicate phi;
    while (!tok.eof()) {
        std::string name = tok.next();
        const AttributeId& attr = resolve(tok, universe, name);
        std::string word = tok.next();

        if (auto op = to_op(word)) {
            bool numeric = attr.kind == ValueKind::Numeric;
            if (!numeric && *op != CmpOp::Eq && *op != CmpOp::Ne)
                tok.error("order comparison on categorical attribute '" + attr.name + "'");
            CompareClause c;
            c.idx = attr.idx;
            c.op = *op;
            c.numeric = numeric;
            c.constant = parse_constant(tok, attr, tok.next());
            phi.clauses.push_back(c);
            continue;
        }

        if (word == "in") {
            if (tok.next() != "{") tok.error("expected '{' after 'in'");
            MemberClause c;
            c.idx = attr.idx;
            for (;;) {
                std::string t = tok.next();
                if (t == "}") break;
                if (t == ",") continue;
                c.members.push_back(parse_constant(tok, attr, t));
            }
            if (c.members.empty()) tok.error("empty membership set");
            phi.clauses.push_back(c);
            continue;
        }

        if (word == "notin") {
            NotInListClause c;
            c.idx = attr.idx;
            std::string t = tok.next();
            if (t == "[") {
                std::string cap = tok.next();
                uint64_t v = 0;
                auto [p, ec] = std::from_chars(cap.data(), cap.data() + cap.size(), v);
                if (ec != std::errc() || p != cap.data() + cap.size() || v < 2)
                    tok.error("bad capacity '" + cap + "'");
                if ((v & (v - 1)) != 0) tok.error("capacity must be a power of two");
                c.capacity = (uint32_t)v;
                if (tok.next() != "]") tok.error("expected ']'");
                t = tok.next();
            }
            if (t != "{") tok.error("expected '{' after 'notin'");
            for (;;) {
                std::string m = tok.next();
                if (m == "}") break;
                if (m == ",") continue;
                c.list.push_back(parse_constant(tok, attr, m));
            }
            std::sort(c.list.begin(), c.list.end(),
                      [](const Fr& a, const Fr& b) { return a.cmp(b) < 0; });
            c.list.erase(std::unique(c.list.begin(), c.list.end()), c.list.end());
            for (const Fr& v : c.list) {
                if (v.is_zero() || v == -Fr::one())
                    tok.error("list entries must lie strictly inside (0, r-1)");
            }
            if (c.capacity == 0) c.capacity = next_pow2_u32(c.list.size() + 2);
            if (c.list.size() > c.capacity - 2) tok.error("list exceeds committed capacity");
            phi.clauses.push_back(c);
            continue;
        }

        tok.error("expected comparison operator, 'in' or 'notin', got '" + word + "'");
    }
    if (phi.clauses.empty()) fail(Err::ParseError, "predicate has no clauses");
    return phi;
}

std::string predicate_to_text(const Predicate& phi, std::span<const AttributeId> universe) {
    auto name_of = [&](uint32_t idx) -> std::string {
        for (const auto& a : universe)
            if (a.idx == idx) return a.name;
        return "attr" + std::to_string(idx);
    };
    auto fr_hex = [](const Fr& v) {
        auto bytes = v.to_bytes();
        // trim leading zero bytes for readability
        int last = 31;
        while (last > 0 && bytes[last] == 0) --last;
        std::string s = "0x";
        for (int i = last; i >= 0; --i) {
            static const char* d = "0123456789abcdef";
            s.push_back(d[bytes[i] >> 4]);
            s.push_back(d[bytes[i] & 0xf]);
        }
        return s;
    };

    std::ostringstream out;
    for (const auto& clause : phi.clauses) {
        std::visit(
            [&](const auto& cl) {
                using T = std::decay_t<decltype(cl)>;
                if constexpr (std::is_same_v<T, CompareClause>) {
                    out << name_of(cl.idx) << " " << cmp_op_name(cl.op) << " "
                        << fr_hex(cl.constant) << "\n";
                } else if constexpr (std::is_same_v<T, MemberClause>) {
                    out << name_of(cl.idx) << " in {";
                    for (size_t i = 0; i < cl.members.size(); ++i)
                        out << (i ? ", " : " ") << fr_hex(cl.members[i]);
                    out << " }\n";
                } else {
                    out << name_of(cl.idx) << " notin[" << cl.capacity << "] {";
                    for (size_t i = 0; i < cl.list.size(); ++i)
                        out << (i ? ", " : " ") << fr_hex(cl.list[i]);
                    out << " }\n";
                }
            },
            clause);
    }
    return out.str();
}

}  // namespace anoncred
