// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/statefiles.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <json.hpp>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"

namespace anoncred {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json shape_of(const SystemParams& params) {
    return json{{"n_attr", params.n_attr},
                {"n_revoc", params.n_revoc},
                {"n_issuer", params.n_issuer}};
}

void save_envelope(const std::filesystem::path& path, const std::string& format,
                   const SystemParams* params, std::span<const uint8_t> payload) {
    json doc;
    doc["format"] = format;
    doc["version"] = kFormatVersion;
    if (params) doc["shape"] = shape_of(*params);
    doc["payload"] = to_hex(payload);
    std::ofstream out(path);
    if (!out) fail(Err::IoError, "cannot write " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) fail(Err::IoError, "write failed: " + path.string());
}

std::vector<uint8_t> load_envelope(const std::filesystem::path& path, const std::string& format,
                                   const SystemParams* params) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot read " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(Err::ParseError, path.string() + ": " + e.what());
    }
    if (!doc.contains("format") || doc["format"] != format)
        fail(Err::ParseError, path.string() + ": expected format '" + format + "'");
    if (!doc.contains("version") || doc["version"] != kFormatVersion)
        fail(Err::ParseError, path.string() + ": unsupported format version");
    if (params) {
        if (!doc.contains("shape") || doc["shape"] != shape_of(*params))
            fail(Err::ParseError,
                 path.string() + ": file belongs to a different system configuration");
    }
    if (!doc.contains("payload") || !doc["payload"].is_string())
        fail(Err::ParseError, path.string() + ": missing payload");
    auto bytes = from_hex(doc["payload"].get<std::string>());
    if (!bytes) fail(Err::ParseError, path.string() + ": payload is not valid hex");
    return *bytes;
}

}  // namespace

void save_params(const std::filesystem::path& path, const SystemParams& params) {
    save_envelope(path, "system-params", &params, params.to_bytes());
}

SystemParams load_params(const std::filesystem::path& path) {
    auto payload = load_envelope(path, "system-params", nullptr);
    auto params = SystemParams::from_bytes(payload);
    if (!params) fail(Err::ParseError, path.string() + ": corrupt system parameters");
    return *params;
}

void save_universe(const std::filesystem::path& path, const SystemParams& params,
                   const AttributeUniverse& universe) {
    save_envelope(path, "attribute-universe", &params, universe.to_bytes());
}

AttributeUniverse load_universe(const std::filesystem::path& path, const SystemParams& params) {
    auto payload = load_envelope(path, "attribute-universe", &params);
    auto universe = AttributeUniverse::from_bytes(payload);
    if (!universe) fail(Err::ParseError, path.string() + ": corrupt attribute universe");
    return *universe;
}

void save_issuer_state(const std::filesystem::path& path, const SystemParams& params,
                       const IssuerState& issuer) {
    Encoder enc;
    enc.u8(1);
    enc.field_q(issuer.sk.sk);
    enc.append(vk_to_bytes(issuer.vk));
    enc.u32((uint32_t)issuer.attr_indices.size());
    for (uint32_t idx : issuer.attr_indices) enc.u32(idx);
    enc.u32((uint32_t)issuer.revocation_list.size());
    for (const Fr& h : issuer.revocation_list) enc.field(h);
    save_envelope(path, "issuer-key", &params, enc.data());
}

IssuerState load_issuer_state(const std::filesystem::path& path, const SystemParams& params) {
    auto payload = load_envelope(path, "issuer-key", &params);
    Decoder dec(payload);
    IssuerState issuer;
    auto ver = dec.u8();
    auto sk = dec.field_q();
    auto vkb = dec.take(64);
    if (!ver || *ver != 1 || !sk || !vkb)
        fail(Err::ParseError, path.string() + ": corrupt issuer key file");
    auto vk = vk_from_bytes(*vkb);
    if (!vk) fail(Err::ParseError, path.string() + ": corrupt issuer public key");
    issuer.sk.sk = *sk;
    issuer.vk = *vk;
    auto n_attr = dec.u32();
    if (!n_attr) fail(Err::ParseError, path.string() + ": corrupt issuer key file");
    for (uint32_t i = 0; i < *n_attr; ++i) {
        auto idx = dec.u32();
        if (!idx) fail(Err::ParseError, path.string() + ": corrupt issuer key file");
        issuer.attr_indices.push_back(*idx);
    }
    auto n_revoc = dec.u32();
    if (!n_revoc) fail(Err::ParseError, path.string() + ": corrupt issuer key file");
    Fr prev = Fr::zero();
    for (uint32_t i = 0; i < *n_revoc; ++i) {
        auto h = dec.field();
        if (!h || h->cmp(prev) <= 0)
            fail(Err::ParseError, path.string() + ": corrupt revocation list");
        issuer.revocation_list.push_back(*h);
        prev = *h;
    }
    if (!dec.done()) fail(Err::ParseError, path.string() + ": trailing bytes");
    issuer.revoc_root =
        vc_commit(params.revoc_vc(), revocation_layout(params, issuer.revocation_list));
    // consistency: the stored public key must match the signing key
    if (!(sig_derive_vk(issuer.sk) == issuer.vk))
        fail(Err::ParseError, path.string() + ": signing/verifying key mismatch");
    return issuer;
}

void save_bundle(const std::filesystem::path& path, const SystemParams& params,
                 const IssuerBundle& bundle) {
    save_envelope(path, "issuer-bundle", &params, bundle.to_bytes());
}

IssuerBundle load_bundle(const std::filesystem::path& path, const SystemParams& params) {
    auto payload = load_envelope(path, "issuer-bundle", &params);
    auto bundle = IssuerBundle::from_bytes(payload);
    if (!bundle) fail(Err::ParseError, path.string() + ": corrupt issuer bundle");
    return *bundle;
}

void save_credential(const std::filesystem::path& path, const SystemParams& params,
                     const Credential& cred) {
    save_envelope(path, "credential", &params, cred.to_bytes());
}

Credential load_credential(const std::filesystem::path& path, const SystemParams& params) {
    auto payload = load_envelope(path, "credential", &params);
    auto cred = Credential::from_bytes(payload);
    if (!cred) fail(Err::ParseError, path.string() + ": corrupt credential");
    return *cred;
}

void save_wallet(const std::filesystem::path& path, const SystemParams& params,
                 std::span<const Credential> wallet) {
    Encoder enc;
    enc.u32((uint32_t)wallet.size());
    for (const auto& cred : wallet) enc.bytes(cred.to_bytes());
    save_envelope(path, "wallet", &params, enc.data());
}

std::vector<Credential> load_wallet(const std::filesystem::path& path,
                                    const SystemParams& params) {
    auto payload = load_envelope(path, "wallet", &params);
    Decoder dec(payload);
    auto count = dec.u32();
    if (!count) fail(Err::ParseError, path.string() + ": corrupt wallet");
    std::vector<Credential> wallet;
    for (uint32_t i = 0; i < *count; ++i) {
        auto bytes = dec.bytes();
        if (!bytes) fail(Err::ParseError, path.string() + ": corrupt wallet");
        auto cred = Credential::from_bytes(*bytes);
        if (!cred) fail(Err::ParseError, path.string() + ": corrupt wallet entry");
        wallet.push_back(std::move(*cred));
    }
    if (!dec.done()) fail(Err::ParseError, path.string() + ": trailing bytes");
    return wallet;
}

void save_token(const std::filesystem::path& path, const SystemParams& params,
                const PresentationToken& token) {
    save_envelope(path, "presentation-token", &params, token.to_bytes());
}

PresentationToken load_token(const std::filesystem::path& path, const SystemParams& params) {
    auto payload = load_envelope(path, "presentation-token", &params);
    auto token = PresentationToken::from_bytes(payload);
    if (!token) fail(Err::ParseError, path.string() + ": corrupt presentation token");
    return *token;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot read " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(Err::IoError, "cannot write " + path.string());
    out << text;
    if (!out) fail(Err::IoError, "write failed: " + path.string());
}

ScopedFileLock::ScopedFileLock(const std::filesystem::path& target) {
    auto lock_path = target.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) fail(Err::IoError, "cannot open lock file " + lock_path);
    if (::flock(fd_, LOCK_EX) != 0) {
        ::close(fd_);
        fd_ = -1;
        fail(Err::IoError, "cannot lock " + lock_path);
    }
}

ScopedFileLock::~ScopedFileLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

}  // namespace anoncred
