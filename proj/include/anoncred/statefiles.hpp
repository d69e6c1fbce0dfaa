// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// File persistence for the CLI: a human-readable JSON envelope carrying a
// format tag, the shape parameters, and the canonical binary payload as hex.
// The binary payload is authoritative; the envelope is transport.

#pragma once

#include <filesystem>

#include "anoncred/protocol.hpp"

namespace anoncred {

// issuer's private state: signing key plus the mutable revocation list
struct IssuerSecretFile {
    IssuerState state;
};

void save_params(const std::filesystem::path& path, const SystemParams& params);
SystemParams load_params(const std::filesystem::path& path);

void save_universe(const std::filesystem::path& path, const SystemParams& params,
                   const AttributeUniverse& universe);
AttributeUniverse load_universe(const std::filesystem::path& path, const SystemParams& params);

void save_issuer_state(const std::filesystem::path& path, const SystemParams& params,
                       const IssuerState& issuer);
IssuerState load_issuer_state(const std::filesystem::path& path, const SystemParams& params);

void save_bundle(const std::filesystem::path& path, const SystemParams& params,
                 const IssuerBundle& bundle);
IssuerBundle load_bundle(const std::filesystem::path& path, const SystemParams& params);

void save_credential(const std::filesystem::path& path, const SystemParams& params,
                     const Credential& cred);
Credential load_credential(const std::filesystem::path& path, const SystemParams& params);

void save_wallet(const std::filesystem::path& path, const SystemParams& params,
                 std::span<const Credential> wallet);
std::vector<Credential> load_wallet(const std::filesystem::path& path,
                                    const SystemParams& params);

void save_token(const std::filesystem::path& path, const SystemParams& params,
                const PresentationToken& token);
PresentationToken load_token(const std::filesystem::path& path, const SystemParams& params);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// advisory lock (flock) guarding concurrent CLI mutations of one state file
class ScopedFileLock {
public:
    explicit ScopedFileLock(const std::filesystem::path& target);
    ~ScopedFileLock();
    ScopedFileLock(const ScopedFileLock&) = delete;
    ScopedFileLock& operator=(const ScopedFileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace anoncred
