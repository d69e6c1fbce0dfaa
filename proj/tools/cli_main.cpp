// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Role-oriented command line: issuer / holder / verifier flows over explicit
// files. See README.md for the full walkthrough and the exit-code table.

#include <CLI11.hpp>
#include <iostream>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"
#include "anoncred/statefiles.hpp"

using namespace anoncred;

namespace {

constexpr int kExitReject = 1;
constexpr int kExitSoftware = 70;

Rng make_rng(const std::optional<uint64_t>& seed) {
    return seed ? Rng(*seed) : Rng();
}

std::vector<uint8_t> parse_ctx(const std::string& hex) {
    auto bytes = from_hex(hex);
    if (!bytes) fail(Err::InvalidInput, "--ctx expects hex bytes");
    return *bytes;
}

ValueKind parse_kind(const std::string& kind) {
    if (kind == "numeric") return ValueKind::Numeric;
    if (kind == "categorical") return ValueKind::Categorical;
    fail(Err::InvalidInput, "attribute kind must be 'numeric' or 'categorical': " + kind);
}

ZkBackendKind parse_backend(const std::string& name, bool allow_test) {
    if (name == "prod") return ZkBackendKind::Production;
    if (name == "test") {
        if (!allow_test)
            fail(Err::TestBackendRefused,
                 "the test backend is not zero-knowledge; pass "
                 "--allow-insecure-test-backend to use it anyway");
        return ZkBackendKind::Test;
    }
    fail(Err::InvalidInput, "--backend must be 'prod' or 'test'");
}

IssuerSetView load_issuer_set(const std::vector<std::string>& paths,
                              const SystemParams& params) {
    if (paths.empty()) fail(Err::InvalidInput, "at least one --issuer-set bundle is required");
    IssuerSetView view;
    for (const auto& p : paths) view.entries.push_back(load_bundle(p, params));
    return view;
}

// "name=value" with kind-aware encoding
std::pair<std::string, std::string> split_assignment(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        fail(Err::InvalidInput, "--value expects name=value: " + text);
    return {text.substr(0, eq), text.substr(eq + 1)};
}

struct CommonArgs {
    std::string params_file;
    std::optional<uint64_t> seed;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anoncred: issuer-hiding revocable anonymous credentials"};
    app.require_subcommand(1);

    // ---- setup ----
    struct {
        CommonArgs common;
        std::string universe_file;
        uint32_t n_attr = 0, n_revoc = 0, n_issuer = 0;
    } setup_args;
    auto* cmd_setup = app.add_subcommand("setup", "generate system parameters");
    cmd_setup->add_option("--params", setup_args.common.params_file)->required();
    cmd_setup->add_option("--universe", setup_args.universe_file)->required();
    cmd_setup->add_option("--n-attr", setup_args.n_attr)->required();
    cmd_setup->add_option("--n-revoc", setup_args.n_revoc)->required();
    cmd_setup->add_option("--n-issuer", setup_args.n_issuer)->required();
    cmd_setup->add_option("--seed", setup_args.common.seed);

    // ---- universe add ----
    struct {
        std::string params_file, universe_file;
        std::vector<std::string> attrs;
    } uni_args;
    auto* cmd_universe = app.add_subcommand("universe", "attribute universe maintenance");
    auto* cmd_uni_add = cmd_universe->add_subcommand("add", "append attributes (name:kind)");
    cmd_uni_add->add_option("--params", uni_args.params_file)->required();
    cmd_uni_add->add_option("--universe", uni_args.universe_file)->required();
    cmd_uni_add->add_option("attrs", uni_args.attrs, "name:numeric|categorical")->required();

    // ---- issuer ----
    auto* cmd_issuer = app.add_subcommand("issuer", "issuer operations");
    struct {
        CommonArgs common;
        std::string universe_file, key_file, bundle_file;
        std::string attrs;  // comma-separated names
    } init_args;
    auto* cmd_init = cmd_issuer->add_subcommand("init", "create an issuer");
    cmd_init->add_option("--params", init_args.common.params_file)->required();
    cmd_init->add_option("--universe", init_args.universe_file)->required();
    cmd_init->add_option("--key", init_args.key_file)->required();
    cmd_init->add_option("--bundle", init_args.bundle_file)->required();
    cmd_init->add_option("--attrs", init_args.attrs, "comma-separated attribute names")
        ->required();
    cmd_init->add_option("--seed", init_args.common.seed);

    struct {
        CommonArgs common;
        std::string universe_file, key_file, out_file;
        std::vector<std::string> values;
    } issue_args;
    auto* cmd_issue = cmd_issuer->add_subcommand("issue", "issue a credential");
    cmd_issue->add_option("--params", issue_args.common.params_file)->required();
    cmd_issue->add_option("--universe", issue_args.universe_file)->required();
    cmd_issue->add_option("--key", issue_args.key_file)->required();
    cmd_issue->add_option("--out", issue_args.out_file)->required();
    cmd_issue->add_option("--value", issue_args.values, "name=value, one per attribute")
        ->required();
    cmd_issue->add_option("--seed", issue_args.common.seed);

    struct {
        std::string params_file, key_file, bundle_file, credential_file, hash_hex;
    } revoke_args;
    auto* cmd_revoke = cmd_issuer->add_subcommand("revoke", "revoke a credential");
    cmd_revoke->add_option("--params", revoke_args.params_file)->required();
    cmd_revoke->add_option("--key", revoke_args.key_file)->required();
    cmd_revoke->add_option("--bundle", revoke_args.bundle_file)->required();
    cmd_revoke->add_option("--credential", revoke_args.credential_file);
    cmd_revoke->add_option("--hash", revoke_args.hash_hex, "credential hash, 32-byte hex");

    struct {
        std::string params_file, key_file, bundle_file;
    } publish_args;
    auto* cmd_publish = cmd_issuer->add_subcommand("publish", "write the public bundle");
    cmd_publish->add_option("--params", publish_args.params_file)->required();
    cmd_publish->add_option("--key", publish_args.key_file)->required();
    cmd_publish->add_option("--bundle", publish_args.bundle_file)->required();

    // ---- holder ----
    auto* cmd_holder = app.add_subcommand("holder", "holder operations");
    struct {
        std::string params_file, wallet_file, credential_file;
    } store_args;
    auto* cmd_store = cmd_holder->add_subcommand("store", "add a credential to the wallet");
    cmd_store->add_option("--params", store_args.params_file)->required();
    cmd_store->add_option("--wallet", store_args.wallet_file)->required();
    cmd_store->add_option("--credential", store_args.credential_file)->required();

    struct {
        CommonArgs common;
        std::string universe_file, wallet_file, predicate_file, ctx_hex, out_file;
        std::vector<std::string> issuer_set;
        std::string backend = "prod";
        bool allow_test = false;
        uint32_t index = 0;
    } present_args;
    auto* cmd_present = cmd_holder->add_subcommand("present", "generate a presentation token");
    cmd_present->add_option("--params", present_args.common.params_file)->required();
    cmd_present->add_option("--universe", present_args.universe_file)->required();
    cmd_present->add_option("--wallet", present_args.wallet_file)->required();
    cmd_present->add_option("--index", present_args.index, "wallet entry (0-based)");
    cmd_present->add_option("--predicate", present_args.predicate_file)->required();
    cmd_present->add_option("--ctx", present_args.ctx_hex)->required();
    cmd_present->add_option("--issuer-set", present_args.issuer_set, "bundle files")
        ->required();
    cmd_present->add_option("--backend", present_args.backend, "prod|test");
    cmd_present->add_flag("--allow-insecure-test-backend", present_args.allow_test);
    cmd_present->add_option("--out", present_args.out_file)->required();
    cmd_present->add_option("--seed", present_args.common.seed);

    // ---- verifier ----
    auto* cmd_verifier = app.add_subcommand("verifier", "verifier operations");
    struct {
        std::string params_file, universe_file, token_file, predicate_file, ctx_hex;
        std::vector<std::string> issuer_set;
        bool allow_test = false;
    } verify_args;
    auto* cmd_verify = cmd_verifier->add_subcommand("verify", "check a presentation token");
    cmd_verify->add_option("--params", verify_args.params_file)->required();
    cmd_verify->add_option("--universe", verify_args.universe_file)->required();
    cmd_verify->add_option("--token", verify_args.token_file)->required();
    cmd_verify->add_option("--predicate", verify_args.predicate_file)->required();
    cmd_verify->add_option("--ctx", verify_args.ctx_hex)->required();
    cmd_verify->add_option("--issuer-set", verify_args.issuer_set, "bundle files")->required();
    cmd_verify->add_flag("--allow-insecure-test-backend", verify_args.allow_test);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_setup->parsed()) {
            Rng rng = make_rng(setup_args.common.seed);
            auto [params, universe] =
                setup(128, setup_args.n_attr, setup_args.n_revoc, setup_args.n_issuer, rng);
            save_params(setup_args.common.params_file, params);
            save_universe(setup_args.universe_file, params, universe);
            std::cout << "wrote " << setup_args.common.params_file << " and "
                      << setup_args.universe_file << "\n";
            return 0;
        }

        if (cmd_uni_add->parsed()) {
            auto params = load_params(uni_args.params_file);
            ScopedFileLock lock(uni_args.universe_file);
            auto universe = load_universe(uni_args.universe_file, params);
            for (const auto& spec : uni_args.attrs) {
                auto colon = spec.find(':');
                if (colon == std::string::npos || colon == 0)
                    fail(Err::InvalidInput, "expected name:kind, got: " + spec);
                universe.add(spec.substr(0, colon), parse_kind(spec.substr(colon + 1)));
            }
            save_universe(uni_args.universe_file, params, universe);
            std::cout << "universe now has " << universe.size() << " attributes\n";
            return 0;
        }

        if (cmd_init->parsed()) {
            auto params = load_params(init_args.common.params_file);
            auto universe = load_universe(init_args.universe_file, params);
            std::vector<uint32_t> chosen;
            std::stringstream ss(init_args.attrs);
            std::string name;
            while (std::getline(ss, name, ',')) {
                const AttributeId* attr = universe.by_name(name);
                if (!attr) fail(Err::InvalidInput, "unknown attribute: " + name);
                chosen.push_back(attr->idx);
            }
            Rng rng = make_rng(init_args.common.seed);
            auto issuer = issuer_setup(params, universe, chosen, rng);
            save_issuer_state(init_args.key_file, params, issuer);
            save_bundle(init_args.bundle_file, params, issuer_bundle(issuer));
            std::cout << "issuer key in " << init_args.key_file << ", public bundle in "
                      << init_args.bundle_file << "\n";
            return 0;
        }

        if (cmd_issue->parsed()) {
            auto params = load_params(issue_args.common.params_file);
            auto universe = load_universe(issue_args.universe_file, params);
            auto issuer = load_issuer_state(issue_args.key_file, params);
            std::map<std::string, std::string> assignments;
            for (const auto& v : issue_args.values) assignments.insert(split_assignment(v));
            std::vector<Fr> values;
            for (uint32_t idx : issuer.attr_indices) {
                const AttributeId* attr = universe.by_idx(idx);
                auto it = assignments.find(attr->name);
                if (it == assignments.end())
                    fail(Err::LengthMismatch, "missing --value for attribute " + attr->name);
                values.push_back(encode_attribute_value(attr->kind, it->second));
                assignments.erase(it);
            }
            if (!assignments.empty())
                fail(Err::InvalidInput,
                     "issuer does not support attribute: " + assignments.begin()->first);
            Rng rng = make_rng(issue_args.common.seed);
            auto cred = issue_cred(params, universe, issuer, values, rng);
            save_credential(issue_args.out_file, params, cred);
            std::cout << "credential written to " << issue_args.out_file << "\n";
            return 0;
        }

        if (cmd_revoke->parsed()) {
            auto params = load_params(revoke_args.params_file);
            ScopedFileLock lock(revoke_args.key_file);
            auto issuer = load_issuer_state(revoke_args.key_file, params);
            Fr hash;
            if (!revoke_args.credential_file.empty()) {
                hash = credential_hash(load_credential(revoke_args.credential_file, params));
            } else if (!revoke_args.hash_hex.empty()) {
                auto bytes = from_hex(revoke_args.hash_hex);
                if (!bytes || bytes->size() != 32)
                    fail(Err::InvalidInput, "--hash expects 32 hex-encoded bytes");
                auto h = Fr::from_bytes(*bytes);
                if (!h) fail(Err::InvalidInput, "--hash is not a canonical field element");
                hash = *h;
            } else {
                fail(Err::InvalidInput, "revoke needs --credential or --hash");
            }
            issuer = revoke_hash(params, issuer, hash);
            save_issuer_state(revoke_args.key_file, params, issuer);
            save_bundle(revoke_args.bundle_file, params, issuer_bundle(issuer));
            std::cout << "revocation list now has " << issuer.revocation_list.size()
                      << " entries\n";
            return 0;
        }

        if (cmd_publish->parsed()) {
            auto params = load_params(publish_args.params_file);
            auto issuer = load_issuer_state(publish_args.key_file, params);
            save_bundle(publish_args.bundle_file, params, issuer_bundle(issuer));
            std::cout << "bundle written to " << publish_args.bundle_file << "\n";
            return 0;
        }

        if (cmd_store->parsed()) {
            auto params = load_params(store_args.params_file);
            auto cred = load_credential(store_args.credential_file, params);
            ScopedFileLock lock(store_args.wallet_file);
            std::vector<Credential> wallet;
            if (std::filesystem::exists(store_args.wallet_file))
                wallet = load_wallet(store_args.wallet_file, params);
            wallet.push_back(std::move(cred));
            save_wallet(store_args.wallet_file, params, wallet);
            std::cout << "wallet holds " << wallet.size() << " credentials\n";
            return 0;
        }

        if (cmd_present->parsed()) {
            auto params = load_params(present_args.common.params_file);
            auto universe = load_universe(present_args.universe_file, params);
            auto wallet = load_wallet(present_args.wallet_file, params);
            if (present_args.index >= wallet.size())
                fail(Err::InvalidInput, "wallet index out of range");
            auto phi = parse_predicate(read_text_file(present_args.predicate_file),
                                       universe.attributes());
            auto view = load_issuer_set(present_args.issuer_set, params);
            auto ctx = parse_ctx(present_args.ctx_hex);
            auto backend = parse_backend(present_args.backend, present_args.allow_test);
            if (view.entries.size() == 1)
                std::cerr << "warning: a singleton hiding set provides no issuer hiding\n";
            Rng rng = make_rng(present_args.common.seed);
            KeyCache cache;
            auto token = present_cred(params, cache, backend, wallet[present_args.index], phi,
                                      ctx, view, rng);
            save_token(present_args.out_file, params, token);
            std::cout << "token written to " << present_args.out_file << "\n";
            return 0;
        }

        if (cmd_verify->parsed()) {
            auto params = load_params(verify_args.params_file);
            auto universe = load_universe(verify_args.universe_file, params);
            auto token = load_token(verify_args.token_file, params);
            auto phi = parse_predicate(read_text_file(verify_args.predicate_file),
                                       universe.attributes());
            auto view = load_issuer_set(verify_args.issuer_set, params);
            auto ctx = parse_ctx(verify_args.ctx_hex);
            KeyCache cache;
            bool ok = verify_presentation(params, cache, token, phi, ctx, view,
                                          verify_args.allow_test);
            std::cout << (ok ? "ACCEPT" : "REJECT") << "\n";
            return ok ? 0 : kExitReject;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSoftware;
    }
    return kExitSoftware;
}
