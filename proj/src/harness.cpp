// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
