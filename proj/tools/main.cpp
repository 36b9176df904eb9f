// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namerec Authors

#include "cli.hpp"

int main(int argc, char** argv) { return namerec::cli::run(argc, argv); }
