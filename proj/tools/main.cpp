// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/cli.hpp"

int main(int argc, char** argv) { return rlab::cli_main(argc, argv); }
