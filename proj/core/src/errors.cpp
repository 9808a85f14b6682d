// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/errors.hpp"

namespace qmaexp::detail {

void throw_contract(const std::string& what) { throw ContractError(what); }

}  // namespace qmaexp::detail
