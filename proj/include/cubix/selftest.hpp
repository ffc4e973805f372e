#pragma once

// The invariant suites behind the `selftest` command: every module's
// structural properties, run against freshly built objects.

#include <vector>

#include "cubix/chain.hpp"

namespace cubix {

std::vector<NamedCheck> selftest_cube(bool quick);
std::vector<NamedCheck> selftest_presheaf(bool quick);
std::vector<NamedCheck> selftest_simplicial(bool quick);
std::vector<NamedCheck> selftest_chain(bool quick);
std::vector<NamedCheck> selftest_enriched(bool quick);
std::vector<NamedCheck> selftest_all(bool quick);

} // namespace cubix
