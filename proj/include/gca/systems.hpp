#pragma once

#include "gca/action.hpp"

namespace gca {

// The Grigorchuk action on {0,1}*: generators a, b, c, d with
//   a.(0w) = 1w   a.(1w) = 0w      restrictions a|_0 = a|_1 = e
//   b.(0w) = 0(a.w)  b.(1w) = 1(c.w)
//   c.(0w) = 0(a.w)  c.(1w) = 1(d.w)
//   d.(0w) = 0w      d.(1w) = 1(b.w)
SystemPtr grigorchuk();

// The binary adding machine (2-odometer).
SystemPtr odometer2();

// Built-ins by name: "grigorchuk", "odometer2".
SystemPtr builtin_system(std::string_view name);

bool is_grigorchuk(const SystemPtr& sys);

}  // namespace gca
