#pragma once

namespace valveflow {

/// Serial is the reference path; Parallel splits the work over OpenMP threads
/// and must reproduce Serial bit for bit.
enum class Exec { Serial, Parallel };

}  // namespace valveflow
