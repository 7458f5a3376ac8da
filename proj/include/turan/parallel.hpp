#pragma once

namespace turan {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path exists for differential tests and benchmarks.
enum class Exec { serial, parallel };

/// Sets the OpenMP worker count used by Exec::parallel kernels (<= 0 keeps the runtime default).
void set_workers(int workers);
int workers();

} // namespace turan
