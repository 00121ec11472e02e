#pragma once

namespace wfa::parallel {

/// Number of worker threads used by the OpenMP kernels. 1 selects the
/// serial reference kernels. Defaults to the OpenMP runtime's choice.
void set_threads(int n);
int threads();

}  // namespace wfa::parallel
