#pragma once

namespace axarith {

// Worker count used by the parallel kernels: an explicit request wins,
// otherwise the APPROX_THREADS environment variable, otherwise the OpenMP
// default (1 when built without OpenMP). Always >= 1.
int effective_threads(int requested = 0);

}  // namespace axarith
