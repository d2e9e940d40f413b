#pragma once

namespace kgh {

// Every data-parallel kernel has an OpenMP path and a serial reference path.
// Both produce bit-identical results; the serial path exists for testing and
// for callers that already run inside a parallel region.
enum class Execution { serial, parallel };

} // namespace kgh
