// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace satnet {

// First-kind Bessel function J_n(x) for small non-negative integer order.
// Power series below x = 12, Miller downward recurrence above; absolute
// error below 1e-9 on [0, 50] for the orders used here (1 and 3).
double bessel_j(int order, double x);

}  // namespace satnet
