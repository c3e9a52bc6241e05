"""Closed forms for constant speed ratio versus the quadrature engine.

For a constant ratio the nested moment integrals collapse to exponential
algebra in the complex rate z = -k_theta/2 + i*mu0. This script evaluates
the squared-distance mean and variance both ways and times them.
"""

import time

from brownian_unicycle import (NoiseParams, SpeedRatioProfile, d2_closed,
                               d4_closed, d4_moment, mean_squared_distance,
                               variance_d2_closed)

MU0 = 5.0
profile = SpeedRatioProfile.constant(MU0, theta0=0.0, s_max=1.0)

for level in (0.01, 1.0):
    params = NoiseParams(level, level)

    t0 = time.perf_counter()
    mean_fast = d2_closed(MU0, params, 1.0)
    var_fast = variance_d2_closed(MU0, params, 1.0)
    fast_time = time.perf_counter() - t0

    t0 = time.perf_counter()
    mean_slow = mean_squared_distance(profile, params, 1.0)
    d4_slow = d4_moment(profile, params, 1.0)
    slow_time = time.perf_counter() - t0
    var_slow = d4_slow - mean_slow ** 2

    print(f"noise level {level}:")
    print(f"  closed form:  <D^2>={mean_fast:.6f}  var={var_fast:.6f}"
          f"   ({fast_time * 1e6:.0f} us)")
    print(f"  quadrature :  <D^2>={mean_slow:.6f}  var={var_slow:.6f}"
          f"   ({slow_time:.2f} s)")
    print(f"  relative gap: mean {abs(mean_fast - mean_slow) / mean_fast:.2e},"
          f" var {abs(var_fast - var_slow) / var_fast:.2e}")
    print()
