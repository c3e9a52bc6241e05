"""Generate trajectory samples as CSV for external plotting.

Writes the noise-free path plus a handful of noisy realizations of the
constant-ratio motion to trajectories.csv (columns path_id, s, x, y,
theta). Any plotting tool can overlay them; path 0 is the clean circle.
"""

import numpy as np

from brownian_unicycle import (NoiseParams, SimConfig, SpeedRatioProfile,
                               mean_heading, simulate_trial)

N_PATHS = 5
profile = SpeedRatioProfile.constant(5.0, theta0=0.0, s_max=1.0)
params = NoiseParams(0.01, 0.01)
config = SimConfig(profile=profile, params=params, s_final=1.0,
                   steps=2000, trials=N_PATHS, master_seed=1)

ds = config.s_final / config.steps
grid = ds * np.arange(config.steps + 1)
headings = mean_heading(profile, grid)
x_det = np.concatenate(([0.0], np.cumsum(
    0.5 * (np.cos(headings[:-1]) + np.cos(headings[1:])) * ds)))
y_det = np.concatenate(([0.0], np.cumsum(
    0.5 * (np.sin(headings[:-1]) + np.sin(headings[1:])) * ds)))

rows = [f"0,{s:.6g},{x:.10g},{y:.10g},{th:.10g}"
        for s, x, y, th in zip(grid, x_det, y_det, headings)]
for trial in range(N_PATHS):
    path = simulate_trial(config, trial, return_path=True)
    rows.extend(f"{trial + 1},{r[0]:.6g},{r[1]:.10g},{r[2]:.10g},{r[3]:.10g}"
                for r in path)

with open("trajectories.csv", "w", encoding="utf-8") as fh:
    fh.write("path_id,s,x,y,theta\n")
    fh.write("\n".join(rows) + "\n")

print(f"wrote trajectories.csv with {N_PATHS} noisy paths plus the clean one")
final = simulate_trial(config, 0)
print(f"first noisy endpoint: x={final[0]:+.4f} y={final[1]:+.4f} "
      f"theta={final[2]:.4f}")
