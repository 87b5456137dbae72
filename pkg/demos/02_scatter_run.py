"""Monte Carlo scatter over random scenarios.

Samples random state pairs, random binary POVM effects, and random
lurking variables, then counts how often each reversal occurs.  Writes
the per-trial CSV that the figures scripts consume.
"""

from qys.experiments import records_to_csv, run_scatter
from qys.sampling import SampleConfig

config = SampleConfig(seed=2026)
records, summary = run_scatter(config, 5000, workers=4)

for key, est in summary.rates.items():
    print(f"{key:14s} {est.rate:7.4f}   (95% Wilson: [{est.low:.4f}, {est.high:.4f}])")

with open("scatter.csv", "w", newline="") as fh:
    fh.write(records_to_csv(records))
print("\nwrote scatter.csv; render with:")
print("  python3 figures/render_figures.py --input scatter.csv --panel fig1-left --output fig1.png")
