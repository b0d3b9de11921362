"""Generate the bundled synthetic flood record.

Routes a Gaussian inflow pulse over baseflow through the classical linear
Muskingum recursion (K = 12 h, X = 0.2, dt = 12 h) so that the bundled
series is consistent with a storage model of the fitted family.  Values
are rounded to one decimal to look like gauge readings.
"""

import csv
import math
import pathlib

K, X, DT = 12.0, 0.2, 12.0
T = 20

denom = K - K * X + 0.5 * DT
c0 = (-K * X + 0.5 * DT) / denom
c1 = (K * X + 0.5 * DT) / denom
c2 = (K - K * X - 0.5 * DT) / denom
assert abs(c0 + c1 + c2 - 1.0) < 1e-12

inflow = [22.0 + 80.0 * math.exp(-(((j - 6.0) / 3.0) ** 2)) for j in range(T)]
outflow = [inflow[0]]
for j in range(T - 1):
    outflow.append(c0 * inflow[j + 1] + c1 * inflow[j] + c2 * outflow[j])

out = pathlib.Path(__file__).resolve().parents[1] / "src" / "qnopt" / "data" / "flood_synthetic.csv"
out.parent.mkdir(parents=True, exist_ok=True)
with out.open("w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["inflow", "outflow"])
    for i, q in zip(inflow, outflow):
        w.writerow([f"{i:.1f}", f"{q:.1f}"])
print(f"wrote {out} ({T} rows)")
