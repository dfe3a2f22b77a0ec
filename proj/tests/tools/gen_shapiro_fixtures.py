#!/usr/bin/env python3
"""Generate golden Shapiro-Wilk fixtures from scipy.stats.shapiro.

Run offline; the committed CSV is the reference the C++ tests check against.
Columns: name, n, w, p, values (semicolon separated).
"""

import csv
import pathlib

import numpy as np
from scipy import stats

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "shapiro_wilk_golden.csv"

# Published reference sample for AS R94 (complete-sample case):
# expected w=.83467, pw=.000914.
ROYSTON_EXAMPLE = [
    0.139, 0.157, 0.175, 0.256, 0.344, 0.413, 0.503, 0.577, 0.614, 0.655,
    0.954, 1.392, 1.557, 1.648, 1.690, 1.994, 2.174, 2.206, 3.245, 3.510,
    3.571, 4.354, 4.980, 6.084, 8.351,
]


def main() -> None:
    rng = np.random.default_rng(20200159)
    fixtures = [("royston_example_n25", np.asarray(ROYSTON_EXAMPLE))]

    for n in (3, 4, 5, 6, 8, 11, 12, 15, 20, 25, 30, 50, 77, 93, 105, 200, 500):
        fixtures.append((f"normal_n{n}", rng.normal(10.0, 2.5, n)))
    fixtures.append(("skewed_n3", np.asarray([1.0, 1.1, 9.0])))
    for n in (12, 50, 105):
        fixtures.append((f"uniform_n{n}", rng.uniform(0.0, 1.0, n)))
        fixtures.append((f"exponential_n{n}", rng.exponential(3.0, n)))
    fixtures.append(("lognormal_sigma1_n50", rng.lognormal(0.0, 1.0, 50)))
    fixtures.append(("t3_n80", rng.standard_t(3, 80)))
    fixtures.append(("bimodal_n60",
                     np.concatenate([rng.normal(-3, 0.5, 30), rng.normal(3, 0.5, 30)])))

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "n", "w", "p", "values"])
        for name, values in fixtures:
            w, p = stats.shapiro(values)
            writer.writerow([
                name,
                len(values),
                f"{w:.10f}",
                f"{p:.10g}",
                ";".join(f"{v:.17g}" for v in values),
            ])
    print(f"wrote {OUT} ({len(fixtures)} fixtures)")


if __name__ == "__main__":
    main()
