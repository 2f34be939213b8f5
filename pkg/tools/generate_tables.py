"""Regenerate the simulated blocks of ``src/ardlkit/tables.py``.

Run from the repository root::

    python tools/generate_tables.py

Takes a few minutes on one core. Seeds are fixed so the output is reproducible.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from ardlkit import montecarlo

REPS = 200_000
DFGLS_N = (15, 20, 25, 30, 40, 50, 75, 100, 150, 200, 300, 500, 1000)
DFGLS_ASYMPTOTIC = {
    "constant": (-2.56574, -1.94100, -1.61682),
    "constant_trend": (-3.48, -2.89, -2.57),
}
CUSUMSQ_R = (*range(4, 31), 35, 40, 45, 50, 60, 70, 80, 90, 100, 125, 150, 200, 250, 300, 400, 500, 750, 1000)

TABLES = Path(__file__).resolve().parents[1] / "src" / "ardlkit" / "tables.py"


def dfgls_block() -> str:
    lines = ["DFGLS: dict[str, dict[float, tuple[float, float, float]]] = {"]
    for det in ("constant", "constant_trend"):
        lines.append(f"    {det!r}: {{")
        for n in DFGLS_N:
            stats = montecarlo.null_statistics("dfgls", n, REPS, det, seed=20100 + n)
            q = np.quantile(stats, [0.01, 0.05, 0.10])
            lines.append(f"        {n}: ({q[0]:.4f}, {q[1]:.4f}, {q[2]:.4f}),")
            print(det, n, q.round(4), flush=True)
        a = DFGLS_ASYMPTOTIC[det]
        lines.append(f"        math.inf: ({a[0]}, {a[1]}, {a[2]}),")
        lines.append("    },")
    lines.append("}")
    return "\n".join(lines)


def cusumsq_block() -> str:
    lines = ["CUSUMSQ_C0: dict[int, float] = {"]
    for r in CUSUMSQ_R:
        c0 = float(np.quantile(montecarlo.cusumsq_max_deviation(r, REPS, seed=30000 + r), 0.95))
        lines.append(f"    {r}: {c0:.5f},")
        print("cusumsq", r, round(c0, 5), flush=True)
    lines.append("}")
    return "\n".join(lines)


def main() -> None:
    block = "# BEGIN GENERATED\n" + dfgls_block() + "\n" + cusumsq_block() + "\n# END GENERATED"
    text = TABLES.read_text()
    text = re.sub(r"# BEGIN GENERATED.*# END GENERATED", lambda _: block, text, flags=re.S)
    TABLES.write_text(text)


if __name__ == "__main__":
    main()
