"""Gnuplot script emitter for simulation results.

The script embeds its data as inline datablocks, so it runs without the CSV.
For each series length ``T`` it draws two pages, each a 2x3 panel grid with
one panel per memory parameter ``d``:

* medians (solid) and 2.5%/97.5% quantiles (dashed) against the true
  correlation, with the identity line in red;
* standard deviations against the true correlation.

Window lengths are drawn in shades of grey, darkest for the shortest.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .io import fmt
from .montecarlo import McSummary


def _grey(k: int, n: int) -> str:
    level = 0 if n <= 1 else int(round(190 * k / (n - 1)))
    return f"#{level:02x}{level:02x}{level:02x}"


def gnuplot_script(rows: Sequence[McSummary], output: str = "dmca_study.pdf") -> str:
    ok = [r for r in rows if r.ok]
    blocks: dict[tuple[int, float, int], list[McSummary]] = defaultdict(list)
    for r in ok:
        blocks[(r.T, r.d, r.lam)].append(r)
    ts = sorted({r.T for r in ok})
    ds = sorted({r.d for r in ok})
    lams = sorted({r.lam for r in ok})

    out = [
        "# DMCA coefficient simulation summary",
        "# columns in each datablock: rho q025 q50 q975 stddev",
        'if (!exists("outfile")) outfile = "%s"' % output,
        "set terminal pdfcairo size 29cm,18cm font ',9'",
        "set output outfile",
        "set datafile separator whitespace",
        "",
    ]
    names: dict[tuple[int, float, int], str] = {}
    for n, key in enumerate(sorted(blocks)):
        name = f"$cell{n}"
        names[key] = name
        T, d, lam = key
        out.append(f"# T={T} d={fmt(d)} lambda={lam}")
        out.append(f"{name} << EOD")
        for r in sorted(blocks[key], key=lambda s: s.rho):
            out.append(" ".join(fmt(v) for v in (r.rho, r.q025, r.q50, r.q975, r.stddev)))
        out.append("EOD")
        out.append("")

    ncols = max(1, min(3, len(ds)))
    nrows = max(1, -(-len(ds) // ncols))
    for T in ts:
        for page in ("estimate", "stddev"):
            title = "DMCA coefficient" if page == "estimate" else "Standard deviation"
            out.append(f'set multiplot layout {nrows},{ncols} title "{title}, T={T}"')
            for d in ds:
                out.append(f'set title "d = {fmt(d)}"')
                out.append('set xlabel "true rho"')
                out.append("set key off")
                if page == "estimate":
                    out.append("set xrange [-1:1]; set yrange [-1:1]")
                    parts = ["x with lines lc rgb '#cc0000' lw 1.5"]
                else:
                    out.append("set xrange [-1:1]; set autoscale y")
                    parts = []
                for k, lam in enumerate(lams):
                    name = names.get((T, d, lam))
                    if name is None:
                        continue
                    c = _grey(k, len(lams))
                    if page == "estimate":
                        parts.append(f"{name} using 1:3 with lines lc rgb '{c}' dt 1")
                        parts.append(f"{name} using 1:2 with lines lc rgb '{c}' dt 2")
                        parts.append(f"{name} using 1:4 with lines lc rgb '{c}' dt 2")
                    else:
                        parts.append(f"{name} using 1:5 with lines lc rgb '{c}' dt 1")
                if parts:
                    out.append("plot " + ", \\\n     ".join(parts))
            out.append("unset multiplot")
            out.append("")
    out.append("unset output")
    return "\n".join(out) + "\n"
