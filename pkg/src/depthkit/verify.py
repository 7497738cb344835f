"""Cross-checks between methods and structural identities on one instance."""
from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass, field

from .bfs import count_via_bfs
from .exact import (brute_force, exact_projected, parity_forced, parity_of,
                    parity_predicted, sweep_2d, tukey_depth, weights_2d)
from .geom import DegeneracyError, RefusalError, as_point, as_pointset

PASS, FAIL, SKIP = "pass", "fail", "skip"

# checks that decide the exit status; the rest are reported only
GATING = ("brute=sweep2d", "brute=projected", "brute=bfs", "weights=3sigma",
          "regularity", "parity-forced", "sh-upper", "sh-caratheodory",
          "tukey-witness")
INFORMATIONAL = ("parity-rule",)


@dataclass
class Tally:
    counts: "OrderedDict[str, dict]" = field(default_factory=OrderedDict)
    degenerate: int = 0
    instances: int = 0

    def add(self, name: str, status: str):
        c = self.counts.setdefault(name, {PASS: 0, FAIL: 0, SKIP: 0})
        c[status] += 1

    def failed(self, strict_parity: bool = False) -> bool:
        gate = set(GATING) | (set(INFORMATIONAL) if strict_parity else set())
        return any(c[FAIL] for k, c in self.counts.items() if k in gate)

    def table(self, strict_parity: bool = False) -> str:
        lines = [f"{'check':<18}{'pass':>6}{'fail':>6}{'skip':>6}  role"]
        for k in list(GATING) + list(INFORMATIONAL):
            if k not in self.counts:
                continue
            c = self.counts[k]
            role = "gate" if k in GATING or strict_parity else "info"
            lines.append(f"{k:<18}{c[PASS]:>6}{c[FAIL]:>6}{c[SKIP]:>6}  {role}")
        lines.append(f"instances {self.instances}, degenerate {self.degenerate}")
        return "\n".join(lines)


def check_instance(P, q, tally: Tally, brute_cap: float = 1e7,
                   projected_cap: float = 2e6) -> dict:
    """Run every applicable check, recording outcomes; returns the exact values."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    tally.instances += 1
    try:
        sigma = brute_force(P, q, cap=brute_cap).value
    except RefusalError:
        for k in GATING + INFORMATIONAL:
            tally.add(k, SKIP)
        return {}
    except DegeneracyError:
        tally.degenerate += 1
        return {}

    def mark(name, ok):
        tally.add(name, PASS if ok else FAIL)

    try:
        if d == 2:
            mark("brute=sweep2d", sweep_2d(P, q).value == sigma)
            mark("weights=3sigma", weights_2d(P, q).total == 3 * sigma)
        else:
            tally.add("brute=sweep2d", SKIP)
            tally.add("weights=3sigma", SKIP)
        if math.comb(n, d) * n <= projected_cap:
            mark("brute=projected", exact_projected(P, q).value == sigma)
        else:
            tally.add("brute=projected", SKIP)
        out, degrees = count_via_bfs(P, q, record_degrees=True)
        mark("brute=bfs", out.complete and out.count == sigma)
        mark("regularity", all(v == n - d - 1 for v in degrees.values()))
        if sigma > 0 and n >= d + 1:
            forced = parity_forced(n, d)
            mark("parity-forced", forced is None or forced == parity_of(sigma))
            mark("parity-rule", parity_predicted(n, d) == parity_of(sigma))
        else:
            tally.add("parity-forced", SKIP)
            tally.add("parity-rule", SKIP)
        tau = None
        if d <= 4:
            try:
                tk = tukey_depth(P, q)
                tau = tk.value
                mark("tukey-witness", tk.witness.count(P.coords) == tau)
                mark("sh-upper", sigma <= tau * math.comb(n - 1, d))
                mark("sh-caratheodory", tau < 1 or sigma >= 1)
            except RefusalError:
                pass
        if tau is None:
            for k in ("tukey-witness", "sh-upper", "sh-caratheodory"):
                tally.add(k, SKIP)
    except DegeneracyError:
        tally.degenerate += 1
        return {}
    return {"sigma": sigma, "tau": tau}
