"""Suite runner behind ``gammakit verify``.

Checks run in worker processes when ``threads > 1``. Results are sorted by
check name before reporting, so the report does not depend on scheduling.
Wall times are collected but only emitted on request, because they would
break byte-identical output.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from . import permstats as ps
from .identities import CHECKS_BY_NAME, Check, checks_for

SCHEMA_VERSION = "1"

PASS, FAIL, SKIPPED, BOUND, ERROR = "pass", "fail", "skipped", "bound", "error"


@dataclass
class CheckResult:
    name: str
    suite: str
    status: str
    n_range: Optional[List[int]]
    detail: str = ""
    counterexample: Optional[dict] = None
    wall_time: float = 0.0


@dataclass
class SuiteReport:
    suite: str
    max_n: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.results}
        if FAIL in statuses or ERROR in statuses:
            return FAIL
        if BOUND in statuses:
            return BOUND
        return PASS

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0, BOUND: 0, ERROR: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, BOUND: 3}[self.status]

    def to_dict(self, timings: bool = False) -> dict:
        checks = []
        for r in self.results:
            d = asdict(r)
            if not timings:
                d.pop("wall_time")
            checks.append(d)
        out = {"schema_version": SCHEMA_VERSION, "suite": self.suite, "max_n": self.max_n,
               "status": self.status, "counts": self.counts(), "checks": checks}
        if timings:
            out["wall_time"] = sum(r.wall_time for r in self.results)
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for r in self.results:
            rng = f"n={r.n_range[0]}..{r.n_range[1]}" if r.n_range else "-"
            line = f"{r.status.upper():7s} {r.name:40s} {rng:9s} {r.detail}"
            if timings:
                line += f" [{r.wall_time:.2f}s]"
            lines.append(line.rstrip())
            if r.counterexample:
                for key in sorted(r.counterexample):
                    lines.append(f"        {key}: {r.counterexample[key]}")
        c = self.counts()
        lines.append(f"suite {self.suite}: {self.status} "
                     f"({c[PASS]} passed, {c[FAIL] + c[ERROR]} failed, {c[SKIPPED]} skipped, {c[BOUND]} over bound)")
        return "\n".join(lines)


def effective_n(check: Check, max_n: int, override: bool) -> int:
    return max_n if override else min(max_n, check.limit)


def run_check(name: str, max_n: int, cap: Optional[int], override: bool) -> CheckResult:
    """Run one check; ``cap`` is the enumeration limit to use in this process."""
    with ps.bound_override(None if override else cap):
        return _run_check(CHECKS_BY_NAME[name], max_n, override)


def _run_check(check: Check, max_n: int, override: bool) -> CheckResult:
    name = check.name
    n = effective_n(check, max_n, override)
    if n < check.lo:
        return CheckResult(name, check.suite, SKIPPED, None, f"needs n >= {check.lo}")
    start = time.perf_counter()
    try:
        out = check.run(n)
    except ps.BoundExceeded as exc:
        return CheckResult(name, check.suite, BOUND, [check.lo, n], str(exc), None, time.perf_counter() - start)
    except Exception as exc:  # reported, not raised: one broken check must not hide the others
        return CheckResult(name, check.suite, ERROR, [check.lo, n], f"{type(exc).__name__}: {exc}",
                           None, time.perf_counter() - start)
    return CheckResult(name, check.suite, PASS if out.ok else FAIL, [check.lo, n], out.detail,
                       out.counterexample, time.perf_counter() - start)


def run_suite(suite: str, max_n: int, threads: int = 1, bound_override: bool = False) -> SuiteReport:
    names = [c.name for c in checks_for(suite)]
    cap = ps.max_elements()
    if threads <= 1:
        results = [run_check(nm, max_n, cap, bound_override) for nm in names]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(run_check, nm, max_n, cap, bound_override) for nm in names]
            results = [f.result() for f in futures]
    results.sort(key=lambda r: r.name)
    return SuiteReport(suite, max_n, results)
