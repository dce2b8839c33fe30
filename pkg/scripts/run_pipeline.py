#!/usr/bin/env python3
"""Run the full verification pipeline on bundled fixtures with timings.

Usage: python scripts/run_pipeline.py [fixture-name ...]
Defaults to every bundled watts fixture.
"""

import sys
import time

from monocat.fixtures import bundled_watts_fixtures
from monocat.watts import (WattsContext, check_monoidal_axioms,
                           check_rigidity, check_T_coherence, merge_reports,
                           verify_embedding, verify_monoidal_functor)


def run(fx) -> bool:
    t0 = time.perf_counter()
    stages = []

    def stage(label, fn):
        s = time.perf_counter()
        rep = fn()
        stages.append((label, rep, time.perf_counter() - s))
        return rep

    stage("axioms", lambda: check_monoidal_axioms(fx.ct, fx.sample))
    wc = WattsContext(fx.ct)
    stage("transport", lambda: check_T_coherence(wc))
    stage("functor", lambda: verify_monoidal_functor(wc, fx.sample))
    stage("embedding", lambda: verify_embedding(wc, fx.sample, fx.sequences))
    for r in fx.rigidity:
        stage(f"rigidity[{r.obj.name}]",
              lambda r=r: check_rigidity(fx.ct, r.obj, r.dual, r.ev, r.db))

    merged = merge_reports(fx.name, [rep for _, rep, _ in stages])
    total = time.perf_counter() - t0
    print(f"{fx.name}: {'ok' if merged.ok else 'FAILED'} "
          f"({len(merged.results)} checks, {total:.2f}s)")
    for label, rep, dt in stages:
        print(f"  {label:<14} {len(rep.results):>4} checks "
              f"{'ok' if rep.ok else 'FAIL':<4} {dt:6.2f}s")
    for f in merged.failures:
        print(f"  FAIL {f.name}  witness: {f.witness}")
    return merged.ok


def main() -> int:
    fixtures = bundled_watts_fixtures()
    names = sys.argv[1:] or sorted(fixtures)
    ok = True
    for name in names:
        if name not in fixtures:
            print(f"unknown fixture {name!r}; "
                  f"choose from {', '.join(sorted(fixtures))}")
            return 2
        ok &= run(fixtures[name])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
