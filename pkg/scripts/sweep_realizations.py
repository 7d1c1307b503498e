"""Run every verification suite on every realized catalog entry and summarize."""
from __future__ import annotations

import argparse
import json
import sys
import time

from hyperfol.catalog import load_catalog
from hyperfol.suites import run_all


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--spaces", nargs="*", help="catalog names (default: all realized entries)")
    p.add_argument("--tol", type=float, help="override every suite tolerance")
    p.add_argument("--json", metavar="PATH", help="write the summary as JSON")
    args = p.parse_args(argv)

    cat = load_catalog()
    names = args.spaces or [n for n, e in cat.items() if e.realization]
    summary, ok = [], True
    print(f"{'space':<6} {'suite':<30} {'checks':>7} {'max residual':>13}  status  time")
    for name in names:
        t0 = time.perf_counter()
        _, dec = cat[name].realize()
        results = run_all(dec, args.tol)
        elapsed = time.perf_counter() - t0
        for r in results:
            worst = max((c.residual for c in r.checks), default=0.0)
            print(f"{name:<6} {r.suite:<30} {len(r.checks):>7} {worst:>13.2e}  "
                  f"{'PASS' if r.passed else 'FAIL':<6}  {elapsed:.2f}s")
            summary.append({"space": name, "suite": r.suite, "checks": len(r.checks),
                            "max_residual": worst, "passed": r.passed})
            ok &= r.passed
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(summary, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
