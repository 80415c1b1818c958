"""Check the width bound mu(I*) <= C(w+1, 2) over every base of width <= wmax.

    python3 scripts/conjecture_width.py            # width <= 3
    python3 scripts/conjecture_width.py --long     # width <= 5
"""
import argparse
import json
import sys
import time

from tancone.explorer import heartbeat_to_stderr, verify_conjecture_width


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wmax", type=int, default=3)
    ap.add_argument("--long", action="store_true", help="widths 4 and 5 as well")
    ap.add_argument("--betti", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None, help="write the full report as JSON")
    args = ap.parse_args()
    wmax = max(args.wmax, 5) if args.long else args.wmax

    t0 = time.perf_counter()
    rep = verify_conjecture_width(wmax, betti=args.betti, jobs=args.jobs, heartbeat=heartbeat_to_stderr)
    dt = time.perf_counter() - t0
    print(f"width <= {wmax}: {len(rep.items)} bases, {len(rep.violations)} violations, "
          f"{len(rep.unverified)} unverified, verdict {rep.verdict} ({dt:.1f}s)")
    for item in rep.items:
        print(f"  base {item['base']}: window {item['window']}, k0 {item['k0']}, period {item['period']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rep.to_json(), fh, indent=1)
    return 0 if not rep.violations else 1


if __name__ == "__main__":
    sys.exit(main())
