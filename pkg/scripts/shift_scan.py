"""Shifted-family scans for the four reference bases, one table per base.

    python3 scripts/shift_scan.py [--base 3,5,7] [--kmax N] [--out-dir DIR]
"""
import argparse
import os

from tancone.explorer import shift_scan

BASES = [(3, 5, 7), (0, 2, 4), (4, 7, 9), (5, 6, 9)]


def show(rep):
    print(f"base {rep.base}  window {rep.window}  k0 {rep.detected_k0}  period {rep.detected_period} "
          f"(from k={rep.period_start})")
    print(f"{'k':>4} {'generators':<18} {'mu':>3} {'mu*':>4} {'cm':>5}  betti(I) / betti(I*)")
    for r in rep.rows:
        print(f"{r.k:>4} {','.join(map(str, r.generators)):<18} {r.mu_I:>3} {r.mu_I_star:>4} "
              f"{str(r.cm):>5}  {r.betti_I} / {r.betti_I_star}")
    for key, val in rep.verdicts.items():
        print(f"  {key}: {val}")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--base", default=None)
    ap.add_argument("--kmax", type=int, default=None)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", default=None)
    args = ap.parse_args()
    bases = [tuple(int(a) for a in args.base.split(","))] if args.base else BASES
    for base in bases:
        rep = shift_scan(base, kmax=args.kmax, betti=True, jobs=args.jobs)
        show(rep)
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            stem = os.path.join(args.out_dir, "scan_" + "_".join(map(str, base)))
            with open(stem + ".jsonl", "w") as fh:
                fh.write(rep.to_jsonl())
            with open(stem + ".csv", "w") as fh:
                fh.write(rep.to_csv())


if __name__ == "__main__":
    main()
