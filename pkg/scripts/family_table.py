"""Expected vs computed tangent-cone data for every closed-form family at desk scale."""
import sys
import time

from tancone.families import (
    arithmetic_family,
    bresinsky,
    frobenius_family,
    sally,
    shibuta_variant,
    validate,
)


def instances():
    for e in range(5, 10):
        yield sally(e)
    for h in (2, 3):
        yield bresinsky(h)
    for a in range(4, 21):
        yield shibuta_variant(a)
    for a, b in [(4, 5), (4, 7), (5, 6), (5, 7), (7, 9), (7, 11)]:
        yield frobenius_family(a, b)
    for a1, d, r in [(5, 1, 4), (7, 2, 4), (7, 3, 5), (9, 2, 5)]:
        yield arithmetic_family(a1, d, r)


def main():
    bad = 0
    print(f"{'family':<11} {'params':<18} {'semigroup':<24} {'mu':>3} {'mu*':>4} {'cm':>5}  result   time")
    for exp in instances():
        t0 = time.perf_counter()
        rep = validate(exp, betti=exp.expected_betti is not None)
        dt = time.perf_counter() - t0
        params = ",".join(f"{k}={v}" for k, v in exp.params.items())
        gens = ",".join(map(str, exp.semigroup.generators))
        print(f"{exp.name:<11} {params:<18} {gens:<24} {rep.result['mu_I']:>3} {rep.result['mu_I_star']:>4} "
              f"{str(rep.result['cm']):>5}  {'ok' if rep.ok else 'MISMATCH':<8} {dt:.2f}s")
        if not rep.ok:
            bad += 1
            for c in rep.checks:
                if not c.ok:
                    print(f"    {c.name}: expected {c.expected}, observed {c.observed}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
