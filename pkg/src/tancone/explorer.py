"""Shifted-family scans, eventual-periodicity detection and conjecture checks.

Everything here reports finite-window evidence only: a scan can observe that a
sequence looks periodic from some shift on, never prove it.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb, gcd
from typing import Callable, Iterable, Optional, Sequence

from .families import recognize_interval_equality
from .groebner import Budget, BudgetExceeded
from .polyalg import Grading, Polynomial
from .resolution import minimal_free_resolution
from .semigroup import NumericalSemigroup
from .tangentcone import ConsistencyError, tangent_cone

SCHEMA = "tancone/v1"
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


# --- period detection ----------------------------------------------------------------

def detect_period_with_start(seq: Sequence, max_period: int) -> Optional[tuple]:
    """(p, s): least p <= max_period with seq[i] == seq[i+p] for all i >= s, where
    the stretch from s holds at least 2p terms and at least half the sequence;
    s is the earliest such start.  None if no p works.

    The half-length floor keeps a short run of repeated values at the end of
    the window from passing as period 1.
    """
    n = len(seq)
    need = (n + 1) // 2
    for p in range(1, max_period + 1):
        if n < 2 * p:
            break
        s = n - p
        while s > 0 and seq[s - 1] == seq[s - 1 + p]:
            s -= 1
        if n - s >= max(2 * p, need):
            return p, s
    return None


def detect_period(seq: Sequence, max_period: int):
    """Least eventual period, or the string 'inconclusive'."""
    found = detect_period_with_start(seq, max_period)
    return found[0] if found else INCONCLUSIVE


# --- Vu's shape for large shifts --------------------------------------------------------

def vu_shape_check(gens: Sequence[Polynomial]) -> bool:
    """Every non-homogeneous binomial is x_1^a u - v x_r^b with a, b > 0,
    u, v in the middle variables, and the x_1 side of larger degree."""
    for f in gens:
        if f.is_homogeneous():
            continue
        if len(f) != 2:
            return False
        n = f.ring.nvars
        m1, m2 = f.monomials()
        if m1[0] == 0:
            m1, m2 = m2, m1
        if not (m1[0] > 0 and m1[n - 1] == 0 and m2[0] == 0 and m2[n - 1] > 0):
            return False
        if sum(m1) <= sum(m2):
            return False
    return True


# --- rows and reports --------------------------------------------------------------------

@dataclass
class ShiftScanRow:
    k: int
    generators: list
    mu_H: int = 0
    mu_I: int = 0
    mu_I_star: int = 0
    betti_I: Optional[list] = None
    betti_I_star: Optional[list] = None
    cm: Optional[bool] = None
    inhomogeneous_gens_shape_ok: Optional[bool] = None
    width: int = 0
    status: str = "ok"
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def signature(self) -> tuple:
        b1 = tuple(self.betti_I) if self.betti_I else None
        b2 = tuple(self.betti_I_star) if self.betti_I_star else None
        return (self.mu_I, self.mu_I_star, self.cm, b1, b2)

    def betti_agree(self) -> bool:
        if self.betti_I is not None and self.betti_I_star is not None:
            return self.betti_I == self.betti_I_star
        return self.mu_I == self.mu_I_star

    def gorenstein(self) -> Optional[bool]:
        b = self.betti_I_star if self.betti_I_star is not None else self.betti_I
        return None if b is None else b[-1] == 1


def compute_row(base: Sequence[int], k: int, betti: bool = False,
                budget: Optional[Budget] = None) -> ShiftScanRow:
    gens = [a + k for a in base]
    H = NumericalSemigroup.from_generators(gens)
    row = ShiftScanRow(k, list(H.generators), mu_H=H.mu, width=H.width)
    try:
        tc = tangent_cone(H, budget=budget)
        row.mu_I, row.mu_I_star, row.cm = tc.mu_I, tc.mu_I_star, tc.cm
        row.inhomogeneous_gens_shape_ok = vu_shape_check(tc.ideal)
        if betti:
            if tc.ideal:
                row.betti_I = minimal_free_resolution(tc.ideal, Grading(H.normalized().generators), budget).total
                row.betti_I_star = minimal_free_resolution(tc.star_gens, None, budget).total
            else:
                row.betti_I = row.betti_I_star = [1]
    except BudgetExceeded as e:
        row.status, row.message = "skipped", str(e)
    except ConsistencyError as e:
        row.status, row.message = "inconsistent", str(e)
    return row


def _row_job(args):
    return compute_row(*args)


def run_rows(jobs_args: list, jobs: int = 1, progress: Optional[Callable] = None) -> list:
    """Evaluate compute_row over argument tuples, optionally in a process pool."""
    out = []
    if jobs <= 1 or len(jobs_args) <= 1:
        for i, a in enumerate(jobs_args):
            out.append(compute_row(*a))
            if progress:
                progress(i + 1, len(jobs_args))
        return out
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for i, r in enumerate(pool.map(_row_job, jobs_args, chunksize=4)):
            out.append(r)
            if progress:
                progress(i + 1, len(jobs_args))
    return out


@dataclass
class ScanReport:
    base: list
    window: list
    rows: list
    detected_k0: object = "not observed"
    detected_period: object = INCONCLUSIVE
    period_start: Optional[int] = None
    period_divides_width: Optional[bool] = None
    verdicts: dict = field(default_factory=dict)
    betti: bool = False

    @property
    def width(self) -> int:
        return self.base[-1] - self.base[0]

    def row(self, k: int) -> ShiftScanRow:
        for r in self.rows:
            if r.k == k:
                return r
        raise KeyError(k)

    def summary(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "scan-summary",
            "base": self.base,
            "window": self.window,
            "betti": self.betti,
            "detected_k0": self.detected_k0,
            "detected_period": self.detected_period,
            "period_start": self.period_start,
            "period_divides_width": self.period_divides_width,
            "verdicts": self.verdicts,
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.summary(), sort_keys=True)]
        for r in self.rows:
            lines.append(json.dumps({"schema": SCHEMA, "kind": "scan-row", **asdict(r)}, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "ScanReport":
        lines = [json.loads(line) for line in text.splitlines() if line.strip()]
        head, rows = lines[0], lines[1:]
        if head.get("schema") != SCHEMA:
            raise ValueError(f"unknown schema {head.get('schema')!r}")
        fields = ShiftScanRow.__dataclass_fields__
        rows = [ShiftScanRow(**{k: v for k, v in r.items() if k in fields}) for r in rows]
        return cls(head["base"], head["window"], rows, head["detected_k0"], head["detected_period"],
                   head["period_start"], head["period_divides_width"], head["verdicts"], head["betti"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "generators", "mu_H", "mu_I", "mu_I_star", "cm", "betti_I", "betti_I_star",
                    "vu_shape_ok", "status"])
        for r in self.rows:
            w.writerow([r.k, " ".join(map(str, r.generators)), r.mu_H, r.mu_I, r.mu_I_star, r.cm,
                        " ".join(map(str, r.betti_I or [])), " ".join(map(str, r.betti_I_star or [])),
                        r.inhomogeneous_gens_shape_ok, r.status])
        return buf.getvalue()


def default_kmax(base: Sequence[int]) -> int:
    a1, ar = base[0], base[-1]
    return max(ar - 2 * a1, _first_k(base)) + 4 * (ar - a1)


def _first_k(base: Sequence[int]) -> int:
    return max(0, 1 - base[0])


def stabilization_point(rows: Sequence[ShiftScanRow]):
    """Least k from which every row is computed, CM, and has beta(I) = beta(I*)."""
    k0 = "not observed"
    for r in reversed(rows):
        if r.ok and r.cm and r.betti_agree():
            k0 = r.k
        else:
            break
    return k0


def analyze(base: Sequence[int], rows: list, betti: bool) -> ScanReport:
    rows = sorted(rows, key=lambda r: r.k)
    base = list(base)
    w = base[-1] - base[0]
    window = [rows[0].k, rows[-1].k] if rows else [0, -1]
    rep = ScanReport(base, window, rows, betti=betti)
    v = rep.verdicts
    good = [r for r in rows if r.ok]
    if len(good) < len(rows):
        v["rows_complete"] = FAIL if any(r.status == "inconsistent" for r in rows) else INCONCLUSIVE
    else:
        v["rows_complete"] = PASS

    # number of generators stabilizes past a_r - 2 a_1
    thresh = base[-1] - 2 * base[0]
    late = [r for r in rows if r.k > thresh]
    v["mu_H_stable"] = (PASS if all(r.mu_H == len(base) for r in late) else FAIL) if late else INCONCLUSIVE

    rep.detected_k0 = stabilization_point(rows)
    max_p = max(1, len(rows) // 2)
    sig = [r.signature() if r.ok else ("skipped", r.k) for r in rows]
    found = detect_period_with_start(sig, max_p)
    if found:
        p, s = found
        rep.detected_period, rep.period_start = p, rows[s].k
        rep.period_divides_width = (w % p == 0) if w else p == 1
    mu_found = detect_period_with_start([r.mu_I_star if r.ok else None for r in rows], max_p)
    v["period_mu_star"] = _period_verdict(mu_found, w)
    v["period_signature"] = _period_verdict(found, w)
    if betti:
        bfound = detect_period_with_start([tuple(r.betti_I_star) if r.ok and r.betti_I_star else None
                                           for r in rows], max_p)
        v["period_betti"] = _period_verdict(bfound, w)

    # stabilization needs two detected periods of agreement inside the window
    if rep.detected_k0 == "not observed" or not found:
        v["stabilization"] = INCONCLUSIVE
    else:
        span = rows[-1].k - rep.detected_k0 + 1
        v["stabilization"] = PASS if span >= 2 * rep.detected_period else INCONCLUSIVE

    # Vu's shape holds on the final stretch
    vu_from = "not observed"
    for r in reversed(rows):
        if r.ok and r.inhomogeneous_gens_shape_ok:
            vu_from = r.k
        else:
            break
    v["vu_shape_from"] = vu_from
    if vu_from == "not observed" or not found:
        v["vu_shape"] = INCONCLUSIVE
    else:
        v["vu_shape"] = PASS if rows[-1].k - vu_from + 1 >= 2 * rep.detected_period else INCONCLUSIVE

    # past k0 the CM flag is constant and the Gorenstein flag periodic
    if rep.detected_k0 != "not observed":
        tail = [r for r in rows if r.k >= rep.detected_k0]
        cm_const = len({r.cm for r in tail}) == 1
        gor = [r.gorenstein() for r in tail]
        if betti and None not in gor:
            gor_ok = _period_verdict(detect_period_with_start(gor, max(1, len(gor) // 2)), w) == PASS
        else:
            gor_ok = True
        v["persistence"] = PASS if cm_const and gor_ok else FAIL
    else:
        v["persistence"] = INCONCLUSIVE

    # width bound, with equality exactly on the interval family
    bound_ok = True
    for r in good:
        b = comb(r.width + 1, 2)
        if r.mu_I_star > b:
            bound_ok = False
        if r.mu_H >= 2:
            eq = r.mu_I_star == b
            fam = recognize_interval_equality(NumericalSemigroup(tuple(r.generators))) is not None
            if eq != fam:
                bound_ok = False
    v["conjecture_one"] = PASS if bound_ok else FAIL
    return rep


def _period_verdict(found, w) -> str:
    if not found:
        return INCONCLUSIVE
    p = found[0]
    if w == 0:
        return PASS if p == 1 else FAIL
    return PASS if w % p == 0 else FAIL


def shift_scan(base: Sequence[int], kmin: Optional[int] = None, kmax: Optional[int] = None,
               betti: bool = False, jobs: int = 1, budget: Optional[Budget] = None,
               progress: Optional[Callable] = None) -> ScanReport:
    """Compute one row per shift k in [kmin, kmax] and analyze the sequences."""
    base = sorted(int(a) for a in base)
    if len(set(base)) != len(base):
        raise ValueError("base must be strictly increasing")
    lo = _first_k(base)
    kmin = lo if kmin is None else max(kmin, lo)
    kmax = default_kmax(base) if kmax is None else kmax
    if kmax < kmin:
        raise ValueError(f"empty window [{kmin}, {kmax}]")
    w = base[-1] - base[0]
    if kmax - kmin < 2 * w:
        warnings.warn(f"window [{kmin}, {kmax}] is shorter than two periods ({2 * w})", stacklevel=2)
    rows = run_rows([(tuple(base), k, betti, budget) for k in range(kmin, kmax + 1)], jobs, progress)
    return analyze(base, rows, betti)


def extend_scan(rep: ScanReport, new_kmax: int, jobs: int = 1, budget: Optional[Budget] = None,
                progress: Optional[Callable] = None) -> ScanReport:
    have = {r.k for r in rep.rows}
    todo = [k for k in range(rep.window[0], new_kmax + 1) if k not in have]
    rows = list(rep.rows) + run_rows([(tuple(rep.base), k, rep.betti, budget) for k in todo], jobs, progress)
    return analyze(rep.base, rows, rep.betti)


# --- conjectures -----------------------------------------------------------------------

@dataclass
class ConjectureReport:
    kind: str
    params: dict
    items: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    unverified: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.violations:
            return FAIL
        if self.unverified:
            return INCONCLUSIVE
        return PASS

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": f"conjecture-{self.kind}", "params": self.params,
                "verdict": self.verdict, "checked": len(self.items), "violations": self.violations,
                "unverified": self.unverified, "items": self.items}


def bases_of_width(w: int) -> Iterable[tuple]:
    """All 0 = a_1 < ... < a_r = w."""
    if w == 0:
        yield (0,)
        return
    for r in range(0, w):
        for mid in itertools.combinations(range(1, w), r):
            yield (0,) + mid + (w,)


def _gens_arg(gens) -> str:
    return ",".join(map(str, gens))


def verify_conjecture_width(wmax: int, shift_window_factor: int = 2, betti: bool = False, jobs: int = 1,
                            budget: Optional[Budget] = None, heartbeat: Optional[Callable] = None,
                            max_extensions: int = 6) -> ConjectureReport:
    """Scan every base of width <= wmax until two periods past the observed onset of
    periodicity and stabilization, checking the width bound and its equality case."""
    rep = ConjectureReport("width", {"wmax": wmax, "shift_window_factor": shift_window_factor})
    for w in range(1, wmax + 1):
        for base in bases_of_width(w):
            scan = shift_scan(base, betti=betti, jobs=jobs, budget=budget) if w else None
            for _ in range(max_extensions):
                k0 = scan.detected_k0
                onset = scan.period_start
                if k0 == "not observed" or onset is None:
                    target = scan.window[1] + 2 * w
                else:
                    target = max(k0, onset) + shift_window_factor * w - 1
                if target <= scan.window[1] and scan.verdicts.get("stabilization") == PASS:
                    break
                scan = extend_scan(scan, max(target, scan.window[1] + 1), jobs, budget)
            item = {"base": list(base), "window": scan.window, "k0": scan.detected_k0,
                    "period": scan.detected_period, "period_start": scan.period_start,
                    "mu_star": [r.mu_I_star for r in scan.rows], "verdicts": scan.verdicts}
            rep.items.append(item)
            for r in scan.rows:
                if not r.ok:
                    continue
                bound = comb(r.width + 1, 2)
                fam = recognize_interval_equality(NumericalSemigroup(tuple(r.generators))) is not None
                bad = r.mu_I_star > bound or (r.mu_H >= 2 and (r.mu_I_star == bound) != fam)
                if bad:
                    rep.violations.append({"base": list(base), "k": r.k, "generators": r.generators,
                                           "mu_I_star": r.mu_I_star, "bound": bound, "interval_family": fam,
                                           "replay": f"tancone tangentcone {_gens_arg(r.generators)}"})
            verified = (scan.verdicts.get("stabilization") == PASS
                        and scan.verdicts.get("period_mu_star") == PASS
                        and scan.verdicts.get("rows_complete") == PASS)
            if not verified:
                rep.unverified.append({"base": list(base), "window": scan.window, "verdicts": scan.verdicts,
                                       "replay": f"tancone scan --base {_gens_arg(base)} --kmax {scan.window[1]}"})
            if heartbeat:
                heartbeat(f"width {w} base {list(base)}: window {scan.window}, k0 {scan.detected_k0}, "
                          f"period {scan.detected_period}")
    return rep


def is_arithmetic(H: NumericalSemigroup) -> bool:
    g = H.generators
    return len(g) >= 2 and len({b - a for a, b in zip(g, g[1:])}) == 1


def random_semigroups(n: int, max_gen: int = 40, max_r: int = 5, seed: int = 0, min_r: int = 2) -> list:
    """n random gcd-1 semigroups with min_r..max_r minimal generators, all <= max_gen."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        r = rng.randint(min_r, max_r)
        raw = rng.sample(range(2, max_gen + 1), r)
        H = NumericalSemigroup.from_generators(raw)
        if H.gcd != 1 or H.mu < min_r:
            continue
        out.append(H)
    return out


def verify_conjecture_tilde(samples, budget: Optional[Budget] = None,
                            heartbeat: Optional[Callable] = None) -> ConjectureReport:
    """mu(I*_H) <= mu(I*_{H~}); Betti-wise for arithmetic sequences, with the
    equality classification for those."""
    if isinstance(samples, dict):
        samples = random_semigroups(**samples)
    rep = ConjectureReport("tilde", {"count": len(samples)})
    cache: dict = {}

    def star_data(H, betti):
        key = (H.generators, betti)
        if key not in cache:
            tc = tangent_cone(H, budget=budget)
            b = minimal_free_resolution(tc.star_gens, None, budget).total if betti and tc.star_gens else None
            cache[key] = (tc.mu_I_star, b)
        return cache[key]

    for H in samples:
        H = NumericalSemigroup.from_generators(H) if not isinstance(H, NumericalSemigroup) else H
        Ht = H.interval_completion()
        arith = is_arithmetic(H) and H.mu >= 2
        item = {"H": list(H.generators), "H_tilde": list(Ht.generators)}
        try:
            mu, b = star_data(H, arith)
            mut, bt = star_data(Ht, arith)
        except BudgetExceeded as e:
            rep.unverified.append({**item, "reason": str(e)})
            continue
        item.update(mu_star=mu, mu_star_tilde=mut)
        ok = mu <= mut
        if arith and b is not None and bt is not None:
            item.update(betti_star=b, betti_star_tilde=bt)
            pad = max(len(b), len(bt))
            bb, bbt = b + [0] * (pad - len(b)), bt + [0] * (pad - len(bt))
            ok = ok and all(x <= y for x, y in zip(bb, bbt))
            r, d = H.generators[0], H.generators[1] - H.generators[0]
            predicted_eq = H.is_interval() or (r == H.mu and r > 2 and gcd(r, d) == 1)
            observed_eq = bb == bbt
            item.update(equality=observed_eq, equality_predicted=predicted_eq)
            ok = ok and observed_eq == predicted_eq
        item["ok"] = ok
        rep.items.append(item)
        if not ok:
            rep.violations.append({**item, "replay": f"tancone tangentcone {_gens_arg(H.generators)}"})
        if heartbeat:
            heartbeat(f"{H}: mu* {mu} vs {mut}")
    return rep


def heartbeat_to_stderr(msg: str) -> None:
    print(f"[tancone] {msg}", file=sys.stderr, flush=True)
