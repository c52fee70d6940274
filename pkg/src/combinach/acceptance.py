"""Desk-scale acceptance suite shared by ``selftest`` and the pytest run.

Each criterion is a function returning a ``Result``.  Randomness comes from
``random.Random`` with a fixed seed per criterion, and the printed lines
carry no timings, so the report is byte-stable.
"""
from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .diagnostics import (
    DyadicMeasure, c0_branch_check, l1_copy_check, mazur_combination_search,
    ptak_fill_search, variation_identity_check, variation_norm, verify_certificate,
)
from .families import (
    FARAH, AllFinite, Antichains, BlockCappedLocal, CapRule, PartitionBlocks, Restrict,
    Singletons, explicit, heredity_violation, schreier, spreading_check,
)
from .norms import FinVec, antichain_norm, ext_norm, norm_oracle
from .schreier import (
    density_bound_check, schreier_contains, summable_like_witness,
    trace_vs_I2_witness,
)
from .setgen import AllIndices, BlockPrefix, BlockRule, ExplicitFinite, TailFrom, block_of, realize
from .submeasures import LAMBDA, SubmeasureSpec, WeightSeq, phi, tail_profile

SCHREIER_SAMPLE = ("1", "2", "3", "w", "w+1", "w*2", "w^2")


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _rand_vec(rng: random.Random, lo: int, hi: int, density: float = 0.5) -> FinVec:
    return FinVec({
        k: Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        for k in range(lo, hi) if rng.random() < density
    })


def _catalog_families():
    return [
        Singletons(), AllFinite(), PartitionBlocks(), FARAH,
        BlockCappedLocal(CapRule("index")), Antichains(),
        explicit([[1, 2, 3], [4, 5], [2, 9, 15], [6, 7, 8, 10]]),
        Restrict(schreier(1), (3, 4, 5, 6, 11, 12)),
        *(schreier(a) for a in SCHREIER_SAMPLE),
    ]


def _catalog_weights():
    return [WeightSeq(k) for k in ("lambda", "harmonic", "one", "geometric", "block-inv-square")]


# ----------------------------------------------------------------- criteria

def c01_closed_forms() -> Result:
    rng = random.Random(101)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        x = _rand_vec(rng, 1, 64)
        if not x:
            continue
        absx = [abs(v) for v in x.values()]
        blocks: dict[int, Fraction] = {}
        for k, v in x.items():
            blocks[block_of(k)] = blocks.get(block_of(k), Fraction(0)) + abs(v)
        bad += ext_norm(AllFinite(), x) != sum(absx, Fraction(0))
        bad += ext_norm(Singletons(), x) != max(absx)
        bad += ext_norm(PartitionBlocks(), x) != max(blocks.values())
    fast = time.perf_counter() - start < 2
    return Result(1, "closed-form norms", bad == 0 and fast,
                  f"200 vectors, {bad} mismatches" + ("" if fast else ", over 2 s"))


def c02_oracle() -> Result:
    rng = random.Random(102)
    start = time.perf_counter()
    bad, kinds = 0, 0
    for f in _catalog_families():
        kinds += 1
        for _ in range(300):
            x = _rand_vec(rng, 1, 16)
            if x and ext_norm(f, x) != norm_oracle(f, x):
                bad += 1
    fast = time.perf_counter() - start < 60
    return Result(2, "oracle equivalence", bad == 0 and fast,
                  f"{kinds} families x 300 vectors, {bad} mismatches" + ("" if fast else ", over 60 s"))


def c03_s1_law() -> Result:
    bad = 0
    total = 0
    for r in range(13):
        for F in itertools.combinations(range(1, 13), r):
            total += 1
            if schreier_contains(1, F) != (len(F) <= (F[0] if F else 0)):
                bad += 1
    return Result(3, "S_1 law", bad == 0, f"{total} subsets of [1,12], {bad} exceptions")


def c04_heredity_spreading() -> Result:
    bad = []
    for a in SCHREIER_SAMPLE:
        f = schreier(a)
        if heredity_violation(f, 13) is not None or spreading_check(f, 13) is not None:
            bad.append(a)
    return Result(4, "hereditary and spreading S_alpha", not bad,
                  f"{len(SCHREIER_SAMPLE)} ordinals on [1,12], failures {bad or 'none'}")


def c05_witness_values() -> Result:
    checks = 0
    ok = True
    for a in ("2", "3", "w"):
        for N in (1, 2, 3):
            w = summable_like_witness(a, N)
            ok &= all(v == Fraction(1, 2 ** N) for v in w.piece_values) and w.union_value == 1
            checks += 1
    tr = trace_vs_I2_witness(3)
    ok &= all(r.trace_value == Fraction(1, 2 ** r.k) for r in tr.rows)
    ok &= all(v >= 1 for *_, v in tr.s2_windows) and not tr.skipped
    ok &= {r.k for r in tr.rows} == {0, 1, 2, 3} and len(tr.s2_windows) == 4
    return Result(5, "witness values", ok,
                  f"{checks} summable-like witnesses, {len(tr.rows)} trace tails, "
                  f"{len(tr.s2_windows)} S_2 windows")


def c06_density() -> Result:
    rng = random.Random(106)
    j, N, horizon = 4, 5, 1 << 12
    bound = Fraction(1 + j, 2 ** j)
    worst = Fraction(0)
    for _ in range(50):
        pts = []
        for n in range(N, 12):
            c = rng.randrange(0, 2 ** (n - j))
            pts.extend(rng.sample(range(1 << n, 1 << (n + 1)), c))
        pts.extend(rng.sample(range(1, 1 << N), rng.randint(0, 8)))
        rep = density_bound_check(j, ExplicitFinite(tuple(sorted(pts))), N, horizon)
        worst = max(worst, rep.value)
    return Result(6, "density bound", worst <= bound,
                  f"50 sets, largest tail value {worst} vs bound {bound}")


def _cells_int(values: tuple[int, ...], depth: int) -> dict[int, int]:
    x = {}
    for c in range(1, 1 << (depth + 1)):
        lv = c.bit_length() - 1
        width = 1 << (depth - lv)
        u = c - (1 << lv)
        s = sum(values[u * width:(u + 1) * width])
        if s:
            x[c] = abs(s)
    return x


def c07_variation() -> Result:
    # quarter-integer cells scaled by 4: exact in integers
    bad = 0
    count = 0
    for d in range(4):
        for vals in itertools.product(range(-2, 3), repeat=1 << d):
            count += 1
            if antichain_norm(_cells_int(vals, d)) != sum(abs(v) for v in vals):
                bad += 1
    rng = random.Random(107)
    for _ in range(100):
        m = DyadicMeasure.of([Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(64)])
        cert = variation_identity_check(m)
        count += 1
        bad += not verify_certificate(cert) or Fraction(cert.payload["variation"]) != variation_norm(m)
    return Result(7, "variation identity", bad == 0, f"{count} measures, {bad} mismatches")


def c08_l1_c0() -> Result:
    rng = random.Random(108)
    g = BlockPrefix(BlockRule("one"))
    N = 1 << 10
    chain = realize(g, N)
    samples = [FinVec({k: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for k in chain})
               for _ in range(20)]
    l1 = l1_copy_check(FARAH, g, N, samples)
    ok = verify_certificate(l1)
    c0_rows = 0
    for _ in range(20):
        n = rng.randint(1, 10)
        period = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        cert = c0_branch_check(period, n, [coeffs])
        ok &= Fraction(cert.payload["rows"][0]["norm"]) == max(abs(c) for c in coeffs)
        c0_rows += 1
    return Result(8, "l1 and c0 copies", ok,
                  f"{len(samples)} chain vectors, {c0_rows} branch vectors")


def c09_ptak_mazur() -> Result:
    f = schreier(1)
    ok = True
    parts = []
    for eps in (Fraction(1, 2), Fraction(1, 4)):
        t = time.perf_counter()
        p = ptak_fill_search(f, LAMBDA, eps, 1 << 12)
        p_ok = p.kind == "ptak-fill" and verify_certificate(p) and time.perf_counter() - t < 10
        t = time.perf_counter()
        m = mazur_combination_search(f, None, LAMBDA, eps, 1 << 12)
        m_ok = m.holds and verify_certificate(m) and time.perf_counter() - t < 10
        ok &= p_ok and m_ok
        parts.append(f"eps={eps}: E={p.payload.get('E')} G={m.payload['G']} value={m.payload['value']}")
    return Result(9, "Ptak and Mazur searches", ok, "; ".join(parts))


def c10_submeasure_axioms() -> Result:
    rng = random.Random(110)
    fams, weights = _catalog_families(), _catalog_weights()
    bad = 0
    for _ in range(500):
        s = SubmeasureSpec(rng.choice(fams), rng.choice(weights))
        A = [k for k in range(1, 32) if rng.random() < 0.3]
        B = [k for k in range(1, 32) if rng.random() < 0.3]
        AB = sorted(set(A) | set(B))
        pa, pb, pab = phi(s, A), phi(s, B), phi(s, AB)
        bad += phi(s, []) != 0 or pa > pab or pb > pab or pab > pa + pb
    return Result(10, "submeasure axioms", bad == 0, f"500 triples, {bad} violations")


def c11_tail_monotone() -> Result:
    gens = [AllIndices(), BlockPrefix(BlockRule("halvedByLog")), TailFrom(5)]
    cutoffs = [1, 2, 4, 8, 16, 32]
    horizons = [32, 64, 128]
    bad = 0
    specs = 0
    for f in _catalog_families():
        for w in _catalog_weights():
            specs += 1
            s = SubmeasureSpec(f, w)
            for g in gens:
                prev_row = None
                for h in horizons:
                    row = [p.value for p in tail_profile(s, g, cutoffs, h)]
                    bad += any(a < b for a, b in zip(row, row[1:]))
                    if prev_row is not None:
                        bad += any(a > b for a, b in zip(prev_row, row))
                    prev_row = row
    return Result(11, "tail-profile monotonicity", bad == 0,
                  f"{specs} specs x {len(gens)} generators, {bad} violations")


CLI_EXAMPLES = [
    ["norm", "--family", '{"kind":"schreier","alpha":"1"}',
     "--vec", '{"4":"1/4","5":"1/4","6":"1/4","7":"1/4"}'],
    ["witness", "summable-like", "--alpha", "2", "--N", "2"],
    ["norm", "--family", '{"kind":"all-finite"}', "--vec", '{"1":"1/2","3":"-3/4"}'],
    ["tail-profile", "--family", '{"kind":"schreier","alpha":"1"}', "--gen", '{"kind":"all"}',
     "--cutoffs", "1,4,16,64", "--horizon", "256", "--output", "csv"],
    ["ptak", "--family", '{"kind":"schreier","alpha":"1"}', "--epsilon", "1/4",
     "--horizon", "1024", "--output", "records"],
]


def c12_determinism() -> Result:
    outs = []
    for _ in range(2):
        run = []
        for argv in CLI_EXAMPLES:
            proc = subprocess.run([sys.executable, "-m", "combinach", *argv],
                                  capture_output=True, check=False)
            run.append((proc.returncode, proc.stdout))
        outs.append(run)
    same = outs[0] == outs[1]
    codes = {c for c, _ in outs[0]}
    return Result(12, "CLI determinism", same and codes == {0},
                  f"{len(CLI_EXAMPLES)} examples run twice, "
                  f"{'identical' if same else 'different'} output, exit codes {sorted(codes)}")


CRITERIA: list[Callable[[], Result]] = [
    c01_closed_forms, c02_oracle, c03_s1_law, c04_heredity_spreading, c05_witness_values,
    c06_density, c07_variation, c08_l1_c0, c09_ptak_mazur, c10_submeasure_axioms,
    c11_tail_monotone, c12_determinism,
]


def run_all(out=None) -> list[Result]:
    results = []
    for crit in CRITERIA:
        try:
            res = crit()
        except Exception as exc:  # a crash is a failure, reported in line
            res = Result(CRITERIA.index(crit) + 1, crit.__name__, False,
                         f"raised {type(exc).__name__}: {exc}")
        results.append(res)
        if out is not None:
            print(res.line(), file=out, flush=True)
    return results
