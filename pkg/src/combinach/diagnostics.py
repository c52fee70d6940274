"""Banach-space probes on X_F and the filling / convex-combination searches.

Every probe returns a ``Certificate`` whose payload is plain JSON (families,
vectors and rationals in their text forms).  ``verify_certificate`` re-runs
the recorded exact computations from the payload alone.

The filling and Mazur searches only look at a fixed space of candidates:
dyadic intervals ``[2^a, 2^b)`` inside the horizon, then greedy unions of
whole blocks.  Failing inside that space is reported as inconclusive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .families import (
    Antichains, chain_witness_check, family_contains, family_from_json,
    family_label, family_to_json,
)
from .norms import FinVec, as_fraction, ext_norm
from .schreier.witnesses import PreconditionError, VerificationError
from .setgen import (
    TreeBranch, block_of, generator_from_json, generator_to_json, realize,
)
from .submeasures import WeightSeq, weights_from_json, weights_to_json


@dataclass
class Certificate:
    kind: str
    payload: dict
    holds: bool = True
    warnings: list[str] = field(default_factory=list)

    def as_record(self) -> dict:
        rec = {"certificate": self.kind, "holds": self.holds, **self.payload}
        if self.warnings:
            rec["warnings"] = list(self.warnings)
        return rec


def _q(x) -> str:
    return str(Fraction(x))


# ------------------------------------------------------------------ sequences

@dataclass(frozen=True)
class BlockSequence:
    blocks: tuple[FinVec, ...]

    def __post_init__(self):
        prev_max = 0
        for x in self.blocks:
            if not x:
                raise ValueError("blocks must be nonzero")
            supp = x.support()
            if supp[0] <= prev_max:
                raise ValueError("block supports must be strictly increasing")
            prev_max = supp[-1]

    def __len__(self) -> int:
        return len(self.blocks)

    def to_json(self) -> list[dict]:
        return [x.to_json() for x in self.blocks]

    @classmethod
    def from_json(cls, obj) -> "BlockSequence":
        return cls(tuple(FinVec.from_json(x) for x in obj))


# ------------------------------------------------------------------ l1 and c0

def l1_copy_check(f, g, N: int, samples: Sequence[FinVec]) -> Certificate:
    """On a chain of f the norm is the l1 norm: Phi_f(a) = sum |a_i|."""
    if not chain_witness_check(f, g, N):
        raise PreconditionError(f"{generator_to_json(g)} is not a chain of {family_label(f)} up to {N}")
    A = set(realize(g, N))
    rows = []
    for a in samples:
        if not set(a.support()) <= A:
            raise PreconditionError("sample vectors must be supported on the chain")
        norm = ext_norm(f, a)
        l1 = sum((abs(v) for v in a.values()), Fraction(0))
        rows.append({"vector": a.to_json(), "norm": _q(norm), "l1": _q(l1)})
        if norm != l1:
            raise VerificationError(f"l1 copy broken: Phi={norm}, l1={l1}")
    return Certificate("l1-copy", {
        "family": family_to_json(f), "generator": generator_to_json(g), "N": N, "rows": rows,
    })


def branch_codes(period: str, N: int) -> list[int]:
    codes, code, i = [], 1, 0
    while len(codes) < N:
        codes.append(code)
        code = 2 * code + int(period[i % len(period)])
        i += 1
    return codes


def c0_branch_check(period: str, N: int, samples: Sequence[Sequence]) -> Certificate:
    """On a branch the antichain norm is the sup norm: an antichain meets it once."""
    TreeBranch(period)
    codes = branch_codes(period, N)
    rows = []
    for a in samples:
        a = [as_fraction(v) for v in a]
        if len(a) != N:
            raise PreconditionError(f"branch samples need {N} coefficients")
        x = FinVec(zip(codes, a))
        norm = ext_norm(Antichains(), x)
        sup = max((abs(v) for v in a), default=Fraction(0))
        rows.append({"coefficients": [_q(v) for v in a], "norm": _q(norm), "sup": _q(sup)})
        if norm != sup:
            raise VerificationError(f"c0 copy broken: Phi={norm}, sup={sup}")
    return Certificate("c0-branch", {"period": period, "N": N, "codes": codes, "rows": rows})


# ------------------------------------------------------------------- Schur

def schur_witness(f, xs: BlockSequence, epsilon, g, horizon: int) -> Certificate | None:
    """Norm-one functional chi_{A'} with |<chi_{A'}, x_k>| > epsilon/2 for every block.

    ``A'`` keeps, inside each block, whichever sign class of ``A ∩ supp(x_k)``
    carries more mass.  ``None`` when some block has neither class above
    epsilon/2.
    """
    epsilon = as_fraction(epsilon)
    A = realize(g, horizon)
    Aset = set(A)
    if chain_witness_check(f, g, horizon):
        evidence = "chain: every initial segment of A lies in the family"
    elif all(family_contains(f, tuple(k for k in x.support() if k in Aset)) for x in xs.blocks):
        evidence = "blockwise: A ∩ supp(x_k) lies in the family for every k"
    else:
        raise PreconditionError("A is neither a chain of the family nor blockwise admissible")
    chosen: list[int] = []
    values = []
    for x in xs.blocks:
        pos = [k for k in x.support() if k in Aset and x[k] > 0]
        neg = [k for k in x.support() if k in Aset and x[k] < 0]
        sp = sum((x[k] for k in pos), Fraction(0))
        sn = -sum((x[k] for k in neg), Fraction(0))
        part, val = (pos, sp) if sp >= sn else (neg, sn)
        if val <= epsilon / 2:
            return None
        chosen.extend(part)
        values.append(val)
    return Certificate("schur", {
        "family": family_to_json(f), "blocks": xs.to_json(), "epsilon": _q(epsilon),
        "generator": generator_to_json(g), "horizon": horizon, "evidence": evidence,
        "functional_support": sorted(chosen), "values": [_q(v) for v in values],
        "threshold": _q(epsilon / 2),
    })


# ------------------------------------------------------------ dyadic measures

@dataclass(frozen=True)
class DyadicMeasure:
    """Signed measure on 2^omega determined by its values on the depth-d cells.

    Cell ``c`` is the clopen set of branches extending the length-d string
    whose binary value (first character most significant) is ``c``.
    """

    depth: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.depth:
            raise ValueError(f"need {1 << self.depth} cell values for depth {self.depth}")

    @classmethod
    def of(cls, values: Sequence) -> "DyadicMeasure":
        vals = tuple(as_fraction(v) for v in values)
        d = len(vals).bit_length() - 1
        return cls(d, vals)

    def cell_mass(self, code: int) -> Fraction:
        """mu([t]) for the string t with tree code ``code`` (|t| <= depth)."""
        level = block_of(code)
        if level > self.depth:
            raise ValueError("code deeper than the measure")
        u = code - (1 << level)
        width = 1 << (self.depth - level)
        return sum(self.values[u * width:(u + 1) * width], Fraction(0))

    def tree_vector(self) -> FinVec:
        """x_mu(t) = mu([t]) on every code of length <= depth."""
        return FinVec({c: self.cell_mass(c) for c in range(1, 1 << (self.depth + 1))})

    def to_json(self) -> dict:
        return {"depth": self.depth, "values": [_q(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj) -> "DyadicMeasure":
        if isinstance(obj, list):
            return cls.of(obj)
        return cls(int(obj["depth"]), tuple(Fraction(str(v)) for v in obj["values"]))


def variation_norm(m: DyadicMeasure) -> Fraction:
    """mu+(2^omega) + mu-(2^omega): split the cells by sign."""
    pos = sum((v for v in m.values if v > 0), Fraction(0))
    neg = -sum((v for v in m.values if v < 0), Fraction(0))
    return pos + neg


def variation_by_partitions(m: DyadicMeasure) -> Fraction:
    """sup over clopen splits C0 ∪ C1 of |mu(C0)| + |mu(C1)|, by enumeration."""
    total = sum(m.values, Fraction(0))
    best = abs(total)
    n = len(m.values)
    for mask in range(1, 1 << n):
        s = sum((m.values[i] for i in range(n) if mask >> i & 1), Fraction(0))
        best = max(best, abs(s) + abs(total - s))
    return best


def variation_identity_check(m: DyadicMeasure) -> Certificate:
    var = variation_norm(m)
    x = m.tree_vector()
    norm = ext_norm(Antichains(), x)
    if var != norm:
        raise VerificationError(f"variation {var} != antichain norm {norm}")
    return Certificate("variation", {
        "measure": m.to_json(), "variation": _q(var), "antichain_norm": _q(norm),
    })


# ---------------------------------------------------------- filling and Mazur

def _check_divergent(mu: WeightSeq, epsilon: Fraction, horizon: int) -> None:
    verdict = mu.divergent
    if verdict is False:
        raise PreconditionError(f"weights {mu.kind!r} have convergent partial sums")
    if mu.kind == "custom" and mu.mass(range(1, horizon)) < 1 / epsilon:
        raise PreconditionError("custom weights do not reach mass 1/epsilon within the horizon")


def _search_floor(mu: WeightSeq, epsilon: Fraction, top: int) -> tuple[int, list[str]]:
    """Least block a such that every weight on [2^a, 2^top) is at most epsilon."""
    for a in range(top):
        if max(mu(k) for k in _sample_points(a, top)) <= epsilon:
            return a, []
    return 0, [f"no block below 2^{top} has all weights <= {epsilon}; searching from 1"]


def _sample_points(a: int, top: int):
    # weights are examined exactly; blocks are scanned in full
    return range(1 << a, 1 << top)


def _intervals(a0: int, top: int):
    """[2^a, 2^b) for a ascending, b descending."""
    for a in range(a0, top):
        for b in range(top, a, -1):
            yield a, b


def _top_block(horizon: int) -> int:
    top = block_of(horizon)
    if top < 1:
        raise PreconditionError("horizon must be at least 2")
    return top


def _phi(f, mu: WeightSeq, E: Sequence[int]) -> Fraction:
    return ext_norm(f, mu.vector(E))


def ptak_fill_search(f, mu: WeightSeq, epsilon, horizon: int) -> Certificate:
    """Look for a finite E with phi_{f,mu}(E) < epsilon * mu(E).

    Such an E shows that f does not epsilon-fill mu on E.  Returns a
    ``ptak-fill`` certificate, or ``filled-up-to-horizon`` when no searched E
    works (inconclusive beyond the searched space).
    """
    epsilon = as_fraction(epsilon)
    _check_divergent(mu, epsilon, horizon)
    top = _top_block(horizon)
    a0, warnings = _search_floor(mu, epsilon, top)
    searched = 0
    for a, b in _intervals(a0, top):
        searched += 1
        E = range(1 << a, 1 << b)
        val, mass = _phi(f, mu, E), mu.mass(E)
        if val < epsilon * mass:
            return _ptak_cert(f, mu, epsilon, horizon, [(a, b)], val, mass, warnings, "interval")
    blocks = _greedy_blocks(
        range(a0, top), lambda chosen: _ratio_gap(f, mu, epsilon, chosen),
    )
    if blocks is not None:
        E = _union_blocks(blocks)
        val, mass = _phi(f, mu, E), mu.mass(E)
        if val < epsilon * mass:
            return _ptak_cert(f, mu, epsilon, horizon, [(n, n + 1) for n in blocks], val, mass,
                              warnings, "greedy-blocks")
    return Certificate("filled-up-to-horizon", {
        "family": family_to_json(f), "weights": weights_to_json(mu), "epsilon": _q(epsilon),
        "horizon": horizon, "searched_intervals": searched,
        "search_space": f"dyadic intervals [2^a, 2^b), {a0} <= a < b <= {top}, "
                        "then greedy unions of blocks",
    }, holds=False, warnings=warnings)


def _ptak_cert(f, mu, epsilon, horizon, pieces, val, mass, warnings, how) -> Certificate:
    return Certificate("ptak-fill", {
        "family": family_to_json(f), "weights": weights_to_json(mu), "epsilon": _q(epsilon),
        "horizon": horizon, "E": [[1 << a, 1 << b] for a, b in pieces], "found_by": how,
        "phi": _q(val), "mass": _q(mass), "epsilon_mass": _q(epsilon * mass),
    }, warnings=warnings)


def _union_blocks(blocks) -> list[int]:
    return [k for n in sorted(blocks) for k in range(1 << n, 1 << (n + 1))]


def _ratio_gap(f, mu, epsilon, chosen) -> Fraction:
    E = _union_blocks(chosen)
    return _phi(f, mu, E) - epsilon * mu.mass(E)


def _greedy_blocks(candidates, score):
    """Grow a set of blocks, each step adding the block that lowers ``score`` most."""
    chosen: list[int] = []
    best = None
    pool = list(candidates)
    while pool:
        scored = [(score(chosen + [n]), n) for n in pool]
        val, n = min(scored)
        if best is not None and val >= best:
            break
        best = val
        chosen.append(n)
        pool.remove(n)
        if val < 0:
            break
    return sorted(chosen) if chosen else None


def mazur_combination_search(f, xs: BlockSequence | None, mu: WeightSeq, epsilon,
                             horizon: int) -> Certificate:
    """Best y = sum_{i in G} (mu_i / mu(G)) x_i over the searched G.

    ``xs=None`` is canonical mode, x_i = e_i.  Otherwise G indexes the
    sequence from 1 and the horizon is capped at len(xs) + 1.
    """
    epsilon = as_fraction(epsilon)
    _check_divergent(mu, epsilon, horizon)
    if xs is not None:
        horizon = min(horizon, len(xs) + 1)
    top = _top_block(horizon)
    a0, warnings = _search_floor(mu, epsilon, top)

    def combo(G: Sequence[int]) -> FinVec:
        total = mu.mass(G)
        if xs is None:
            return FinVec({i: mu(i) / total for i in G})
        y = FinVec()
        for i in G:
            y = y + xs.blocks[i - 1].scale(mu(i) / total)
        return y

    best = None
    for a, b in _intervals(a0, top):
        G = range(1 << a, 1 << b)
        val = ext_norm(f, combo(G))
        key = (val, a, b)
        if best is None or key < best[0]:
            best = (key, [(a, b)], "interval")
    # block unions only refine a search that has not yet gone below epsilon
    blocks = None
    if best[0][0] >= epsilon:
        blocks = _greedy_blocks(range(a0, top),
                                lambda chosen: ext_norm(f, combo(_union_blocks(chosen))))
    if blocks is not None:
        G = _union_blocks(blocks)
        val = ext_norm(f, combo(G))
        if val < best[0][0]:
            best = ((val, blocks[0], blocks[-1] + 1), [(n, n + 1) for n in blocks], "greedy-blocks")
    (val, _, _), pieces, how = best
    return Certificate("mazur", {
        "family": family_to_json(f), "weights": weights_to_json(mu), "epsilon": _q(epsilon),
        "horizon": horizon, "mode": "canonical" if xs is None else "blocks",
        "blocks": None if xs is None else xs.to_json(),
        "G": [[1 << a, 1 << b] for a, b in pieces], "found_by": how,
        "value": _q(val), "below_epsilon": val < epsilon,
    }, holds=val < epsilon, warnings=warnings)


# --------------------------------------------------------------- FIN vs EXH

def exh_vs_fin_probe(f, tau: WeightSeq, g, horizon: int) -> Certificate:
    """Window norms and tails of sigma = tau * chi_A, with evidence tags.

    BOUNDED-NORMS when the norm at the horizon is at most 3/2 of the norm at
    the middle dyadic window, DIVERGING-NORMS otherwise.  TAIL-ABOVE(delta)
    when the last tail lower bound delta is at least half the first one.
    """
    top = _top_block(horizon)
    A = realize(g, horizon)
    sigma = tau.vector(A)
    norms = []
    for j in range(1, top + 1):
        N = 1 << j
        norms.append((N, ext_norm(f, FinVec({k: v for k, v in sigma.items() if k < N}))))
    tails = []
    for j in range(1, top):
        n = 1 << j
        tails.append((n, ext_norm(f, FinVec({k: v for k, v in sigma.items() if k >= n}))))
    mid = norms[(len(norms) - 1) // 2][1]
    last = norms[-1][1]
    norm_tag = "BOUNDED-NORMS" if last <= Fraction(3, 2) * mid else "DIVERGING-NORMS"
    tags = [norm_tag]
    if tails:
        first_tail, last_tail = tails[0][1], tails[-1][1]
        if last_tail > 0 and 2 * last_tail >= first_tail:
            tags.append(f"TAIL-ABOVE({last_tail})")
        else:
            tags.append("TAIL-DECAYING")
    if norm_tag == "DIVERGING-NORMS":
        verdict = "NOT-IN-FIN-EVIDENCE"
    elif tags[-1].startswith("TAIL-ABOVE"):
        verdict = "FIN-MINUS-EXH-EVIDENCE"
    else:
        verdict = "EXH-EVIDENCE"
    return Certificate("exh-fin", {
        "family": family_to_json(f), "weights": weights_to_json(tau),
        "generator": generator_to_json(g), "horizon": horizon,
        "window_norms": [[N, _q(v)] for N, v in norms],
        "tail_lower_bounds": [[n, _q(v)] for n, v in tails],
        "tags": tags, "verdict": verdict,
    })


# -------------------------------------------------------------- re-verification

def verify_certificate(cert: Certificate) -> bool:
    """Recompute every exact value recorded in ``cert`` from its payload."""
    p = cert.payload
    kind = cert.kind
    if kind == "l1-copy":
        f = family_from_json(p["family"])
        g = generator_from_json(p["generator"])
        if not chain_witness_check(f, g, p["N"]):
            return False
        return all(
            _q(ext_norm(f, FinVec.from_json(r["vector"]))) == r["norm"] == r["l1"]
            for r in p["rows"]
        )
    if kind == "c0-branch":
        codes = branch_codes(p["period"], p["N"])
        if codes != p["codes"]:
            return False
        for r in p["rows"]:
            x = FinVec(zip(codes, (Fraction(v) for v in r["coefficients"])))
            if _q(ext_norm(Antichains(), x)) != r["norm"] or r["norm"] != r["sup"]:
                return False
        return True
    if kind == "schur":
        f = family_from_json(p["family"])
        xs = BlockSequence.from_json(p["blocks"])
        Aprime = set(p["functional_support"])
        A = set(realize(generator_from_json(p["generator"]), p["horizon"]))
        if not Aprime <= A:
            return False
        thr = Fraction(p["threshold"])
        for x, v in zip(xs.blocks, p["values"]):
            val = abs(sum((x[k] for k in x.support() if k in Aprime), Fraction(0)))
            if _q(val) != v or val <= thr:
                return False
        return True
    if kind == "variation":
        m = DyadicMeasure.from_json(p["measure"])
        return (_q(variation_norm(m)) == p["variation"]
                == _q(ext_norm(Antichains(), m.tree_vector())) == p["antichain_norm"])
    if kind == "ptak-fill":
        f = family_from_json(p["family"])
        mu = weights_from_json(p["weights"])
        E = [k for lo, hi in p["E"] for k in range(lo, hi)]
        val, mass = _phi(f, mu, E), mu.mass(E)
        return (_q(val) == p["phi"] and _q(mass) == p["mass"]
                and val < Fraction(p["epsilon"]) * mass)
    if kind == "mazur":
        f = family_from_json(p["family"])
        mu = weights_from_json(p["weights"])
        G = [k for lo, hi in p["G"] for k in range(lo, hi)]
        total = mu.mass(G)
        if p["mode"] == "canonical":
            y = FinVec({i: mu(i) / total for i in G})
        else:
            xs = BlockSequence.from_json(p["blocks"])
            y = FinVec()
            for i in G:
                y = y + xs.blocks[i - 1].scale(mu(i) / total)
        val = ext_norm(f, y)
        return _q(val) == p["value"] and (val < Fraction(p["epsilon"])) == p["below_epsilon"]
    if kind == "exh-fin":
        again = exh_vs_fin_probe(
            family_from_json(p["family"]), weights_from_json(p["weights"]),
            generator_from_json(p["generator"]), p["horizon"],
        )
        return again.payload == p
    if kind == "filled-up-to-horizon":
        again = ptak_fill_search(family_from_json(p["family"]), weights_from_json(p["weights"]),
                                 Fraction(p["epsilon"]), p["horizon"])
        return again.kind == kind and again.payload == p
    raise ValueError(f"unknown certificate kind {kind!r}")


__all__ = [
    "BlockSequence", "Certificate", "DyadicMeasure", "branch_codes", "c0_branch_check",
    "exh_vs_fin_probe", "l1_copy_check", "mazur_combination_search", "ptak_fill_search",
    "schur_witness", "variation_by_partitions", "variation_identity_check",
    "variation_norm", "verify_certificate",
]
