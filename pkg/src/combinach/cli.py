"""Command-line frontend.

Every subcommand takes JSON descriptions for families, vectors, generators and
weights, rationals as "p/q" strings and ordinals in ``w^2*3+w+5`` syntax.
``--job FILE`` reads the same fields from a JSON object instead of flags.

Exit codes: 0 success, 2 invalid input, 3 failed precondition, 4 an exact
identity failed to verify.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import acceptance
from .diagnostics import (
    BlockSequence, Certificate, DyadicMeasure, c0_branch_check, exh_vs_fin_probe,
    l1_copy_check, mazur_combination_search, ptak_fill_search, schur_witness,
    variation_identity_check,
)
from .families import (
    NotPrecompact, Precompact, delta_system_extract, family_from_json, family_label,
    heredity_violation, precompact_status, spreading_check, symbolic_rank,
)
from .norms import FinVec, ext_norm, tail_norm
from .ordinal import OrdinalError, format_ordinal, ord_parse
from .schreier import (
    PreconditionError, VerificationError, density_bound_check, schreier_contains,
    summable_like_witness, trace_vs_I2_witness,
)
from .setgen import generator_from_json, generator_to_json, realize
from .submeasures import (
    SubmeasureSpec, exh_evidence, phi, profile_csv, tail_profile, weights_from_json,
)

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------- inputs

def _json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON {text!r}: {exc.msg}") from None


def _json_or_name(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text  # bare catalog name


def _family(text):
    return family_from_json(_json_or_name(text))


def _vec(text):
    obj = _json(text)
    if not isinstance(obj, dict):
        raise UsageError("vectors are JSON objects {index: \"p/q\"}")
    return FinVec.from_json(obj)


def _gen(text):
    return generator_from_json(_json(text))


def _weights(text):
    return weights_from_json(_json_or_name(text))


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


def _int_set(text) -> tuple[int, ...]:
    obj = _json(text)
    if not isinstance(obj, list) or not all(isinstance(k, int) for k in obj):
        raise UsageError("sets are JSON lists of integers")
    return tuple(sorted(set(obj)))


def _int_list(text) -> list[int]:
    try:
        return [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


# ------------------------------------------------------------------ outputs

def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(e, (dict, list)) for e in
                                                          (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for e in obj:
            if isinstance(e, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_flat(v)}" for k, v in e.items()))
            else:
                lines.append(f"{pad}- {_flat(e)}")
        return lines
    return [f"{pad}{_flat(obj)}"]


def _flat(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


class Output:
    def __init__(self, mode: str, stream):
        self.mode = mode
        self.stream = stream

    def scalar(self, name: str, value) -> None:
        if self.mode == "records":
            self.record({name: str(value)})
        elif self.mode == "csv":
            self.stream.write(f"{name}\n{value}\n")
        else:
            self.stream.write(f"{value}\n")

    def record(self, rec: dict) -> None:
        if self.mode == "records":
            self.stream.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        elif self.mode == "csv":
            raise UsageError("csv output is available for tail-profile only")
        else:
            self.stream.write("\n".join(_render_text(rec)) + "\n")


# ------------------------------------------------------------- subcommands

def cmd_norm(a, out):
    out.scalar("norm", ext_norm(_family(a.family), _vec(a.vec)))


def cmd_tail(a, out):
    out.scalar("tail_norm", tail_norm(_family(a.family), _vec(a.vec), a.n))


def _spec(a) -> SubmeasureSpec:
    return SubmeasureSpec(_family(a.family), _weights(a.weights))


def cmd_phi(a, out):
    if (a.set is None) == (a.gen is None):
        raise UsageError("give exactly one of --set or --gen")
    if a.gen is not None:
        if a.horizon is None:
            raise UsageError("--gen needs --horizon")
        A = realize(_gen(a.gen), a.horizon)
    else:
        A = _int_set(a.set)
    out.scalar("phi", phi(_spec(a), A))


def cmd_tail_profile(a, out):
    spec, g = _spec(a), _gen(a.gen)
    cutoffs = _int_list(a.cutoffs)
    if a.epsilon is not None:
        ev = exh_evidence(spec, g, _rational(a.epsilon), cutoffs, a.horizon)
        if out.mode == "csv":
            out.stream.write(profile_csv(ev.profile))
        else:
            out.record(ev.as_record())
        return
    points = tail_profile(spec, g, cutoffs, a.horizon)
    if out.mode == "csv":
        out.stream.write(profile_csv(points))
        return
    out.record({
        "spec": spec.label, "generator": generator_to_json(g),
        "profile": [{"cutoff": p.cutoff, "horizon": p.horizon, "lower_bound": str(p.value)}
                    for p in points],
    })


def cmd_schreier_check(a, out):
    alpha = ord_parse(a.alpha)
    F = _int_set(a.set)
    out.scalar("member", "true" if schreier_contains(alpha, F) else "false")


def cmd_rank(a, out):
    f = _family(a.family)
    rank = symbolic_rank(f)
    status = precompact_status(f)
    rec = {"family": family_label(f), "rank": None if rank is None else format_ordinal(rank)}
    if isinstance(status, Precompact):
        rec["precompact"] = True
        rec["reason"] = status.reason
    elif isinstance(status, NotPrecompact):
        rec["precompact"] = False
        rec["witness"] = generator_to_json(status.witness)
    else:
        rec["precompact"] = "unknown"
    out.record(rec)


def cmd_spreading(a, out):
    f = _family(a.family)
    her = heredity_violation(f, a.window)
    spr = spreading_check(f, a.window)
    rec = {"family": family_label(f), "window": a.window}
    rec["hereditary"] = "OK" if her is None else {"member": list(her[0]), "missing_subset": list(her[1])}
    rec["spreading"] = "OK" if spr is None else {"F": list(spr[0]), "G": list(spr[1])}
    out.record(rec)


def cmd_witness(a, out):
    if a.which == "summable-like":
        if a.alpha is None or a.N is None:
            raise UsageError("summable-like needs --alpha and --N")
        out.record(summable_like_witness(ord_parse(a.alpha), a.N).as_record())
    elif a.which == "trace-i2":
        out.record(trace_vs_I2_witness(a.k_max).as_record())
    else:
        if None in (a.j, a.gen, a.N, a.horizon):
            raise UsageError("density-bound needs --j, --gen, --N and --horizon")
        out.record(density_bound_check(a.j, _gen(a.gen), a.N, a.horizon).as_record())


def cmd_delta_system(a, out):
    sets = _json(a.sets)
    if not isinstance(sets, list):
        raise UsageError("--sets is a JSON list of integer lists")
    found = delta_system_extract([tuple(s) for s in sets], a.m)
    if found is None:
        out.record({"delta_system": "NotFound"})
    else:
        out.record({"delta_system": {"indices": list(found.indices), "root": list(found.root),
                                     "sets": [list(s) for s in found.sets]}})


def _cert(out, cert: Certificate | None):
    out.record({"certificate": "NotFound"} if cert is None else cert.as_record())


def cmd_l1(a, out):
    samples = _json(a.samples)
    _cert(out, l1_copy_check(_family(a.family), _gen(a.gen), a.N,
                             [FinVec.from_json(s) for s in samples]))


def cmd_c0(a, out):
    samples = _json(a.samples)
    _cert(out, c0_branch_check(a.period, a.N, [[_rational(v) for v in s] for s in samples]))


def cmd_schur(a, out):
    xs = BlockSequence.from_json(_json(a.blocks))
    _cert(out, schur_witness(_family(a.family), xs, _rational(a.epsilon), _gen(a.gen), a.horizon))


def cmd_variation(a, out):
    _cert(out, variation_identity_check(DyadicMeasure.from_json(_json(a.measure))))


def cmd_ptak(a, out):
    _cert(out, ptak_fill_search(_family(a.family), _weights(a.weights), _rational(a.epsilon),
                                a.horizon))


def cmd_mazur(a, out):
    xs = None if a.blocks is None else BlockSequence.from_json(_json(a.blocks))
    _cert(out, mazur_combination_search(_family(a.family), xs, _weights(a.weights),
                                        _rational(a.epsilon), a.horizon))


def cmd_exh_fin(a, out):
    _cert(out, exh_vs_fin_probe(_family(a.family), _weights(a.weights), _gen(a.gen), a.horizon))


def cmd_selftest(a, out):
    results = acceptance.run_all(out.stream)
    passed = sum(r.passed for r in results)
    out.stream.write(f"{passed}/{len(results)} criteria passed\n")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="combinach", description="Exact norms, submeasures and Schreier families.")
    p.add_argument("--job", help="JSON file with the subcommand and its fields")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, *fields, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--output", choices=("text", "records", "csv"), default="text")
        for flag, opts in fields:
            sp.add_argument(flag, **opts)
        sp.set_defaults(func=func)
        return sp

    req = {"required": True}
    fam = ("--family", req)
    vec = ("--vec", req)
    wts = ("--weights", {"default": "lambda"})
    gen = ("--gen", req)
    hor = ("--horizon", {"type": int, "required": True})
    eps = ("--epsilon", req)

    add("norm", cmd_norm, fam, vec)
    add("tail", cmd_tail, fam, vec, ("--n", {"type": int, "required": True}))
    add("phi", cmd_phi, fam, wts, ("--set", {}), ("--gen", {}), ("--horizon", {"type": int}))
    add("tail-profile", cmd_tail_profile, fam, wts, gen, hor, ("--cutoffs", req), ("--epsilon", {}))
    add("schreier-check", cmd_schreier_check, ("--alpha", req), ("--set", req))
    add("rank", cmd_rank, fam)
    add("spreading", cmd_spreading, fam, ("--window", {"type": int, "default": 13}))
    add("witness", cmd_witness,
        ("which", {"choices": ("summable-like", "trace-i2", "density-bound")}),
        ("--alpha", {}), ("--N", {"type": int}), ("--k-max", {"type": int, "default": 3}),
        ("--j", {"type": int}), ("--gen", {}), ("--horizon", {"type": int}))
    add("delta-system", cmd_delta_system, ("--sets", req), ("--m", {"type": int, "required": True}))
    add("l1-check", cmd_l1, fam, gen, ("--N", {"type": int, "required": True}), ("--samples", req))
    add("c0-check", cmd_c0, ("--period", req), ("--N", {"type": int, "required": True}),
        ("--samples", req))
    add("schur", cmd_schur, fam, ("--blocks", req), eps, gen, hor)
    add("variation", cmd_variation, ("--measure", req))
    add("ptak", cmd_ptak, fam, wts, eps, hor)
    add("mazur", cmd_mazur, fam, ("--blocks", {}), wts, eps, hor)
    add("exh-fin", cmd_exh_fin, fam, wts, gen, hor)
    add("selftest", cmd_selftest)
    return p


def _job_argv(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read job file {path!r}: {exc}") from None
    if not isinstance(job, dict) or "subcommand" not in job:
        raise UsageError("job files are JSON objects with a 'subcommand' field")
    argv = str(job.pop("subcommand")).split()
    for key, val in job.items():
        argv.append("--" + key.replace("_", "-"))
        argv.append(val if isinstance(val, str) else json.dumps(val, separators=(",", ":")))
    return argv


def main(argv: Sequence[str] | None = None, stream=None) -> int:
    stream = stream or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        if argv[:1] == ["--job"] and len(argv) == 2:
            argv = _job_argv(argv[1])
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        code = args.func(args, Output(args.output, stream))
        return EXIT_OK if code is None else code
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, OrdinalError, ValueError, TypeError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
