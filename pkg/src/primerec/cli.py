"""Command-line interface.

Exit codes: 0 ok, 2 arithmetic overflow, 3 verification mismatch, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional, TextIO

from . import oracle, records
from .arith import ArithmeticOverflow
from .composite_generators import GeneratorKind, composite_family
from .recursion import (StepState, advance, bertrand_check, closed_form_bounds, corrupt, initial_state,
                        iterate_bounds, run, steps_for_limit)
from .residue_classes import ResidueClass, value_of

EXIT_OK, EXIT_OVERFLOW, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4
COUNT_STEP_MAX = 8
CLASSES = (ResidueClass.OMINUS, ResidueClass.OPLUS)


@dataclass
class RunConfig:
    max_step: int = 0
    limit: Optional[int] = None
    arithmetic: str = "checked64"
    output_format: str = "text"
    verify: bool = False
    seed_n: int = 1
    mode: str = "primes"

    def __post_init__(self):
        if self.arithmetic not in ("checked64", "bignum"):
            raise ValueError(f"unknown arithmetic {self.arithmetic!r}")
        if self.output_format not in ("text", "json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.limit is not None:
            if self.limit < 2:
                raise ValueError("limit must be >= 2")
            self.max_step = steps_for_limit(self.limit, bignum=self.bignum)

    @property
    def bignum(self) -> bool:
        return self.arithmetic == "bignum"


class VerifyError(Exception):
    def __init__(self, message: str):
        super().__init__(message)


def _run(config: RunConfig, s_max: Optional[int] = None) -> list[StepState]:
    return run(config.max_step if s_max is None else s_max, mode=config.mode, bignum=config.bignum)


def _emit_list(name: str, values: list[int], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps({"schema": records.SCHEMA, name: values}) + "\n")
    elif fmt == "csv":
        out.write("value\n" + "".join(f"{v}\n" for v in values))
    else:
        out.write("".join(f"{v}\n" for v in values))


def state_primes(state: StepState, limit: Optional[int] = None) -> list[int]:
    """2, 3 and every prime the state has decided, sorted; capped at ``limit`` if given."""
    values = [2, 3]
    for cls in CLASSES:
        values.extend(value_of(cls, g, bignum=True) for g in state.primes(cls))
    values.sort()
    if limit is not None:
        values = [v for v in values if v <= limit]
    return values


def oracle_primes(state: StepState, limit: Optional[int] = None) -> list[int]:
    top = max(value_of(cls, state.bound(cls), bignum=True) for cls in CLASSES)
    table = oracle.sieve(top)
    values = [2, 3]
    for cls in CLASSES:
        values.extend(value_of(cls, g, bignum=True) for g in oracle.gamma_primes(cls, state.bound(cls), table))
    values.sort()
    if limit is not None:
        values = [v for v in values if v <= limit]
    return values


def _first_difference(got: list[int], want: list[int]) -> Optional[int]:
    for a, b in zip(got, want):
        if a != b:
            return min(a, b)
    if len(got) != len(want):
        return (got if len(got) > len(want) else want)[min(len(got), len(want))]
    return None


def cmd_primes(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        state = _run(config)[-1]
    except ArithmeticOverflow as exc:
        err.write(f"error: {exc}\n")
        return EXIT_OVERFLOW
    values = state_primes(state, config.limit)
    if config.verify:
        diff = _first_difference(values, oracle_primes(state, config.limit))
        if diff is not None:
            err.write(f"verify: mismatch at value {diff}\n")
            return EXIT_VERIFY
    _emit_list("primes", values, config.output_format, out)
    return EXIT_OK


def step_report(s: int, seed_n: int = 1, *, bignum: bool = False, mode: str = "primes") -> dict:
    bounds = iterate_bounds(s, seed_n, bignum=bignum)
    rec, closed = bounds[-1], closed_form_bounds(s, seed_n, bignum=bignum)
    report = {
        "step": s,
        "seed_n": seed_n,
        "r_minus": rec.r_minus,
        "r_plus": rec.r_plus,
        "closed_r_minus": closed.r_minus,
        "closed_r_plus": closed.r_plus,
        "closed_form_match": (rec.r_minus, rec.r_plus) == (closed.r_minus, closed.r_plus),
        "bertrand": bertrand_check(bounds[-2], rec) if s >= 1 else None,
        "new_minus": None,
        "new_plus": None,
    }
    if seed_n == 1 and s <= COUNT_STEP_MAX:
        states = run(s, mode=mode, bignum=bignum)
        prev = states[-2] if s >= 1 else None
        for cls, key in ((ResidueClass.OMINUS, "new_minus"), (ResidueClass.OPLUS, "new_plus")):
            report[key] = len(states[-1].primes(cls)) - (len(prev.primes(cls)) if prev else 0)
    return report


def cmd_step(s: int, config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        report = step_report(s, config.seed_n, bignum=config.bignum, mode=config.mode)
    except ArithmeticOverflow as exc:
        err.write(f"error: step {s}: {exc}\n")
        return EXIT_OVERFLOW
    if config.output_format == "json":
        out.write(json.dumps(dict(report, schema=records.SCHEMA), sort_keys=True) + "\n")
    elif config.output_format == "csv":
        keys = list(report)
        out.write(",".join(keys) + "\n" + ",".join("" if report[k] is None else str(report[k]) for k in keys) + "\n")
    else:
        flag = "" if report["closed_form_match"] else "  MISMATCH"
        out.write(f"step {s} (n={config.seed_n})\n")
        out.write(f"  r- = {report['r_minus']}  closed form {report['closed_r_minus']}{flag}\n")
        out.write(f"  r+ = {report['r_plus']}  closed form {report['closed_r_plus']}{flag}\n")
        if report["new_minus"] is None:
            out.write("  new primes: not computed\n")
        else:
            out.write(f"  new primes: O- {report['new_minus']}, O+ {report['new_plus']}\n")
        if report["bertrand"] is None:
            out.write("  bertrand: seed step\n")
        else:
            out.write(f"  bertrand: {'ok' if report['bertrand'] else 'FAILED'}\n")
    return EXIT_OK


TABLE1_ROWS = (
    ("g'-", GeneratorKind.MINUS1),
    ("g'+,1", GeneratorKind.PLUS1),
    ("g'+,2", GeneratorKind.PLUS2),
)


def table1(alphas=(1, 2, 3), count: int = 3) -> list[tuple[str, int, list[int]]]:
    rows = []
    for label, kind in TABLE1_ROWS:
        for a in alphas:
            fam = composite_family(kind, a)
            rows.append((label, a, [fam.first + k * fam.modulus for k in range(count)]))
    return rows


def cmd_table1(config: RunConfig, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    rows = table1()
    if config.output_format == "json":
        doc = [{"generator": lbl, "alpha": a, "gammas": g} for lbl, a, g in rows]
        out.write(json.dumps({"schema": records.SCHEMA, "table1": doc}) + "\n")
    elif config.output_format == "csv":
        out.write("generator,alpha,gamma1,gamma2,gamma3\n")
        for lbl, a, g in rows:
            out.write(f"{lbl},{a},{g[0]},{g[1]},{g[2]}\n")
    else:
        out.write(f"{'':8}" + "".join(f"{'alpha = ' + str(a):<16}" for a in (1, 2, 3)) + "\n")
        for i in range(0, len(rows), 3):
            cells = "".join(f"{', '.join(map(str, g)) + ', ...':<16}" for _, _, g in rows[i:i + 3])
            out.write(f"{rows[i][0]:8}{cells}\n")
    return EXIT_OK


def cmd_verify(s_max: int, config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None,
               inject_fault: bool = False) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        states = _run(config, s_max)
    except ArithmeticOverflow as exc:
        err.write(f"error: {exc}\n")
        return EXIT_OVERFLOW
    if inject_fault:
        states[-1] = corrupt(states[-1])
    top = max(value_of(cls, states[-1].bound(cls), bignum=True) for cls in CLASSES)
    table = oracle.sieve(top)
    failures = 0
    first = None
    for state in states:
        cells = []
        for cls in CLASSES:
            got = state.primes(cls)
            want = oracle.gamma_primes(cls, state.bound(cls), table)
            if list(got) == want:
                cells.append(f"{cls.value} pass ({len(got)})")
                continue
            failures += 1
            gamma = min(set(got) ^ set(want)) if set(got) != set(want) else None
            cells.append(f"{cls.value} FAIL")
            if first is None:
                first = (state.step, cls.value, gamma)
        out.write(f"step {state.step}: " + ", ".join(cells) + "\n")
    checks = 2 * len(states)
    out.write(f"total: {checks - failures}/{checks} passed\n")
    if first is not None:
        err.write(f"verify: first divergence at step {first[0]}, class {first[1]}, gamma {first[2]}\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    rows = []
    try:
        t0 = time.perf_counter()
        state = initial_state()
        rows.append((state, time.perf_counter() - t0))
        for _ in range(config.max_step):
            t0 = time.perf_counter()
            state = advance(state, mode=config.mode, bignum=config.bignum)
            rows.append((state, time.perf_counter() - t0))
    except ArithmeticOverflow as exc:
        err.write(f"error: {exc}\n")
        return EXIT_OVERFLOW
    out.write("step,limit,recursion_seconds,sieve_seconds\n")
    for state, elapsed in rows:
        limit = max(value_of(cls, state.bound(cls), bignum=True) for cls in CLASSES)
        t0 = time.perf_counter()
        oracle.sieve(limit)
        sieve_elapsed = time.perf_counter() - t0
        out.write(f"{state.step},{limit},{elapsed:.6f},{sieve_elapsed:.6f}\n")
    return EXIT_OK


def cmd_dump(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None, section: str = "table",
             include_composites: bool = False, output: Optional[str] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        state = _run(config)[-1]
    except ArithmeticOverflow as exc:
        err.write(f"error: {exc}\n")
        return EXIT_OVERFLOW
    if config.output_format == "json":
        text = records.dump_json(state, include_composites)
    elif section == "pieces":
        text = records.dumps_pieces(state)
    elif config.output_format == "csv":
        text = records.table_csv(records.table_rows(state, include_composites))
    else:
        lines = [" ".join(records.TABLE_COLUMNS)]
        lines += [" ".join(str(row[c]) for c in records.TABLE_COLUMNS)
                  for row in records.table_rows(state, include_composites)]
        text = "\n".join(lines) + "\n"
    try:
        if output is None:
            out.write(text)
        else:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--bignum", action="store_true", help="arbitrary precision instead of checked 64-bit")
    common.add_argument("--mode", choices=("primes", "all"), default="primes",
                        help="intersect prime parameters only, or every parameter in range")

    parser = argparse.ArgumentParser(prog="primerec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common], help="list primes decided by the recursion")
    p.add_argument("--limit", type=int)
    p.add_argument("--max-step", type=int, default=0)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("step", parents=[common], help="report ranges and progress for one step")
    p.add_argument("s", type=int)
    p.add_argument("--seed-n", type=int, default=1)

    sub.add_parser("table1", parents=[common], help="first composite gamma-values for a = 1, 2, 3")

    p = sub.add_parser("verify", parents=[common], help="compare every step with a sieve")
    p.add_argument("--max-step", type=int, default=3)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("bench", parents=[common], help="time the recursion against a plain sieve")
    p.add_argument("--max-step", type=int, default=4)

    p = sub.add_parser("dump", parents=[common], help="dump pieces and the gamma table")
    p.add_argument("--max-step", type=int, default=0)
    p.add_argument("--limit", type=int)
    p.add_argument("--section", choices=("table", "pieces"), default="table")
    p.add_argument("--include-composites", action="store_true")
    p.add_argument("--output")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        max_step=getattr(args, "max_step", 0) or 0,
        limit=getattr(args, "limit", None),
        arithmetic="bignum" if args.bignum else "checked64",
        output_format=args.format,
        verify=getattr(args, "verify", False),
        seed_n=getattr(args, "seed_n", 1),
        mode=args.mode,
    )
    try:
        if args.command == "primes":
            return cmd_primes(config)
        if args.command == "step":
            return cmd_step(args.s, config)
        if args.command == "table1":
            return cmd_table1(config)
        if args.command == "verify":
            return cmd_verify(config.max_step, config, inject_fault=args.inject_fault)
        if args.command == "bench":
            return cmd_bench(config)
        return cmd_dump(config, section=args.section, include_composites=args.include_composites,
                        output=args.output)
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
