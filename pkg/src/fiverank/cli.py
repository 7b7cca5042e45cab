"""Command-line front end.

Subcommands: derive, sieve, verify, classgroup, oracle, paper-check.
All outputs are JSON or JSONL with decimal-string integers, no
timestamps, and canonical key order, so identical configurations produce
byte-identical output.  Configuration comes from an optional key=value
file (FIVERANK_CONFIG environment variable or --config), overridden by
flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .classgroup import group_structure, oracle_scan
from .errors import FiverankError
from .exact import rational_to_string
from .family import CONSTANTS, specialize
from .sieve import admissible_z, check_z, sieve_data, singular_abscissa
from .splitting import (
    EXPECTED_PATTERN,
    SPLIT,
    independence_certificate,
    splitting_pattern,
    verify_instance,
)

SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    trial_bound: int = 10**7
    disc_bound: int = 10**7
    sieve_count: int = 10
    sieve_sign: str = "both"
    sieve_start: int = 0
    output: str = "-"
    workers: int = 1

    def validate(self) -> "RunConfig":
        if self.trial_bound <= 0 or self.disc_bound <= 0:
            raise ValueError("bounds must be positive")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        if self.sieve_sign not in ("pos", "neg", "both"):
            raise ValueError("sign must be pos, neg or both")
        return self


_CONFIG_KEYS = {
    "trial_bound": int,
    "disc_bound": int,
    "sieve_count": int,
    "sieve_sign": str,
    "sieve_start": int,
    "output": str,
    "workers": int,
}


def load_config(path: str | None) -> RunConfig:
    """key = value lines; # starts a comment; unknown keys are an error."""
    cfg = RunConfig()
    if path is None:
        path = os.environ.get("FIVERANK_CONFIG")
    if not path:
        return cfg
    updates = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = (part.strip() for part in line.partition("="))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            updates[key] = _CONFIG_KEYS[key](value.strip("\"'"))
    return replace(cfg, **updates)


def _open_out(path: str):
    if path in ("-", ""):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit(fh, record: dict) -> None:
    fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _error_record(fh, exc: Exception) -> int:
    _emit(fh, {"record": "error", "schema": SCHEMA,
               "error": type(exc).__name__, "message": str(exc)})
    return 1


# ---------------------------------------------------------------------------
# derive
# ---------------------------------------------------------------------------

def specialization_dump() -> dict:
    sp = specialize()
    data = sieve_data()
    constants = {}
    for key, value in sorted(CONSTANTS.items()):
        if key == "t":
            constants[key] = rational_to_string(value)
        else:
            constants[key] = json.loads(json.dumps(value, default=str))
    return {
        "record": "specialization",
        "schema": SCHEMA,
        "constants": constants,
        "t": rational_to_string(sp.t),
        "u": [rational_to_string(ui) for ui in sp.u],
        "torsion_curves": [m.to_json() for m in sp.E_models],
        "quotient_curves": [m.to_json() for m in sp.F_models],
        "isogenies": [phi.to_json() for phi in sp.isogenies],
        "model_poly": sp.f_model.to_json(),
        "scale": rational_to_string(sp.scale),
        "x_of_z": sp.x_of_z.to_json(),
        "v_of_z": sp.v_of_z.to_json(),
        "w_of_z": sp.w_of_z.to_json(),
        "minimal_models": [d.minimal.to_json() for d in data],
        "five_component_primes": [[str(p) for p in d.five_primes] for d in data],
        "singular_abscissae": [
            {str(d.congruence_prime): str(singular_abscissa(d, d.congruence_prime))}
            for d in data],
    }


def cmd_derive(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        sp = specialize()
        results = sp.verify_identities()
        failures = [name for name, ok in results.items() if not ok]
        for name in sorted(results):
            _emit(fh, {"record": "identity", "schema": SCHEMA,
                       "name": name, "pass": results[name]})
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as out:
                json.dump(specialization_dump(), out, indent=2, sort_keys=True)
                out.write("\n")
        if failures:
            _emit(fh, {"record": "summary", "schema": SCHEMA, "pass": False,
                       "failed": failures})
            return 1
        _emit(fh, {"record": "summary", "schema": SCHEMA, "pass": True})
        return 0
    except FiverankError as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


# ---------------------------------------------------------------------------
# sieve / verify
# ---------------------------------------------------------------------------

def cmd_sieve(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        ok = True
        for z in admissible_z(start=cfg.sieve_start, count=cfg.sieve_count,
                              sign=cfg.sieve_sign):
            report = check_z(z)
            ok = ok and report.passed
            _emit(fh, report.to_json())
        return 0 if ok else 1
    except FiverankError as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


def cmd_verify(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        if args.z is not None:
            zs = [args.z]
        else:
            zs = list(admissible_z(start=cfg.sieve_start, count=args.batch,
                                   sign=cfg.sieve_sign))
        if cfg.workers > 1 and len(zs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                certs = list(pool.map(verify_instance, zs))
        else:
            certs = [verify_instance(z) for z in zs]
        ok = True
        for cert in certs:
            ok = ok and cert.conclusion
            _emit(fh, cert.to_json())
        return 0 if ok else 1
    except FiverankError as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


# ---------------------------------------------------------------------------
# classgroup / oracle
# ---------------------------------------------------------------------------

def cmd_classgroup(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        st = group_structure(args.disc, disc_bound=cfg.disc_bound)
        record = st.to_json()
        record.update({
            "record": "classgroup",
            "schema": SCHEMA,
            "p_ranks": {str(p): st.p_rank(p) for p in (2, 3, 5, 7)},
        })
        _emit(fh, record)
        return 0
    except (FiverankError, ValueError) as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


def cmd_oracle(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        failed = False
        for outcome in oracle_scan(args.count, trial_bound=min(cfg.trial_bound, 10**6),
                                   disc_bound=cfg.disc_bound):
            if outcome.status == "skip" and not args.include_skips:
                continue
            failed = failed or outcome.status == "fail"
            _emit(fh, outcome.to_json())
        return 1 if failed else 0
    except FiverankError as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


# ---------------------------------------------------------------------------
# paper-check
# ---------------------------------------------------------------------------

def paper_check_records() -> list[dict]:
    """Every externally-sourced constant of the construction, re-verified."""
    sp = specialize()
    records = []

    def add(name, passed, detail=""):
        records.append({"record": "paper-check", "schema": SCHEMA,
                        "name": name, "pass": bool(passed), "detail": detail})

    add("parameter-triple", sp.u == (Fraction(19, 21), Fraction(-29, 21),
                                     Fraction(-11, 21)),
        "u = (19/21, -29/21, -11/21)")
    for name, ok in sorted(sp.verify_identities().items()):
        add(f"identity/{name}", ok)

    data = sieve_data()
    expected_five = CONSTANTS["five_component_primes"]
    for d, exp in zip(data, expected_five):
        add(f"five-component-primes/curve-{d.index}", d.five_primes == exp,
            f"{sorted(d.five_primes)}")
        add(f"singular-abscissa/curve-{d.index}",
            singular_abscissa(d, d.congruence_prime) == d.excluded_residue,
            f"x = {d.excluded_residue} mod {d.congruence_prime}")

    from .curves import is_semistable
    for i, model in enumerate(sp.E_models + sp.F_models, 1):
        add(f"semistability/model-{i}", is_semistable(model.curve()))

    zs = [next(iter(admissible_z(sign="pos"))), next(iter(admissible_z(sign="neg")))]
    for z in zs:
        report = check_z(z)
        add(f"extension-conditions/z={z}",
            report.passed and report.verbatim_passed(),
            "valuations, congruences and node avoidance")
        pattern = splitting_pattern(z)
        add(f"splits-in-K/z={z}", pattern.k_verdicts == (SPLIT,) * 3)
        add(f"splitting-pattern/z={z}", pattern.entries == EXPECTED_PATTERN)
        add(f"independence/z={z}", independence_certificate(pattern))

    add("sign-near-zero/positive", sp.radicand(Fraction(1, 10)) < 0,
        "small z > 0 gives an imaginary field")
    add("sign-near-zero/negative", sp.radicand(Fraction(-1, 10)) > 0,
        "small z < 0 gives a real field")
    return records


def cmd_paper_check(args, cfg: RunConfig) -> int:
    fh, close = _open_out(cfg.output)
    try:
        records = paper_check_records()
        for record in records:
            _emit(fh, record)
        ok = all(r["pass"] for r in records)
        _emit(fh, {"record": "summary", "schema": SCHEMA, "pass": ok,
                   "checks": len(records)})
        return 0 if ok else 1
    except FiverankError as exc:
        return _error_record(fh, exc)
    finally:
        if close:
            fh.close()


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiverank",
        description="build, sieve and verify the quadratic fields whose "
                    "class group gains three independent order-5 quotients")
    parser.add_argument("--config", help="key=value config file "
                        "(or FIVERANK_CONFIG)")
    parser.add_argument("--output", "-o", help="output path (default stdout)")
    parser.add_argument("--workers", type=int, help="worker processes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="replay the symbolic identity suite")
    p.add_argument("--emit", help="write specialization.json here")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("sieve", help="stream admissible z with condition reports")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--sign", choices=("pos", "neg", "both"), default=None)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--emit", help="JSONL output path (alias of --output)")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("verify", help="emit field certificates")
    p.add_argument("--z", type=int, default=None)
    p.add_argument("--batch", type=int, default=None)
    p.add_argument("--sign", choices=("pos", "neg", "both"), default=None)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--emit", help="JSONL output path (alias of --output)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classgroup", help="class group of one discriminant")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("oracle", help="small-instance class-number suite")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--bound", type=int, default=None, help="|D| budget")
    p.add_argument("--include-skips", action="store_true")
    p.add_argument("--emit", help="JSONL output path (alias of --output)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("paper-check", help="re-verify every sourced constant")
    p.set_defaults(func=cmd_paper_check)
    return parser


def _merge_config(args) -> RunConfig:
    cfg = load_config(args.config)
    overrides = {}
    if args.output is not None:
        overrides["output"] = args.output
    if getattr(args, "emit", None) is not None and args.command != "derive":
        overrides["output"] = args.emit
    if args.workers is not None:
        overrides["workers"] = args.workers
    if getattr(args, "sign", None) is not None:
        overrides["sieve_sign"] = args.sign
    if getattr(args, "start", None) is not None:
        overrides["sieve_start"] = args.start
    if getattr(args, "count", None) is not None and args.command == "sieve":
        overrides["sieve_count"] = args.count
    if getattr(args, "bound", None) is not None:
        overrides["disc_bound"] = args.bound
    return replace(cfg, **overrides).validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.z is None and args.batch is None:
        parser.error("verify needs --z or --batch")
    try:
        cfg = _merge_config(args)
    except (ValueError, OSError) as exc:
        parser.error(str(exc))
    return args.func(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
