"""``blochkit`` command line: JSON specs in, JSON or CSV reports out.

Exit codes: 0 success, 1 verify-suite failures, 2 invalid input,
3 numerical failure (overflow near the boundary or a pole).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .analysis import bloch_seminorm, little_bloch_check, sup_norm
from .errors import BlochkitError, NumericalOverflow, PoleError, PreconditionError
from .functions import Const, evaluate
from .grid import DiskGrid
from .isometry import comp_isometry_check, mult_isometry_check, weighted_isometry_probe
from .operators import composition_bounds, mult_bounds, wco_bounds
from .schema import (
    SchemaError,
    complex_from_json,
    function_from_json,
    function_to_json,
    operator_from_json,
    rotation_spec_from_json,
    to_jsonable,
)
from .spectra import (
    _is_rotation,
    mult_spectrum,
    mult_spectrum_membership,
    rotation_resolvent_solve,
    weighted_iso_spectrum,
)
from .suite import DEFAULT_SEED, run_suite

COMMANDS = ("norm", "bounds", "check-isometry", "spectrum", "resolvent", "verify-suite")
NEEDS_INPUT = set(COMMANDS) - {"verify-suite"}


@dataclass
class JobSpec:
    command: str
    inputs: Optional[dict] = None
    grid_overrides: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    format: str = "json"
    seed: int = DEFAULT_SEED

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise SchemaError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise SchemaError(f"unknown format {self.format!r}")
        if self.command in NEEDS_INPUT and not isinstance(self.inputs, dict):
            raise SchemaError(f"{self.command} needs a JSON object on --input")

    def grid(self) -> DiskGrid:
        o = self.grid_overrides
        return DiskGrid.default(o.get("rings", 20), o.get("angles", 512), o.get("refine", 3))


# -- commands -----------------------------------------------------------------

def _function_input(obj: dict):
    return function_from_json(obj.get("function", obj))


def _cmd_norm(job: JobSpec, grid: DiskGrid) -> dict:
    f = _function_input(job.inputs)
    beta = bloch_seminorm(f, grid)
    f0 = evaluate(f, 0j)
    return {
        "function": function_to_json(f),
        "value_at_origin": f0,
        "bloch_seminorm": beta,
        "bloch_norm": abs(f0) + beta.value,
        "sup_norm": sup_norm(f, grid),
        "little_bloch": little_bloch_check(f, grid.angles_per_ring),
    }


def _cmd_bounds(job: JobSpec, grid: DiskGrid) -> dict:
    op = operator_from_json(job.inputs)
    if op.kind == "multiplication":
        b = mult_bounds(op.psi, grid)
    elif op.kind == "composition":
        b = composition_bounds(op.phi, grid)
    else:
        b = wco_bounds(op.psi, op.phi, grid)
    return {"operator": op.kind, **b.to_json()}


def _cmd_isometry(job: JobSpec, grid: DiskGrid) -> dict:
    op = operator_from_json(job.inputs)
    if op.kind == "multiplication":
        v = mult_isometry_check(op.psi, grid)
    elif op.kind == "composition":
        v = comp_isometry_check(op.phi, grid)
    else:
        return {"operator": op.kind, "probe": weighted_isometry_probe(op.psi, op.phi, grid)}
    return {"operator": op.kind, "is_isometry": v.is_isometry, "reason": v.reason, "evidence": v.evidence}


def _rotation_of(raw_phi) -> Optional[object]:
    if isinstance(raw_phi, dict) and raw_phi.get("kind") == "rotation":
        return rotation_spec_from_json(raw_phi)
    return None


def _cmd_spectrum(job: JobSpec, grid: DiskGrid) -> dict:
    raw = job.inputs
    op = operator_from_json(raw)
    if op.kind == "multiplication":
        spec = mult_spectrum(op.psi, grid)
        if "lambda" in raw:
            m = mult_spectrum_membership(op.psi, complex_from_json(raw["lambda"]), grid)
            return {"operator": op.kind, "spectrum": spec, "membership": _membership_json(m)}
        return {"operator": op.kind, "spectrum": spec}
    rot = _rotation_of(raw.get("phi"))
    if op.kind == "composition":
        eta = 1.0
    else:
        eta = evaluate(op.psi, 0j)
        if not (isinstance(op.psi, Const) and abs(abs(eta) - 1) <= 1e-12):
            raise PreconditionError("weighted spectra need psi to be a unimodular constant")
    if rot is not None:
        return {"operator": op.kind, "spectrum": weighted_iso_spectrum(eta, rot)}
    if _is_rotation(op.phi):
        raise SchemaError("give rotations as {'kind': 'rotation', 'p', 'q'} or {'angle'} so the order is exact")
    return {"operator": op.kind, "spectrum": weighted_iso_spectrum(eta, op.phi, grid)}


def _membership_json(m) -> dict:
    out = {"in_spectrum": m.in_spectrum, "distance": m.distance, "witness": m.witness}
    if m.resolvent is not None:
        out.update(resolvent=m.resolvent, resolvent_residual=m.resolvent_residual,
                   resolvent_bounded_plausible=m.resolvent_bounded_plausible)
    return out


def _cmd_resolvent(job: JobSpec, grid: DiskGrid) -> dict:
    raw = job.inputs
    if "rotation" in raw:
        zeta = rotation_spec_from_json(raw["rotation"])
        mu = complex_from_json(raw.get("mu"))
        g = function_from_json(raw.get("g"))
        s = rotation_resolvent_solve(zeta, mu, g)
        return {"n": s.n, "mu": s.mu, "matrix_det": s.matrix_det, "solution": s.solution,
                "residual": s.residual}
    if "psi" in raw and "lambda" in raw:
        psi = function_from_json(raw["psi"])
        return _membership_json(mult_spectrum_membership(psi, complex_from_json(raw["lambda"]), grid))
    raise SchemaError("resolvent needs {rotation, mu, g} or {psi, lambda}")


def _cmd_suite(job: JobSpec, grid: DiskGrid) -> dict:
    results = run_suite(grid, job.seed)
    return {
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "all_passed": all(r.passed for r in results),
    }


HANDLERS = {
    "norm": _cmd_norm,
    "bounds": _cmd_bounds,
    "check-isometry": _cmd_isometry,
    "spectrum": _cmd_spectrum,
    "resolvent": _cmd_resolvent,
    "verify-suite": _cmd_suite,
}


# -- output -------------------------------------------------------------------

def _flatten(obj, prefix=""):
    """Scalar leaves as dotted keys; lists (clouds, point sets) are skipped."""
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, (str, int, float, bool)) or obj is None:
        yield prefix[:-1], obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report["command"] == "verify-suite":
        w.writerow(["name", "passed", "detail"])
        for c in report["result"]["checks"]:
            w.writerow([c["name"], c["passed"], c["detail"]])
    else:
        w.writerow(["key", "value"])
        for k, v in _flatten(report):
            w.writerow([k, v])
    return buf.getvalue()


def run(job: JobSpec) -> tuple:
    """Execute a validated job; returns (exit code, report)."""
    job.validate()
    grid = job.grid()
    result = to_jsonable(HANDLERS[job.command](job, grid))
    report = {
        "command": job.command,
        "version": __version__,
        "grid": grid.config(),
        "seed": job.seed,
        "result": result,
    }
    code = 1 if job.command == "verify-suite" and not result["all_passed"] else 0
    return code, report


def _error_tag(kind: str, exc: BaseException) -> str:
    msg = " ".join(str(exc).split())
    return f"blochkit-error {kind} {type(exc).__name__}: {msg}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blochkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"blochkit {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="JSON file with the function or operator spec ('-' for stdin)")
    p.add_argument("--output", help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--rings", type=int, default=20, help="boundary rings 1 - 2^-k, k = 1..K")
    p.add_argument("--angles", type=int, default=512, help="points per ring")
    p.add_argument("--refine", type=int, default=3, help="local refinement rounds")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def _load(path: Optional[str]):
    if path is None:
        return None
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(
            command=args.command,
            inputs=_load(args.input),
            grid_overrides={"rings": args.rings, "angles": args.angles, "refine": args.refine},
            output_path=args.output,
            format=args.format,
            seed=args.seed,
        )
        code, report = run(job)
    except (NumericalOverflow, PoleError) as exc:
        print(_error_tag("numerical", exc), file=sys.stderr)
        return 3
    except (BlochkitError, ValueError, TypeError, KeyError, OSError) as exc:
        print(_error_tag("validation", exc), file=sys.stderr)
        return 2
    text = render(report, job.format)
    if job.output_path:
        with open(job.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
