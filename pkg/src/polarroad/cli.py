"""Command-line front end: parse a job file, run the pipeline, write reports.

Job files are line oriented::

    vars: x1 x2 x3
    poly g = x1^3 + x2^3 + x3^3 - x1 - x2 - x3 - 1
    map: (x1-1)^2 + x2^2 + x3^2; x2; x1
    i = 2
    command = roadmap
    u = 20

Exit status: 0 success, 1 input error, 2 violated assumption or failed
verdict, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from gmpy2 import mpq

from . import __version__
from .connectivity import (
    FAIL,
    VerifyParams,
    check_bounded_component_critical,
    realize_roadmap,
    sample_real_points,
    slice_trace_curve,
    verify_rm,
)
from .errors import ParseError, PolarRoadError, PositiveDimensionalError, ResourceLimitError
from .geometry import PolyMap, VarietySpec, build_phi, critical_ideal
from .groebner import Budget, Ideal, krull_dimension, set_default_budget
from .polyring import QQ, Ring, format_rational
from .roadmap import FORMAT_VERSION, VIOLATED, assemble_roadmap, box_to_json, check_assumption_A, check_assumption_B, check_assumption_P
from .zerodim import DEFAULT_WIDTH, solution_set

COMMANDS = ("roadmap", "critical", "check", "verify", "solve0d", "slice", "bounded")

EXIT_OK, EXIT_INPUT, EXIT_VIOLATED, EXIT_RESOURCE = 0, 1, 2, 3


class JobError(PolarRoadError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class JobSpec:
    ring: Ring
    generators: list
    dimension: int
    map_spec: dict
    i: int | None
    commands: list
    options: dict = field(default_factory=dict)
    seed: int = 0
    text: str = ""

    def variety(self) -> VarietySpec:
        return VarietySpec(self.ring, self.generators, self.dimension)

    def phi(self) -> PolyMap:
        spec = self.map_spec
        if spec["kind"] == "explicit":
            return PolyMap(spec["components"])
        forms = spec.get("forms", "random")
        return build_phi(self.ring, spec["center"], seed=spec.get("seed", self.seed), forms=forms)

    def budget(self) -> Budget:
        kw = {}
        if "budget-pairs" in self.options:
            kw["max_pairs"] = int(self.options["budget-pairs"])
        if "budget-terms" in self.options:
            kw["max_terms"] = int(self.options["budget-terms"])
        return Budget(**kw)

    def rational(self, key, default=None):
        if key not in self.options:
            return default
        return _rational(self.options[key], key)


def _rational(text: str, what: str):
    try:
        return QQ(mpq(text.strip()))
    except (ValueError, TypeError):
        raise JobError(f"{what}: {text!r} is not a rational number") from None


_KV = re.compile(r"^([A-Za-z][\w-]*)\s*=\s*(.*)$")


def parse_job(text: str, seed_override: int | None = None) -> JobSpec:
    ring = None
    gens = []
    map_line = None
    opts = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            names = line[5:].replace(",", " ").split()
            try:
                ring = Ring(names)
            except ValueError as exc:
                raise JobError(str(exc), lineno) from None
            continue
        if line.startswith("poly"):
            if ring is None:
                raise JobError("'vars:' must come before polynomials", lineno)
            body = line[4:].strip()
            if "=" in body:
                body = body.split("=", 1)[1]
            gens.append(_parse(ring, body, lineno))
            continue
        if line.startswith("map:"):
            map_line = (lineno, line[4:].strip())
            continue
        m = _KV.match(line)
        if not m:
            raise JobError(f"cannot read {line!r}", lineno)
        opts[m.group(1)] = m.group(2).strip()
    if ring is None:
        raise JobError("missing 'vars:' declaration")
    if not gens:
        raise JobError("no 'poly' generators")
    commands = [c.strip() for c in opts.pop("command", "roadmap").split(",") if c.strip()]
    for c in commands:
        if c not in COMMANDS:
            raise JobError(f"unknown command {c!r}; expected one of {', '.join(COMMANDS)}")
    seed = int(opts.pop("seed", 0))
    if seed_override is not None:
        seed = seed_override
    dim = int(opts.pop("d", ring.nvars - len(gens)))
    i = int(opts.pop("i")) if "i" in opts else None
    if map_line is None:
        raise JobError("missing 'map:' line")
    map_spec = _parse_map(ring, *map_line)
    if map_spec["kind"] == "auto" and "seed" not in map_spec and map_spec.get("forms") != "coordinates":
        map_spec["seed"] = seed
    if any(c in ("roadmap", "check", "verify") for c in commands):
        if i is None or not 2 <= i <= dim:
            raise JobError(f"roadmap commands need 2 <= i <= d = {dim}")
    return JobSpec(ring, gens, dim, map_spec, i, commands, opts, seed, text)


def _parse(ring, body, lineno):
    try:
        return ring.parse(body)
    except ParseError as exc:
        exc.line = lineno
        raise


def _parse_map(ring: Ring, lineno: int, body: str) -> dict:
    if body.startswith("auto"):
        spec = {"kind": "auto"}
        rest = body[4:]
        m = re.search(r"center\s*=\s*\(([^)]*)\)", rest)
        if not m:
            raise JobError("'map: auto' needs center=(...)", lineno)
        spec["center"] = [_rational(a, "center") for a in m.group(1).split(",")]
        if len(spec["center"]) != ring.nvars:
            raise JobError(f"center has {len(spec['center'])} coordinates, expected {ring.nvars}", lineno)
        m = re.search(r"seed\s*=\s*(-?\d+)", rest)
        if m:
            spec["seed"] = int(m.group(1))
        m = re.search(r"forms\s*=\s*(\w+)", rest)
        if m:
            spec["forms"] = m.group(1)
        return spec
    comps = [_parse(ring, part, lineno) for part in body.split(";") if part.strip()]
    if not comps:
        raise JobError("empty map", lineno)
    return {"kind": "explicit", "components": comps}


# ---------------------------------------------------------------------------
# commands


def _boxes(sol):
    return [box_to_json(b) for b in sol.real_boxes]


def _cmd_critical(job: JobSpec, ctx: dict) -> dict:
    V = job.variety()
    phi = job.phi()
    i = job.i or 1
    W = critical_ideal(V, phi, i)
    out = {"i": i, "K_ideal": [str(g) for g in W.K_ideal.generators], "W_ideal": [str(g) for g in W.W_ideal.generators],
           "notes": W.notes}
    dim = krull_dimension(W.W_ideal)
    out["dimension"] = dim
    if dim == 0:
        sol = solution_set(W.W_ideal, ctx["width"])
        out.update({"complex_count": sol.distinct_count, "real_count": sol.real_count, "real_boxes": _boxes(sol)})
        ctx["points"] = [b.as_floats() for b in sol.real_boxes]
    return out


def _cmd_solve0d(job: JobSpec, ctx: dict) -> dict:
    I = Ideal(job.ring, job.generators, job.budget())
    sol = solution_set(I, ctx["width"])
    ctx["points"] = [b.as_floats() for b in sol.real_boxes]
    return {
        "complex_count_with_multiplicity": sol.multiplicity_count,
        "distinct_complex_count": sol.distinct_count,
        "real_count": sol.real_count,
        "real_boxes": _boxes(sol),
    }


def _cmd_check(job: JobSpec, ctx: dict) -> dict:
    V = job.variety()
    phi = job.phi()
    A = check_assumption_A(V)
    P = check_assumption_P(phi)
    B1, B2 = check_assumption_B(V, phi, job.i, samples=int(job.options.get("samples-b2", 3)), seed=job.seed)
    rep = {"A": A.to_dict(), "P": P.to_dict(), "B1": B1.to_dict(), "B2": B2.to_dict()}
    if any(c.status == VIOLATED for c in (A, P, B1, B2)):
        ctx["exit"] = EXIT_VIOLATED
    return rep


def _bundle(job: JobSpec, ctx: dict):
    if "bundle" not in ctx:
        ctx["bundle"] = assemble_roadmap(job.variety(), job.phi(), job.i, width=ctx["width"], seed=job.seed)
    return ctx["bundle"]


def _cmd_roadmap(job: JobSpec, ctx: dict) -> dict:
    b = _bundle(job, ctx)
    ctx["bundle_json"] = b.to_dict()
    if b.assumptions.any_violated:
        ctx["exit"] = EXIT_VIOLATED
    return {
        "certificate": b.certificate,
        "assumptions": b.assumptions.to_dict(),
        "K_distinct_complex_count": b.K_points.distinct_count,
        "K_real_count": b.K_points.real_count,
        "critical_values": [[format_rational(c.interval.lo), format_rational(c.interval.hi)] for c in b.critical_values],
        "critical_values_float": [float(c) for c in b.critical_values],
        "image_eliminant_degrees": [p.degree() for p in b.image_eliminants],
    }


def _cmd_verify(job: JobSpec, ctx: dict) -> dict:
    b = _bundle(job, ctx)
    u = job.rational("u")
    if u is None:
        raise JobError("'verify' needs u = <rational>")
    params = VerifyParams(samples=int(job.options.get("samples", 2500)), seed=job.seed,
                          step=float(job.rational("step", mpq(1, 50))))
    cloud = sample_real_points(b.variety.ideal(), b.map[0], u, params.samples, params.seed, params.tolerance)
    rep = verify_rm(b.variety, b, u, params, cloud=cloud)
    if rep.verdict == FAIL:
        ctx["exit"] = EXIT_VIOLATED
    ctx["points"] = [tuple(map(float, p)) for p in cloud.points]
    real = realize_roadmap(b, u, params)
    ctx["polylines"] = [("W", k, pl) for k, pl in enumerate(real.w_polylines)] + [
        ("F", k, pl) for k, pl in enumerate(real.f_polylines)]
    return rep.to_dict()


def _cmd_slice(job: JobSpec, ctx: dict) -> dict:
    phi = job.phi()
    levels = [_rational(t, "levels") for t in job.options.get("levels", "").split(",") if t.strip()]
    if not levels:
        raise JobError("'slice' needs levels = a, b, ...")
    res = slice_trace_curve(Ideal(job.ring, job.generators, job.budget()), phi[0], levels)
    ctx["polylines"] = [("slice", pl.branch, pl.points) for pl in res.polylines]
    return {
        "levels": [format_rational(t) for t in res.levels],
        "points_per_level": [int(len(p)) for _, p in res.per_level],
        "perturbed": [[format_rational(a), format_rational(b)] for a, b in res.perturbed],
        "branches": len(res.polylines),
    }


def _cmd_bounded(job: JobSpec, ctx: dict) -> dict:
    u = job.rational("u")
    radius = job.rational("radius")
    if u is None or radius is None:
        raise JobError("'bounded' needs u and radius")
    rep = check_bounded_component_critical(job.variety(), job.phi()[0], u, radius,
                                           count=int(job.options.get("samples", 2000)), seed=job.seed)
    if rep.verdict == FAIL:
        ctx["exit"] = EXIT_VIOLATED
    return rep.to_dict()


_HANDLERS = {
    "critical": _cmd_critical,
    "solve0d": _cmd_solve0d,
    "check": _cmd_check,
    "roadmap": _cmd_roadmap,
    "verify": _cmd_verify,
    "slice": _cmd_slice,
    "bounded": _cmd_bounded,
}


def job_hash(text: str, overrides: dict) -> str:
    h = hashlib.sha256(text.encode())
    h.update(json.dumps(overrides, sort_keys=True).encode())
    return h.hexdigest()


def run(job: JobSpec, out_dir: Path, fmt: str = "json", overrides: dict | None = None) -> int:
    """Execute every command of the job; write report.json (and friends) into out_dir."""
    overrides = overrides or {}
    out_dir.mkdir(parents=True, exist_ok=True)
    width = job.rational("width", DEFAULT_WIDTH)
    if "tolerance" in overrides:
        width = QQ(overrides["tolerance"])
    ctx = {"exit": EXIT_OK, "width": width}
    results = {}
    for c in job.commands:
        results[c] = _HANDLERS[c](job, ctx)
    report = {
        "format": FORMAT_VERSION,
        "job_hash": job_hash(job.text, overrides),
        "seed": job.seed,
        "commands": job.commands,
        "results": results,
    }
    _write_json(out_dir / "report.json", report, meta=True)
    if "bundle_json" in ctx:
        _write_json(out_dir / "bundle.json", dict(ctx["bundle_json"], job_hash=report["job_hash"]))
    if fmt == "csv":
        if "points" in ctx:
            with open(out_dir / "points.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                n = job.ring.nvars
                w.writerow(["component"] + list(job.ring.names) + ["residual"])
                for p in ctx["points"]:
                    vals = [float(g.eval_float([p])[0]) for g in job.generators]
                    w.writerow([0] + [repr(float(a)) for a in p[:n]] + [repr(max(abs(v) for v in vals))])
        if "polylines" in ctx:
            with open(out_dir / "roadmap.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["part", "branch", "vertex"] + list(job.ring.names))
                for part, k, pl in ctx["polylines"]:
                    for j, p in enumerate(pl):
                        w.writerow([part, k, j] + [repr(float(a)) for a in p])
    return ctx["exit"]


def _write_json(path: Path, tree: dict, meta: bool = False):
    if meta:
        tree = dict(tree)
        tree["metadata"] = {
            "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
            "version": __version__,
        }
    path.write_text(json.dumps(tree, indent=2, sort_keys=True) + "\n")


def _error(kind: str, message: str, **extra) -> str:
    return json.dumps({"error": kind, "message": message, **extra}, sort_keys=True)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="polarroad", description="Polar-variety roadmaps for real algebraic sets.")
    ap.add_argument("--job", required=True, help="job file")
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--seed", type=int, help="override the job seed")
    ap.add_argument("--budget-pairs", type=int, help="cap on S-pairs per Groebner computation")
    ap.add_argument("--tolerance", help="box width for solution isolation (rational)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    args = ap.parse_args(argv)
    previous = None
    try:
        text = Path(args.job).read_text()
        job = parse_job(text, args.seed)
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.budget_pairs is not None:
            job.options["budget-pairs"] = str(args.budget_pairs)
            overrides["budget-pairs"] = args.budget_pairs
        if args.tolerance is not None:
            overrides["tolerance"] = format_rational(_rational(args.tolerance, "--tolerance"))
        if "budget-pairs" in job.options or "budget-terms" in job.options:
            previous = set_default_budget(job.budget())
        return run(job, Path(args.out), args.format, overrides)
    except ResourceLimitError as exc:
        print(_error("resource-limit", str(exc)), file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as exc:
        print(_error("parse", str(exc), line=getattr(exc, "line", None), column=getattr(exc, "column", None)), file=sys.stderr)
        return EXIT_INPUT
    except (JobError, OSError, ValueError, PositiveDimensionalError) as exc:
        print(_error(type(exc).__name__, str(exc)), file=sys.stderr)
        return EXIT_INPUT
    finally:
        if previous is not None:
            set_default_budget(previous)


if __name__ == "__main__":
    sys.exit(main())
