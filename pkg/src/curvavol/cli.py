"""Batch command line front end.

Reads a JSON array of instance specifications, dispatches each to the
applicable volume/area engines, and emits a JSON or CSV report with one
row per (instance, method).  Per-instance failures become error rows
and set the exit status to 1; the batch itself never aborts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from . import models, polyarea, seidel, tetvol
from .errors import CurvavolError, DomainError
from .gram import DihedralAngleSet, EdgeLengthSet, classify, edge_lengths, gram_from_angles
from .specfun import Tolerance

KINDS = ("tetra_angles", "tetra_edges_euclidean", "ideal_tetra",
         "orthoscheme", "bolyai", "triangle", "cyclic_quad",
         "bicentric_quad", "trapezoid", "seidel_family")
SPACES = ("E3", "S3", "H3")

# parameter names per kind; angle-valued ones are converted by --degrees
PARAMS = {
    "tetra_angles": ("A", "B", "C", "D", "E", "F"),
    "tetra_edges_euclidean": ("l12", "l13", "l14", "l23", "l24", "l34"),
    "ideal_tetra": ("A", "B"),
    "orthoscheme": ("A", "B", "C"),
    "bolyai": ("alpha", "beta", "gamma", "z"),
    "triangle": ("a", "b", "c"),
    "cyclic_quad": ("a", "b", "c", "d"),
    "bicentric_quad": ("a", "b", "c", "d"),
    "trapezoid": ("a", "b", "c", "d"),
    "seidel_family": ("A", "c"),
}
OPTIONAL_PARAMS = {"ideal_tetra": ("C",)}
ANGLE_PARAMS = {
    "tetra_angles": ("A", "B", "C", "D", "E", "F"),
    "ideal_tetra": ("A", "B", "C"),
    "orthoscheme": ("A", "B", "C"),
    "bolyai": ("alpha", "beta", "gamma"),
    "seidel_family": ("A",),
}

REPORT_FIELDS = ("id", "kind", "space", "method", "status", "value",
                 "error_estimate", "det", "crosscheck_max_discrepancy",
                 "elapsed_s", "detail")


@dataclass(frozen=True)
class InstanceSpec:
    id: str
    kind: str
    space: str
    params: dict

    @classmethod
    def from_dict(cls, obj, index: int) -> "InstanceSpec":
        if not isinstance(obj, dict):
            raise DomainError(f"instance #{index} is not an object")
        kind = obj.get("kind")
        if kind not in KINDS:
            raise DomainError(f"unknown kind {kind!r}")
        space = obj.get("space", _default_space(kind))
        if space not in SPACES:
            raise DomainError(f"unknown space {space!r}")
        params = obj.get("params")
        if not isinstance(params, dict):
            raise DomainError("missing params object")
        required = [p for p in PARAMS[kind]
                    if p not in OPTIONAL_PARAMS.get(kind, ())]
        missing = [p for p in required if p not in params]
        if missing:
            raise DomainError(f"kind {kind} missing params {missing}")
        clean = {}
        for key, val in params.items():
            if not isinstance(val, (int, float)) or isinstance(val, bool):
                raise DomainError(f"param {key} is not a number")
            clean[key] = float(val)
        return cls(id=str(obj.get("id", f"instance-{index}")),
                   kind=kind, space=space, params=clean)


def _default_space(kind: str) -> str:
    if kind in ("tetra_edges_euclidean",):
        return "E3"
    if kind == "seidel_family":
        return "S3"
    return "H3"


@dataclass(frozen=True)
class RunConfig:
    tolerance: Tolerance = Tolerance()
    mc_samples: int = 10 ** 6
    mc_seed: int = 0
    methods: tuple | None = None
    crosscheck: bool = False
    degrees: bool = False
    timings: bool = False

    def __post_init__(self):
        if self.mc_samples < 10 ** 3:
            raise DomainError("mc_samples must be at least 1000")


def applicable_methods(kind: str, space: str):
    table = {
        ("tetra_angles", "H3"): ("dm", "sforza", "mc"),
        ("tetra_angles", "S3"): ("sforza",),
        ("tetra_edges_euclidean", "E3"): ("cm",),
        ("ideal_tetra", "H3"): ("milnor",),
        ("orthoscheme", "S3"): ("schlafli", "sforza"),
        ("orthoscheme", "H3"): ("dm", "sforza", "mc"),
        ("bolyai", "H3"): ("bolyai", "dm", "mc"),
        ("triangle", "H3"): ("sin_half", "tan_quarter", "sin_quarter",
                             "bilinski", "gauss_bonnet"),
        ("triangle", "E3"): ("heron",),
        ("cyclic_quad", "H3"): ("sin_half", "tan_quarter", "sin_quarter",
                                "bilinski", "gauss_bonnet"),
        ("cyclic_quad", "E3"): ("brahmagupta",),
        ("bicentric_quad", "H3"): ("bicentric", "sin_quarter",
                                   "gauss_bonnet"),
        ("trapezoid", "H3"): ("trapezoid",),
        ("trapezoid", "E3"): ("trapezoid",),
        ("seidel_family", "S3"): ("closed_form", "sforza"),
    }
    return table.get((kind, space), ())


def _angles_from_params(p) -> DihedralAngleSet:
    return DihedralAngleSet(**{k: p[k] for k in "ABCDEF"})


def _mc_for_angles(angles: DihedralAngleSet, cfg: RunConfig):
    g = gram_from_angles(angles)
    tetra = models.embed_from_edge_lengths(edge_lengths(g, classify(g)))
    est = models.mc_volume(tetra, cfg.mc_samples, cfg.mc_seed)
    return est.mean, est.std_error, None


def _evaluate(inst: InstanceSpec, method: str, cfg: RunConfig):
    """Returns (value, error_estimate, det_or_None)."""
    p = inst.params
    tol = cfg.tolerance
    kind = inst.kind
    if kind == "tetra_angles":
        angles = _angles_from_params(p)
        if method == "dm":
            r = tetvol.volume_dm(angles, tol)
        elif method == "sforza":
            r = (tetvol.volume_sforza_h3(angles, tol) if inst.space == "H3"
                 else tetvol.volume_sforza_s3(angles, tol))
        elif method == "mc":
            return _mc_for_angles(angles, cfg)
        else:
            raise DomainError(f"method {method} not applicable")
        return r.value, r.error_estimate, None
    if kind == "tetra_edges_euclidean":
        r = tetvol.volume_euclidean_cm(EdgeLengthSet(**p))
        return r.value, r.error_estimate, None
    if kind == "ideal_tetra":
        r = tetvol.volume_ideal(p["A"], p["B"], p.get("C"))
        return r.value, r.error_estimate, None
    if kind == "orthoscheme":
        if inst.space == "S3":
            if method == "schlafli":
                r = tetvol.volume_orthoscheme_spherical(p["A"], p["B"], p["C"], tol)
            else:
                r = tetvol.volume_sforza_s3(
                    tetvol.orthoscheme_angle_set(p["A"], p["B"], p["C"]), tol)
            return r.value, r.error_estimate, None
        angles = tetvol.orthoscheme_angle_set(p["A"], p["B"], p["C"])
        if method == "dm":
            r = tetvol.volume_dm(angles, tol)
        elif method == "sforza":
            r = tetvol.volume_sforza_h3(angles, tol)
        else:
            return _mc_for_angles(angles, cfg)
        return r.value, r.error_estimate, None
    if kind == "bolyai":
        if method == "bolyai":
            r = tetvol.volume_bolyai(p["alpha"], p["beta"], p["gamma"], p["z"], tol)
            return r.value, r.error_estimate, None
        tetra = models.orthoscheme_from_bolyai_params(
            p["alpha"], p["beta"], p["gamma"], p["z"])
        if method == "mc":
            est = models.mc_volume(tetra, cfg.mc_samples, cfg.mc_seed)
            return est.mean, est.std_error, None
        r = tetvol.volume_dm(models.dihedral_angles_from_vertices(tetra), tol)
        return r.value, r.error_estimate, None
    if kind == "triangle":
        if inst.space == "E3":
            return polyarea.heron_euclidean(p["a"], p["b"], p["c"]), 0.0, None
        r = polyarea.triangle_area(polyarea.TriSides(p["a"], p["b"], p["c"]),
                                   method)
        return r.value, 0.0, None
    if kind in ("cyclic_quad", "bicentric_quad"):
        q = polyarea.QuadSides(p["a"], p["b"], p["c"], p["d"])
        if inst.space == "E3":
            return polyarea.brahmagupta_euclidean(q), 0.0, None
        if method == "bicentric":
            return polyarea.bicentric_area(q).value, 0.0, None
        return polyarea.cyclic_quad_area(q, method).value, 0.0, None
    if kind == "trapezoid":
        if inst.space == "E3":
            return (polyarea.trapezoid_area_euclidean(
                p["a"], p["b"], p["c"], p["d"]), 0.0, None)
        q = polyarea.QuadSides(p["a"], p["b"], p["c"], p["d"])
        return polyarea.trapezoid_area(q).value, 0.0, None
    if kind == "seidel_family":
        angles, closed = seidel.spherical_family_member(p["A"], p["c"])
        det = gram_from_angles(angles).det
        if method == "closed_form":
            return closed, 0.0, det
        r = tetvol.volume_sforza_s3(angles, tol)
        return r.value, r.error_estimate, det
    raise DomainError(f"unhandled kind {kind}")


def _convert_degrees(inst: InstanceSpec) -> InstanceSpec:
    conv = dict(inst.params)
    for key in ANGLE_PARAMS.get(inst.kind, ()):
        if key in conv:
            conv[key] = math.radians(conv[key])
    return InstanceSpec(inst.id, inst.kind, inst.space, conv)


def run_batch(instances, cfg: RunConfig):
    """Evaluate every (instance, method) pair; returns (rows, status)."""
    rows = []
    status = 0
    for inst in instances:
        if isinstance(inst, Exception):
            rows.append(_error_row(inst))
            status = 1
            continue
        work = _convert_degrees(inst) if cfg.degrees else inst
        avail = applicable_methods(work.kind, work.space)
        methods = (avail if cfg.methods is None
                   else tuple(m for m in cfg.methods if m in avail))
        if not methods:
            rows.append(_row(work, "-", "error",
                             detail=f"no applicable methods for kind="
                                    f"{work.kind} space={work.space} "
                                    f"among {cfg.methods}"))
            status = 1
            continue
        inst_rows = []
        for method in methods:
            t0 = time.perf_counter()
            try:
                value, err, det = _evaluate(work, method, cfg)
                row = _row(work, method, "ok", value=value,
                           error_estimate=err, det=det)
            except (CurvavolError, ValueError, KeyError) as exc:
                row = _row(work, method, "error",
                           detail=f"{type(exc).__name__}: {exc}")
                status = 1
            if cfg.timings:
                row["elapsed_s"] = time.perf_counter() - t0
            inst_rows.append(row)
        if cfg.crosscheck:
            vals = [r["value"] for r in inst_rows if r["status"] == "ok"]
            if len(vals) >= 2:
                spread = max(abs(u - v) for u in vals for v in vals)
                for r in inst_rows:
                    r["crosscheck_max_discrepancy"] = spread
        rows.extend(inst_rows)
    return rows, status


def _row(inst, method, status, value=None, error_estimate=None, det=None,
         detail=None):
    return {"id": inst.id, "kind": inst.kind, "space": inst.space,
            "method": method, "status": status, "value": value,
            "error_estimate": error_estimate, "det": det,
            "crosscheck_max_discrepancy": None, "elapsed_s": 0.0,
            "detail": detail}


def _error_row(exc):
    return {"id": getattr(exc, "instance_id", "?"), "kind": "?",
            "space": "?", "method": "-", "status": "error", "value": None,
            "error_estimate": None, "det": None,
            "crosscheck_max_discrepancy": None, "elapsed_s": 0.0,
            "detail": str(exc)}


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def emit(rows, fmt: str) -> str:
    """Serialize rows; floats carry 17 significant digits, keys keep the
    fixed REPORT_FIELDS order."""
    if fmt == "json":
        parts = []
        for row in rows:
            fields = []
            for key in REPORT_FIELDS:
                val = row.get(key)
                if val is None:
                    enc = "null"
                elif isinstance(val, float):
                    enc = f"{val:.17g}"
                elif isinstance(val, (int,)):
                    enc = str(val)
                else:
                    enc = json.dumps(val)
                fields.append(f"\"{key}\": {enc}")
            parts.append("  {" + ", ".join(fields) + "}")
        return "[\n" + ",\n".join(parts) + "\n]" if parts else "[]"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for row in rows:
            writer.writerow([_fmt(row.get(k)) for k in REPORT_FIELDS])
        return buf.getvalue()
    raise DomainError(f"unknown format {fmt!r}")


def parse_report(text: str, fmt: str):
    """Inverse of emit, for round-tripping reports."""
    if fmt == "json":
        return json.loads(text)
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    for raw in reader:
        row = {}
        for key in REPORT_FIELDS:
            v = raw.get(key, "")
            if v == "":
                row[key] = None
            elif key in ("value", "error_estimate", "det",
                         "crosscheck_max_discrepancy", "elapsed_s"):
                row[key] = float(v)
            else:
                row[key] = v
        rows.append(row)
    return rows


def load_instances(path: str):
    """Parse the instance file; malformed entries become exceptions in
    the returned list so the batch can report them as error rows."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise DomainError("instance file must hold a JSON array")
    out = []
    for i, obj in enumerate(data):
        try:
            out.append(InstanceSpec.from_dict(obj, i))
        except (CurvavolError, ValueError) as exc:
            exc.instance_id = (obj.get("id", f"instance-{i}")
                               if isinstance(obj, dict) else f"instance-{i}")
            out.append(exc)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="curvavol",
        description="Exact-formula volumes and areas in E3, S3 and H3 "
                    "with cross-checking numerical backends.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a batch of instances")
    run.add_argument("--in", dest="infile", required=True,
                     help="JSON array of instance specs")
    run.add_argument("--out", dest="outfile", default="-",
                     help="output path (default stdout)")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--methods", default=None,
                     help="comma-separated method filter (default: all "
                          "applicable)")
    run.add_argument("--mc-samples", type=int, default=10 ** 6)
    run.add_argument("--mc-seed", type=int, default=0)
    run.add_argument("--crosscheck", action="store_true",
                     help="add the max pairwise discrepancy per instance")
    run.add_argument("--degrees", action="store_true",
                     help="interpret angle parameters as degrees")
    run.add_argument("--timings", action="store_true",
                     help="record wall-clock times (off keeps the output "
                          "byte-reproducible)")
    run.add_argument("--tol", type=float, default=None,
                     help="absolute tolerance (also CURVAVOL_TOL)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    abs_tol = 1e-10
    env_tol = os.environ.get("CURVAVOL_TOL")
    if env_tol is not None:
        try:
            abs_tol = float(env_tol)
        except ValueError:
            print(f"curvavol: bad CURVAVOL_TOL {env_tol!r}", file=sys.stderr)
            return 2
    if args.tol is not None:
        abs_tol = args.tol
    if abs_tol <= 0.0:
        print("curvavol: tolerance must be positive", file=sys.stderr)
        return 2

    try:
        cfg = RunConfig(
            tolerance=Tolerance(abs_tol=abs_tol, rel_tol=abs_tol),
            mc_samples=args.mc_samples,
            mc_seed=args.mc_seed,
            methods=(tuple(m.strip() for m in args.methods.split(","))
                     if args.methods else None),
            crosscheck=args.crosscheck,
            degrees=args.degrees,
            timings=args.timings)
    except (CurvavolError, ValueError) as exc:
        print(f"curvavol: {exc}", file=sys.stderr)
        return 2

    try:
        instances = load_instances(args.infile)
    except (OSError, json.JSONDecodeError, CurvavolError) as exc:
        print(f"curvavol: cannot read {args.infile}: {exc}", file=sys.stderr)
        return 2

    rows, status = run_batch(instances, cfg)
    text = emit(rows, args.format)
    if args.outfile == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
