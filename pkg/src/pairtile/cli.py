"""Command-line front end.

Each invocation runs one command and writes one JSON (or CSV) document to
standard output.  Exit status: 0 affirmative, 1 negative, 2 input error
(with a JSON error object on standard output).
"""

from __future__ import annotations

import argparse
import csv
import io as _stringio
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import io
from .criterion import center, check_bolle, check_lattice_tiling
from .errors import (
    InvariantViolation,
    MultiComponent,
    NotConvex,
    NotDiscrete,
    OracleDisagreement,
    PairtileError,
    ParseError,
)
from .geometry import PolygonalRegion, extract_pairing, is_centrally_symmetric, is_convex, is_parallelogram
from .lattice import Lattice, TranslatedLattice, as_quasi_periodic
from .oracle import coverage_cells, verify_tiling_exact, verify_tiling_sampled
from .spectral import (
    convex_classifier,
    density_at_zero,
    density_truncation_bound,
    quasi_periodicity_certificate,
    zero_set,
    zero_set_intersection_in_disc,
)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

NEEDS_LATTICE = {"check-lattice", "check-bolle", "verify", "density"}
NEEDS_REGION = {"analyze", "check-lattice", "check-bolle", "classify", "verify", "zeroset"}


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    region_path: str | None = None
    lattice_path: str | None = None
    radius: Fraction | None = None
    samples: int | None = None
    seed: int = 0
    t: float | None = None
    verify: bool = False
    format: str = "json"

    def __post_init__(self):
        if self.command in NEEDS_LATTICE and self.lattice_path is None:
            raise InvariantViolation(f"{self.command} needs a lattice file", field="lattice")
        if self.command in NEEDS_REGION and self.region_path is None:
            raise InvariantViolation(f"{self.command} needs a region file", field="region")
        if self.radius is not None and self.radius <= 0:
            raise InvariantViolation("radius must be positive", field="--radius")
        if self.samples is not None and self.samples < 1:
            raise InvariantViolation("samples must be at least 1", field="--samples")
        if self.t is not None and not self.t >= 1:
            raise InvariantViolation("t must be at least 1", field="--t")


@dataclass(frozen=True)
class Result:
    code: int
    text: str


def parse_region(path: str) -> PolygonalRegion:
    return io.region_from_json(io.load_file(path))


def parse_lattice(path: str):
    return io.lattice_from_json(io.load_file(path))


def _plain_lattice(lat) -> Lattice:
    # the tiling question is invariant under translating the whole lattice
    if isinstance(lat, Lattice):
        return lat
    if isinstance(lat, TranslatedLattice):
        return lat.lattice
    if lat.is_plain_lattice():
        return lat.parts[0][0].lattice
    raise InvariantViolation(
        "this command needs a single lattice with multiplicity 1, not a quasi-periodic set",
        field="parts",
    )


def _json(doc, code: int) -> Result:
    return Result(code, io.dumps(doc))


def _csv(header: Sequence[str], rows) -> str:
    buf = _stringio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- commands ----------------------------------------------------------------


def cmd_analyze(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    pairs = extract_pairing(region)
    c = is_centrally_symmetric(region)
    single = len(region.components) == 1
    doc = {
        "components": len(region.components),
        "area": io.format_rational(region.area()),
        "pairs": [io.pair_to_json(p) for p in pairs],
        "convex": is_convex(region) if single else None,
        "parallelogram": is_parallelogram(region) if single else None,
        "centrally_symmetric": c is not None,
        "center": None if c is None else io.format_point(c),
        "certificate": io.certificate_to_json(quasi_periodicity_certificate(region)),
    }
    return _json(doc, EXIT_YES)


def cmd_check_lattice(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    lat = _plain_lattice(parse_lattice(req.lattice_path))
    verdict = check_lattice_tiling(region, lat)
    doc = io.verdict_to_json(verdict)
    if req.verify:
        report = verify_tiling_exact(region, lat)
        if report.constant != verdict.tiles or report.weight != verdict.weight:
            raise OracleDisagreement(
                "criterion and brute-force coverage disagree",
                criterion=doc,
                oracle=io.report_to_json(report),
            )
        doc["oracle"] = io.report_to_json(report)
    return _json(doc, EXIT_YES if verdict.tiles else EXIT_NO)


def cmd_check_bolle(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    lat = _plain_lattice(parse_lattice(req.lattice_path))
    if not is_convex(region):
        raise NotConvex("region is not convex", field="polygons")
    centred, c = center(region)
    verdict = check_bolle(centred, lat)
    doc = io.verdict_to_json(verdict)
    doc["center"] = io.format_point(c)
    return _json(doc, EXIT_YES if verdict.tiles else EXIT_NO)


def cmd_classify(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    cert = quasi_periodicity_certificate(region)
    doc = io.certificate_to_json(cert)
    try:
        convex_ok = is_convex(region) and is_centrally_symmetric(region) is not None
    except MultiComponent:
        convex_ok = False
    if convex_ok:
        doc["convex"] = io.classification_to_json(convex_classifier(region))
    return _json(doc, EXIT_YES if cert.guaranteed else EXIT_NO)


CELL_HEADER = ["x0", "x1", "lower_y0", "lower_y1", "upper_y0", "upper_y1", "point_x", "point_y", "count"]


def cmd_verify(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    lat = parse_lattice(req.lattice_path)
    if req.format == "csv":
        if req.samples is not None:
            raise InvariantViolation("CSV cell export needs exact mode (omit --samples)", field="--format")
        cells, _ = coverage_cells(region, lat)
        counts = {c.count for c in cells}
        rows = [
            [str(c.x0), str(c.x1), str(c.lower[0]), str(c.lower[1]), str(c.upper[0]), str(c.upper[1]),
             str(c.point.x), str(c.point.y), c.count]
            for c in cells
        ]
        ok = len(counts) == 1 and min(counts) >= 1
        return Result(EXIT_YES if ok else EXIT_NO, _csv(CELL_HEADER, rows))
    if req.samples is not None:
        report = verify_tiling_sampled(region, lat, req.samples, req.seed)
    else:
        report = verify_tiling_exact(region, lat)
    return _json(io.report_to_json(report), EXIT_YES if report.constant else EXIT_NO)


ZEROSET_HEADER = ["pair_index", "family", "line_index", "point_x", "point_y", "dir_x", "dir_y"]


def cmd_zeroset(req: AnalysisRequest) -> Result:
    region = parse_region(req.region_path)
    pairs = extract_pairing(region)
    radius = req.radius if req.radius is not None else Fraction(4)
    if req.format == "csv":
        # float coordinates: for plotting only
        rows = []
        for i, pair in enumerate(pairs):
            zs = zero_set(pair)
            for name, fam in (("tau", zs.tau_family), ("e", zs.e_family)):
                for k, p, d in fam.lines_in_disc(radius):
                    rows.append([i, name, k, float(p.x), float(p.y), float(d.x), float(d.y)])
        return Result(EXIT_YES, _csv(ZEROSET_HEADER, rows))
    try:
        points = zero_set_intersection_in_disc(pairs, radius)
    except NotDiscrete as exc:
        doc = {"discrete": False, "radius": io.format_rational(radius), **exc.details}
        return _json(doc, EXIT_NO)
    doc = {
        "discrete": True,
        "radius": io.format_rational(radius),
        "count": len(points),
        "points": [io.format_point(p) for p in points],
    }
    return _json(doc, EXIT_YES)


def cmd_density(req: AnalysisRequest) -> Result:
    qps = as_quasi_periodic(parse_lattice(req.lattice_path))
    t = req.t if req.t is not None else 32.0
    estimate = density_at_zero(qps, t)
    exact = qps.density()
    doc = {
        "t": t,
        "estimate": estimate,
        "density": io.format_rational(exact),
        "error": estimate - float(exact),
        "truncation_bound": density_truncation_bound(qps, t),
    }
    return _json(doc, EXIT_YES)


COMMANDS = {
    "analyze": cmd_analyze,
    "check-lattice": cmd_check_lattice,
    "check-bolle": cmd_check_bolle,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "zeroset": cmd_zeroset,
    "density": cmd_density,
}


def run(req: AnalysisRequest) -> Result:
    try:
        return COMMANDS[req.command](req)
    except PairtileError as exc:
        return _json(exc.to_json(), EXIT_ERROR)


# --- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"bad command line: {message}", field="argv")


def _rational_arg(text: str) -> Fraction:
    return io.parse_rational(text, "--radius")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pairtile", description="Multiple lattice tilings by polygons with paired edges.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def region_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("region", help="region JSON file")
        return p

    region_cmd("analyze", "edge pairs, symmetry and quasi-periodicity summary")
    p = region_cmd("check-lattice", "decide whether region + lattice is a multiple tiling")
    p.add_argument("lattice", help="lattice JSON file")
    p.add_argument("--verify", action="store_true", help="cross-check with exact coverage counting")
    p = region_cmd("check-bolle", "edge conditions for convex symmetric regions")
    p.add_argument("lattice", help="lattice JSON file")
    region_cmd("classify", "is every multiple tiling by this region quasi-periodic?")
    p = region_cmd("verify", "count coverage directly (exact, or sampled with --samples)")
    p.add_argument("lattice", help="lattice or quasi-periodic set JSON file")
    p.add_argument("--samples", type=int, help="sample N random points instead of the exact count")
    p.add_argument("--seed", type=int, default=0, help="seed for --samples (default 0)")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="csv lists the coverage cells")
    p = region_cmd("zeroset", "common zero set of the edge-pair transforms in a disc")
    p.add_argument("--radius", type=_rational_arg, default=Fraction(4), help="disc radius, integer or p/q (default 4)")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="csv lists the line families")
    p = sub.add_parser("density", help="Gaussian-window estimate of the density of a point set")
    p.add_argument("lattice", help="lattice or quasi-periodic set JSON file")
    p.add_argument("--t", type=float, default=32.0, help="window scale, at least 1 (default 32)")
    return parser


def request_from_args(argv: Sequence[str]) -> AnalysisRequest:
    ns = build_parser().parse_args(argv)
    return AnalysisRequest(
        command=ns.command,
        region_path=getattr(ns, "region", None),
        lattice_path=getattr(ns, "lattice", None),
        radius=getattr(ns, "radius", None),
        samples=getattr(ns, "samples", None),
        seed=getattr(ns, "seed", 0),
        t=getattr(ns, "t", None),
        verify=getattr(ns, "verify", False),
        format=getattr(ns, "format", "json"),
    )


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        result = run(request_from_args(argv))
    except PairtileError as exc:
        result = _json(exc.to_json(), EXIT_ERROR)
    sys.stdout.write(result.text)
    sys.stdout.flush()
    return result.code


if __name__ == "__main__":
    sys.exit(main())
