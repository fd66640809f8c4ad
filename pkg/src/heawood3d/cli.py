"""Command-line interface.

Exit status: 0 success; 1 a negative answer (``validate`` failed, no
counterexample found); 2 a certified obstruction to colouring; 64 usage
error; 65 malformed input data; 70 internal invariant failure; 74 I/O error.
"""
import argparse
import json
import sys
from dataclasses import dataclass

from . import fileio
from .colouring import (SkeletonCycle, _face_orientations_for, brute_force_edge_colourings,
                        colour_edges, edge3_from_vertex4, vertex4_from_edge3, verify_edge_colouring)
from .complex import Triangulation3, edge_degrees, verify_closed_3manifold
from .errors import Heawood3dError, ImproperInput, InternalInconsistency, UnknownName
from .generators import (CANONICAL, barycentric_subdivision, canonical, counterexample_search,
                         random_walk)
from .linegraph import directed_line_graph, spatial_line_graph, to_dot

EX_OK, EX_NEGATIVE, EX_OBSTRUCTION = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_SOFTWARE, EX_IOERR = 64, 65, 70, 74


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input: str = None
    method: str = "constructive"
    colours: int = 3
    seed: int = 0
    steps: int = 0
    cap: int = 1
    max_edges: int = 64
    format: str = "json"
    graph: str = "line"
    to: str = None
    colouring: str = None
    name: str = None
    output: str = None
    labels: str = None
    log: str = None
    exhaustive: bool = False

    def __post_init__(self):
        if self.cap < 1:
            raise UsageError("--cap must be positive")
        if self.steps < 0:
            raise UsageError("--steps must be non-negative")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path):
    return fileio.parse_any(_read(path))


def _need_tri(k, what):
    if not isinstance(k, Triangulation3):
        raise UsageError(f"{what} needs a tri3 triangulation")
    return k


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _validate(cfg):
    tri = _need_tri(_load(cfg.input), "validate")
    report = verify_closed_3manifold(tri, strict=False)
    out = {"counts": tri.counts, **report.as_dict()}
    return (EX_OK if report.ok else EX_NEGATIVE), _json(out)


def _degrees(cfg):
    deg = edge_degrees(_load(cfg.input))
    lines = ["edge degree"] + [f"{e} {d}" for e, d in enumerate(deg.degrees)]
    parity = "even" if deg.all_even else f"odd ({len(deg.odd_edges)} odd edges)"
    lines.append(f"parity: {parity}")
    return EX_OK, "\n".join(lines) + "\n"


def _colour(cfg):
    k = _load(cfg.input)
    if cfg.method == "constructive":
        cert = colour_edges(k)
        return (EX_OK if cert.ok else EX_OBSTRUCTION), _json(cert.as_dict())
    n_edges = len(edge_degrees(k).degrees)
    if n_edges > cfg.max_edges:
        raise UsageError(f"{n_edges} edges exceeds --max-edges {cfg.max_edges} for brute force")
    brute = brute_force_edge_colourings(k, colours=cfg.colours, cap=cfg.cap, symmetry=True,
                                        max_edges=None, strict=False)
    transcript = {"count": brute.count, "exhaustive": brute.exhaustive,
                  "search_nodes": brute.search_nodes, "symmetry": brute.symmetry}
    if brute.count:
        c = brute.colourings[0]
        if verify_edge_colouring(k, c) is not None:
            raise InternalInconsistency("brute-force colouring failed verification")
        return EX_OK, _json(fileio.edge_colouring_json(c, "brute", {"verified": True, **transcript}))
    out = {"edges": None, "method": "brute", "obstruction": "no_colouring",
           "certificate": transcript}
    deg = edge_degrees(k)
    if deg.odd_edges:
        out["odd_edge"] = {"edge": deg.odd_edges[0], "degree": int(deg.degrees[deg.odd_edges[0]])}
    return EX_OBSTRUCTION, _json(out)


def _convert(cfg):
    k = _load(cfg.input)
    if cfg.colouring is None:
        raise UsageError("convert needs --colouring")
    data = json.loads(_read(cfg.colouring))
    if cfg.to == "vertex4":
        c = fileio.load_edge_colouring(data, len(edge_degrees(k).degrees))
        bad = verify_edge_colouring(k, c)
        if bad is not None:
            raise ImproperInput(bad.edges[0])
        vc = vertex4_from_edge3(k, c)
        if isinstance(vc, SkeletonCycle):
            out = {"vertices": None, "obstruction": "skeleton_cycle",
                   "cycle": {"vertices": list(vc.vertices), "edges": list(vc.edges),
                             "total": list(vc.total)}}
            return EX_OBSTRUCTION, _json(out)
        return EX_OK, _json(fileio.vertex_colouring_json(vc, "vertex4_from_edge3"))
    vc = fileio.load_vertex_colouring(data)
    c = edge3_from_vertex4(k, vc)
    return EX_OK, _json(fileio.edge_colouring_json(c, "edge3_from_vertex4", {"verified": True}))


def _generate(cfg):
    try:
        k = canonical(cfg.name)
    except UnknownName:
        raise UsageError(f"unknown instance {cfg.name!r}; choose from {', '.join(CANONICAL)}") from None
    return EX_OK, fileio.serialize_any(k)


def _subdivide(cfg):
    tri = _need_tri(_load(cfg.input), "subdivide")
    sub, dims = barycentric_subdivision(tri)
    if cfg.labels:
        with open(cfg.labels, "w", encoding="utf-8") as fh:
            fh.write(_json({"dims": [int(d) for d in dims]}))
    return EX_OK, fileio.serialize_gluing_file(sub)


def _pachner(cfg):
    start = _need_tri(_load(cfg.input), "pachner") if cfg.input else canonical("double_tet")
    return EX_OK, fileio.serialize_gluing_file(random_walk(start, cfg.seed, cfg.steps))


def _counterexample(cfg):
    tri = _need_tri(_load(cfg.input), "counterexample")
    result = counterexample_search(tri, stop_at_first=not cfg.exhaustive)
    if cfg.log:
        with open(cfg.log, "w", encoding="utf-8") as fh:
            fh.write("\n".join(result.log) + ("\n" if result.log else ""))
    if not result.found:
        return EX_NEGATIVE, _json({"found": False, "candidates": result.candidates})
    cand, spec = result.hit
    out = {"found": True, "candidates": result.candidates,
           "spec": {"tet_a": spec.tet_a, "tet_b": spec.tet_b, "sigma": "".join(map(str, spec.sigma))},
           "certificate": result.certificate, "triangulation": fileio.serialize_gluing_file(cand)}
    return EX_OK, _json(out)


def _export(cfg):
    k = _load(cfg.input)
    if cfg.format == "json":
        return EX_OK, _json(fileio.complex_json(k))
    if cfg.graph == "line":
        return EX_OK, to_dot(spatial_line_graph(k))
    return EX_OK, to_dot(directed_line_graph(k, _face_orientations_for(k)[0]), directed=True)


COMMANDS = {
    "validate": _validate, "degrees": _degrees, "colour": _colour, "convert": _convert,
    "generate": _generate, "subdivide": _subdivide, "pachner": _pachner,
    "counterexample": _counterexample, "export": _export,
}


def run_cli(config):
    """Run one subcommand; returns (exit status, stdout text, stderr text)."""
    try:
        status, text = COMMANDS[config.subcommand](config)
    except UsageError as exc:
        return EX_USAGE, "", f"usage error: {exc}\n"
    except OSError as exc:
        return EX_IOERR, "", f"I/O error: {exc}\n"
    except (InternalInconsistency, AssertionError) as exc:
        return EX_SOFTWARE, "", f"internal error: {exc}\n"
    except (Heawood3dError, ValueError, KeyError) as exc:
        return EX_DATAERR, "", f"invalid input: {exc}\n"
    if config.output and config.subcommand != "counterexample":
        try:
            with open(config.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return EX_IOERR, "", f"I/O error: {exc}\n"
        text = ""
    return status, text, ""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="heawood3d", description="Edge 3-colourings of even 3-sphere triangulations.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def command(name, help, with_input=True):
        p = sub.add_parser(name, help=help)
        if with_input:
            p.add_argument("input", help="tri3 or cplx2 file ('-' for stdin)")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        return p

    command("validate", "closed 3-manifold checks")
    command("degrees", "edge face-degrees and parity")
    p = command("colour", "3-edge-colour, or certify that no colouring exists")
    p.add_argument("--method", choices=("constructive", "brute"), default="constructive")
    p.add_argument("--cap", type=int, default=1)
    p.add_argument("--max-edges", type=int, default=64)
    p = command("convert", "switch between edge 3-colourings and vertex 4-colourings")
    p.add_argument("--to", choices=("vertex4", "edge3"), required=True)
    p.add_argument("--colouring", required=True, help="colouring JSON file")
    p = command("generate", "emit a named instance", with_input=False)
    p.add_argument("name", help=", ".join(CANONICAL))
    p = command("subdivide", "barycentric subdivision")
    p.add_argument("--labels", help="write the vertex dimension labels as JSON")
    p = command("pachner", "seeded random Pachner walk", with_input=False)
    p.add_argument("input", nargs="?", help="start triangulation (default: double_tet)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p = command("counterexample", "search twisted regluings for an even non-colourable complex")
    p.add_argument("--exhaustive", action="store_true", help="scan every candidate")
    p.add_argument("--log", help="write the candidate transcript here")
    p = command("export", "export the complex or its line graph")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--graph", choices=("line", "directed"), default="line")
    return parser


def parse_config(argv):
    args = vars(build_parser().parse_args(argv))
    return CliConfig(**{k: v for k, v in args.items() if v is not None})


def main(argv=None):
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    status, out, err = run_cli(config)
    sys.stdout.write(out)
    sys.stderr.write(err)
    if config.subcommand == "counterexample" and config.output and status == EX_OK:
        try:
            with open(config.output, "w", encoding="utf-8") as fh:
                fh.write(json.loads(out)["triangulation"])
        except OSError as exc:
            sys.stderr.write(f"I/O error: {exc}\n")
            return EX_IOERR
    return status


if __name__ == "__main__":
    sys.exit(main())
