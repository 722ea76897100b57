"""``sperm`` command line: enumeration, f-polynomials, lattices, faces and verifiers."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Callable

from .core import CompositionError, parse_composition
from .enumeration import (
    SizeBoundExceeded,
    count_trees,
    enumerate_trees,
    f_polynomial_direct,
    f_polynomial_recursive,
    reference_table,
)
from .pure_intervals import (
    PureInterval,
    compatible_variations,
    enumerate_faces,
    f_vector,
    intersect,
    verify_complex_parallel,
)
from .tamari import (
    enumerate_tamari_faces,
    enumerate_tamari_trees,
    f_polynomial_tamari,
    narayana_numbers,
    tamari_hasse,
)
from .weak_order import hasse_diagram


class UsageError(Exception):
    pass


def _composition(text: str) -> tuple[int, ...]:
    try:
        return parse_composition(text)
    except CompositionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def sweep_manifest() -> dict:
    return json.loads(resources.files("spermutahedron.data").joinpath("sweep.json").read_text())


class Output:
    """Collects text lines or a JSON document and writes them once."""

    def __init__(self, args: argparse.Namespace):
        self.as_json = getattr(args, "json", False)
        self.path = getattr(args, "out", None)
        self.lines: list[str] = []
        self.doc: object = None

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, doc: object, text: str | list[str]) -> None:
        self.doc = doc
        self.lines.extend([text] if isinstance(text, str) else text)

    def flush(self) -> None:
        body = json.dumps(self.doc, indent=2) + "\n" if self.as_json else "".join(l + "\n" for l in self.lines)
        if self.path:
            Path(self.path).write_text(body)
        else:
            sys.stdout.write(body)


def _coeffs(p) -> str:
    return " ".join(map(str, p.coefficients))


def cmd_enumerate(args, out: Output) -> int:
    if args.count:
        n = count_trees(args.s)
        out.emit({"s": list(args.s), "count": n}, str(n))
        return 0
    trees = (enumerate_tamari_trees if args.tamari else enumerate_trees)(args.s, args.max_trees)
    out.emit({"s": list(args.s), "count": len(trees), "trees": [str(T) for T in trees]}, [str(T) for T in trees])
    return 0


def cmd_fpoly(args, out: Output) -> int:
    methods = {"direct": f_polynomial_direct, "recursive": f_polynomial_recursive}
    chosen = list(methods) if args.method == "both" else [args.method]
    results = {m: methods[m](args.s) for m in chosen}
    polys = list(results.values())
    agree = all(p == polys[0] for p in polys)
    doc = {"s": list(args.s), "method": args.method, "f": list(polys[0].coefficients), "agree": agree}
    if agree:
        out.emit(doc, _coeffs(polys[0]))
        return 0
    out.emit(doc, [f"{m}: {_coeffs(p)}" for m, p in results.items()])
    return 1


def cmd_tamari_fpoly(args, out: Output) -> int:
    p = f_polynomial_tamari(args.s, args.max_trees)
    out.emit({"s": list(args.s), "method": "tamari", "f": list(p.coefficients)}, _coeffs(p))
    return 0


def cmd_catalan(args, out: Output) -> int:
    n = len(enumerate_tamari_trees(args.s, args.max_trees))
    out.emit({"s": list(args.s), "catalan": n}, str(n))
    return 0


def cmd_narayana(args, out: Output) -> int:
    nums = narayana_numbers(args.s, args.max_trees)
    out.emit({"s": list(args.s), "narayana": nums}, " ".join(map(str, nums)))
    return 0


def cmd_hasse(args, out: Output) -> int:
    diagram = (tamari_hasse if args.tamari else hasse_diagram)(args.s, args.max_trees)
    if args.figure:
        from .plotting import plot_hasse

        plot_hasse(diagram, args.figure)
    if args.format == "dot":
        out.as_json = False
        out.emit(diagram.to_json(), diagram.to_dot().rstrip("\n").split("\n"))
    else:
        out.as_json = True
        out.emit(diagram.to_json(), "")
    return 0


def cmd_faces(args, out: Output) -> int:
    faces = (enumerate_tamari_faces if args.tamari else enumerate_faces)(args.s, args.max_trees)
    fv = f_vector(faces)
    lines = ["f-vector\t" + " ".join(map(str, fv))]
    if args.list:
        lines += [f"{P.dimension}\t{P.lower}\t{sorted(P.ascents)}" for P in faces]
    out.emit({"s": list(args.s), "f_vector": fv, "faces": [P.to_json() for P in faces]}, lines)
    return 0


def _load_face(text: str) -> PureInterval:
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return PureInterval.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read face: {exc}") from None


def cmd_intersect(args, out: Output) -> int:
    P, Q = _load_face(args.face1), _load_face(args.face2)
    R = intersect(P, Q)
    if R is None:
        out.emit({"empty": True, "face": None, "lower": None, "upper": None}, "empty")
        return 0
    var = sorted(compatible_variations(P, Q))
    doc = {
        "empty": False,
        "face": R.to_json(),
        "lower": str(R.lower),
        "upper": str(R.upper),
        "compatible_variations": [list(v) for v in var],
    }
    out.emit(doc, [f"lower\t{R.lower}", f"upper\t{R.upper}", f"ascents\t{sorted(R.ascents)}"])
    return 0


def _targets(args, key: str = "compositions") -> list[tuple[int, ...]]:
    if args.s is not None:
        return [args.s]
    if args.sweep:
        return [tuple(c) for c in sweep_manifest()[key]]
    raise UsageError("give --s or --sweep")


def _report_many(out: Output, reports: list, render: Callable) -> int:
    docs = [r.to_json() for r in reports]
    ok = all(r.passed for r in reports)
    out.emit(
        docs[0] if len(docs) == 1 else {"passed": ok, "violations": [], "reports": docs},
        [render(r) for r in reports] + [v for r in reports for v in r.violations[:20]],
    )
    return 0 if ok else 1


def cmd_verify_complex(args, out: Output) -> int:
    reports = [verify_complex_parallel(s, args.max_trees, args.threads) for s in _targets(args)]
    return _report_many(
        out,
        reports,
        lambda r: f"{','.join(map(str, r.s))}\tfaces={r.faces}\tpairs={r.pairs_checked}"
        f"\tsubfaces={r.subface_checks}\t{'PASS' if r.passed else 'FAIL'}",
    )


def cmd_verify_iso(args, out: Output) -> int:
    from .nu_tamari import verify_isomorphism

    reports = [verify_isomorphism(s, args.max_trees) for s in _targets(args, "isomorphism")]
    return _report_many(
        out,
        reports,
        lambda r: f"{','.join(map(str, r.s))}\t{r.path}\ttamari={r.tamari_faces}\tnu={r.nu_faces}"
        f"\t{'PASS' if r.passed else 'FAIL'}",
    )


def cmd_nu_lattice(args, out: Output) -> int:
    from .nu_tamari import LatticePath, enumerate_nu_trees, nu_ascents, nu_rotate

    if args.path:
        if set(args.path) - {"N", "E"}:
            raise UsageError("a lattice path is a word in N and E")
        path = LatticePath(args.path)
    elif args.s is not None:
        path = LatticePath.for_tamari(args.s)
    else:
        raise UsageError("give --path or --s")
    trees = sorted(enumerate_nu_trees(path), key=lambda T: T.key())
    index = {T: i for i, T in enumerate(trees)}
    edges = [(index[T], index[nu_rotate(T, q)], list(q)) for T in trees for q in sorted(nu_ascents(T))]
    doc = {
        "path": path.steps,
        "vertices": [[list(p) for p in T.key()] for T in trees],
        "edges": [list(e) for e in edges],
    }
    if args.format == "dot":
        lines = ["digraph nu_tamari {"]
        lines += [f'  {i} [label="{" ".join(f"{x},{y}" for x, y in T.key())}"];' for i, T in enumerate(trees)]
        lines += [f'  {i} -> {j} [label="{q[0]},{q[1]}"];' for i, j, q in edges]
        lines.append("}")
        out.as_json = False
        out.emit(doc, lines)
    elif args.format == "json":
        out.as_json = True
        out.emit(doc, "")
    else:
        out.emit(doc, [f"trees\t{len(trees)}", f"covers\t{len(edges)}"])
    return 0


def _realization(args):
    from .geometry import associahedron_realization, realize_2d, realize_3d

    s = args.s
    if args.associahedron:
        return associahedron_realization(s, args.max_trees)
    if len(s) == 3:
        return realize_2d(s, args.max_trees)
    if len(s) == 4:
        return realize_3d(s, args.max_trees)
    raise UsageError("realizations exist for three or four nodes")


def _realization_line(r) -> str:
    extra = "".join(f"\t{k}={v}" for k, v in sorted(r.findings.items()))
    return (
        f"{','.join(map(str, r.s))}\t{r.kind}\tcells={r.cells_by_dimension}\thull={r.hull_volume}"
        f"\tsum={r.cell_volume_sum}{extra}\t{'PASS' if r.passed else 'FAIL'}"
    )


def cmd_realize(args, out: Output) -> int:
    from .geometry import export_scene, export_svg

    if args.s is None:
        raise UsageError("give --s")
    try:
        cx, report = _realization(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.svg:
        Path(args.svg).write_text(export_svg(cx))
    if args.scene:
        scene, obj = export_scene(cx)
        stem = Path(args.scene)
        stem.with_suffix(".json").write_text(json.dumps(scene, indent=1) + "\n")
        stem.with_suffix(".obj").write_text(obj)
    if args.figure:
        from .plotting import plot_complex

        plot_complex(cx, args.figure)
    lines = [_realization_line(report)]
    if not args.json:
        order = sorted(cx.vertices, key=str)
        lines += ["tree\t" + "\t".join(f"x{i + 1}" for i in range(len(cx.s)))]
        lines += [f"{T}\t" + "\t".join(str(x) for x in cx.vertices[T]) for T in order]
    out.emit(report.to_json(), lines + report.violations[:20])
    return 0 if report.passed else 1


def cmd_verify_realization(args, out: Output) -> int:
    if args.s is not None:
        targets = [args.s]
    elif args.sweep:
        m = sweep_manifest()
        key = ["associahedron"] if args.associahedron else ["realization_2d", "realization_3d"]
        targets = [tuple(c) for k in key for c in m[k]]
    else:
        raise UsageError("give --s or --sweep")
    reports = []
    for s in targets:
        args.s = s
        try:
            reports.append(_realization(args)[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return _report_many(out, reports, _realization_line)


def cmd_table(args, out: Output) -> int:
    rows, docs = [], []
    for s, expected in reference_table():
        d, r = f_polynomial_direct(s), f_polynomial_recursive(s)
        ok = d == r == expected
        docs.append(
            {
                "s": list(s),
                "expected": list(expected.coefficients),
                "direct": list(d.coefficients),
                "recursive": list(r.coefficients),
                "ok": ok,
            }
        )
        rows.append((s, list(expected.coefficients)))
    passed = all(d["ok"] for d in docs)
    lines = ["s\texpected\tdirect\trecursive\tok"]
    lines += [
        "\t".join(
            [",".join(map(str, d["s"])), *(" ".join(map(str, d[k])) for k in ("expected", "direct", "recursive")), "yes" if d["ok"] else "NO"]
        )
        for d in docs
    ]
    if args.figure:
        from .plotting import plot_f_vectors

        plot_f_vectors(rows, args.figure)
    out.emit({"rows": docs, "passed": passed}, lines)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-trees", type=int, default=None, help="size bound (default 100000 or $SPERM_MAX_TREES)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--out", help="write output here instead of stdout")

    with_s = argparse.ArgumentParser(add_help=False, parents=[common])
    with_s.add_argument("--s", type=_composition, required=True, help="comma-separated composition, e.g. 0,2,2")
    opt_s = argparse.ArgumentParser(add_help=False, parents=[common])
    opt_s.add_argument("--s", type=_composition, default=None, help="comma-separated composition")
    opt_s.add_argument("--sweep", action="store_true", help="run every composition in the shipped manifest")

    parser = argparse.ArgumentParser(prog="sperm", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", parents=[with_s], help="list s-decreasing trees")
    p.add_argument("--tamari", action="store_true")
    p.add_argument("--count", action="store_true", help="print only the product-formula count")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("fpoly", parents=[with_s], help="f-polynomial of the face complex")
    p.add_argument("--method", choices=["direct", "recursive", "both"], default="both")
    p.set_defaults(run=cmd_fpoly)

    sub.add_parser("tamari-fpoly", parents=[with_s], help="f-polynomial of the Tamari complex").set_defaults(
        run=cmd_tamari_fpoly
    )
    sub.add_parser("catalan", parents=[with_s], help="number of s-Tamari trees").set_defaults(run=cmd_catalan)
    sub.add_parser("narayana", parents=[with_s], help="s-Tamari trees by ascent count").set_defaults(
        run=cmd_narayana
    )

    p = sub.add_parser("hasse", parents=[with_s], help="cover graph of the weak order or Tamari lattice")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--tamari", action="store_true")
    p.add_argument("--figure", help="also render a PNG here")
    p.set_defaults(run=cmd_hasse)

    p = sub.add_parser("faces", parents=[with_s], help="pure intervals and the f-vector")
    p.add_argument("--tamari", action="store_true")
    p.add_argument("--list", action="store_true", help="one line per face")
    p.set_defaults(run=cmd_faces)

    p = sub.add_parser("intersect", parents=[common], help="intersection of two faces")
    p.add_argument("--face1", required=True, help="face JSON, or @file")
    p.add_argument("--face2", required=True, help="face JSON, or @file")
    p.set_defaults(run=cmd_intersect)

    sub.add_parser("verify-complex", parents=[opt_s], help="intersection and subface checks").set_defaults(
        run=cmd_verify_complex
    )

    p = sub.add_parser("nu-lattice", parents=[common], help="rotation lattice on nu-trees")
    p.add_argument("--path", help="lattice path as a word in N and E")
    p.add_argument("--s", type=_composition, default=None, help="use the path built from this composition")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.set_defaults(run=cmd_nu_lattice)

    p = sub.add_parser("realize", parents=[opt_s], help="coordinates, exports and a realization report")
    p.add_argument("--associahedron", action="store_true", help="restrict to s-Tamari trees")
    p.add_argument("--svg", help="write a planar SVG here")
    p.add_argument("--scene", help="write <stem>.json and <stem>.obj")
    p.add_argument("--figure", help="render a PNG here")
    p.set_defaults(run=cmd_realize)

    p = sub.add_parser("verify-realization", parents=[opt_s], help="exact checks of the realization")
    p.add_argument("--associahedron", action="store_true")
    p.set_defaults(run=cmd_verify_realization)

    sub.add_parser("verify-iso", parents=[opt_s], help="s-Tamari versus nu-Tamari checks").set_defaults(
        run=cmd_verify_iso
    )

    p = sub.add_parser("table", parents=[common], help="replay the reference f-polynomial table")
    p.add_argument("--figure", help="render f-vector profiles as a PNG here")
    p.set_defaults(run=cmd_table)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        code = args.run(args, out)
    except (UsageError, SizeBoundExceeded, CompositionError) as exc:
        print(f"sperm {args.verb}: {exc}", file=sys.stderr)
        return 2
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
