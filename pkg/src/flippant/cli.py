"""Command-line interface.

One subcommand per batch operation; every output is deterministic for a
fixed input.  Exit codes: 0 success, 1 usage error, 2 validation failure
(with a JSON diagnostic on stderr), 3 an extension obstruction was found
(its witness goes to stdout).

Arguments
---------
WORD        a string over a, A, b, B; read left to right as composition,
            so "ab" is alpha composed after beta acts, i.e. alpha o beta.
ELEMENT     a WORD, inline JSON, or a path to a JSON file.
VERTEX      the letter E for the base tessellation, inline JSON, or a path.
ARC         "p,q" with dyadic endpoints, e.g. "0,1/2^1".
--region    "level:m" for the full 2^m-gon, or a JSON list of [a, n] pairs
            naming the side intervals of a polygon.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import automorphism as am
from . import oracle as oc
from . import pants
from . import thompson as th
from . import triangulation as tg
from .dyadic import Arc, CirclePoint, StdInterval
from .errors import FlippantError, ValidationError, WordError
from .render import render_svg

_WORD_LETTERS = set("aAbB")

RELATORS = [
    ("alpha^4", "aaaa"),
    ("beta^3", "bbb"),
    ("(beta alpha)^5", "ba" * 5),
    (
        "[beta alpha beta, alpha^2 beta alpha beta alpha^2]",
        "bab" + "aababaa" + th.inverse_word("bab") + th.inverse_word("aababaa"),
    ),
    (
        "[beta alpha beta, alpha^2 beta^2 alpha^2 beta alpha beta alpha^2 beta alpha^2]",
        "bab" + "aabbaababaabaa" + th.inverse_word("bab") + th.inverse_word("aabbaababaabaa"),
    ),
]


def _payload(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    if text.endswith(".json") and os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _parse_element(text: str) -> th.ExtElement:
    raw = _payload(text).strip()
    if not raw or set(raw) <= _WORD_LETTERS:
        return th.ExtElement(th.from_word(raw), 0)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise WordError(f"element is neither a word nor JSON: {exc}") from exc
    return th.ExtElement.from_json(data)


def _parse_vertex(text: str) -> tg.Triangulation:
    raw = _payload(text).strip()
    if raw == "E":
        return tg.Triangulation.base()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"vertex is not valid JSON: {exc}") from exc
    return tg.Triangulation.from_json(data)


def _parse_arc(text: str) -> Arc:
    raw = _payload(text).strip()
    if raw.startswith("["):
        pair = json.loads(raw)
    else:
        pair = raw.split(",")
    if len(pair) != 2:
        raise ValidationError(f"arc needs two endpoints, got {raw!r}")
    return Arc.of(CirclePoint.parse(pair[0]), CirclePoint.parse(pair[1]))


def _parse_region(text: str) -> tg.Polygon:
    raw = _payload(text).strip()
    if raw.startswith("level:"):
        return tg.Polygon.level(int(raw.split(":", 1)[1]))
    sides = json.loads(raw)
    return tg.Polygon.from_side_intervals(StdInterval(a, n) for a, n in sides)


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flippant", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a word at a dyadic circle point")
    p.add_argument("word")
    p.add_argument("point")

    p = sub.add_parser("compose", help="compose words and print the reduced element")
    p.add_argument("words", nargs="+")

    p = sub.add_parser("reduce", help="reduce an element to canonical form")
    p.add_argument("element")

    sub.add_parser("relcheck", help="verify the five defining relators")

    p = sub.add_parser("act", help="apply an element to a vertex")
    p.add_argument("element")
    p.add_argument("vertex")

    p = sub.add_parser("flip", help="flip an arc of a vertex")
    p.add_argument("vertex")
    p.add_argument("arc")

    p = sub.add_parser("ball", help="region-restricted ball around a vertex")
    p.add_argument("vertex")
    p.add_argument("radius", type=int)
    p.add_argument("--region", required=True)

    p = sub.add_parser("distance", help="region-restricted flip distance")
    p.add_argument("vertex")
    p.add_argument("other")
    p.add_argument("--region", required=True)

    p = sub.add_parser("link", help="restricted link of a vertex")
    p.add_argument("vertex")
    p.add_argument("--region", required=True)

    p = sub.add_parser("extend", help="extend a link isomorphism to an element")
    p.add_argument("linkiso")

    p = sub.add_parser("transitive", help="an element carrying the base vertex to this one")
    p.add_argument("vertex")

    p = sub.add_parser("witness", help="a vertex moved by a non-trivial element")
    p.add_argument("element")

    p = sub.add_parser("nonhyp", help="non-hyperbolicity experiment up to n")
    p.add_argument("n", type=int)
    p.add_argument("--report", help="write a CSV report of the rows")
    p.add_argument("--fig", help="write a growth figure (PNG)")

    p = sub.add_parser("oracle", help="brute-force polygon flip graph")
    p.add_argument("n", type=int)
    p.add_argument("--distance", nargs=2, metavar=("T1", "T2"),
                   help="two JSON diagonal lists to measure")
    p.add_argument("--dump", action="store_true", help="dump vertices and edges")
    p.add_argument("--fig", help="write a graph figure (PNG)")

    p = sub.add_parser("render", help="render a vertex as a Poincare-disk SVG")
    p.add_argument("vertex")
    p.add_argument("--svg", required=True)
    p.add_argument("--region", default="level:3")
    p.add_argument("--no-labels", action="store_true")

    return parser


def _cmd_eval(args) -> int:
    f = th.from_word(args.word)
    print(f(CirclePoint.parse(args.point)))
    return 0


def _cmd_compose(args) -> int:
    acc = th.identity()
    for word in args.words:
        acc = acc * th.from_word(word)
    _emit(acc.to_json())
    return 0


def _cmd_reduce(args) -> int:
    g = _parse_element(args.element)
    if g.reflected:
        _emit(th.ExtElement(g.t.reduce(), 1).to_json())
    else:
        _emit(g.t.reduce().to_json())
    return 0


def _cmd_relcheck(args) -> int:
    ok = True
    for name, word in RELATORS:
        f = th.from_word(word)
        good = f.is_identity()
        ok = ok and good
        print(f"{name}: {'identity' if good else 'NOT identity'}")
    return 0 if ok else 2


def _cmd_act(args) -> int:
    g = _parse_element(args.element)
    v = _parse_vertex(args.vertex)
    _emit(tg.act(g, v).to_json())
    return 0


def _cmd_flip(args) -> int:
    v = _parse_vertex(args.vertex)
    _emit(tg.flip(v, _parse_arc(args.arc)).to_json())
    return 0


def _cmd_ball(args) -> int:
    v = _parse_vertex(args.vertex)
    region = _parse_region(args.region)
    dist = pants.ball(v, args.radius, region)
    items = sorted(dist.items(), key=lambda kv: (kv[1], am._vertex_key(kv[0])))
    _emit(
        {
            "center": v.to_json(),
            "radius": args.radius,
            "region": region.to_json(),
            "vertices": [{"vertex": t.to_json(), "distance": d} for t, d in items],
        }
    )
    return 0


def _cmd_distance(args) -> int:
    v = _parse_vertex(args.vertex)
    w = _parse_vertex(args.other)
    region = _parse_region(args.region)
    d, flag = pants.distance(v, w, region)
    print(f"{d} {flag.value}")
    return 0


def _cmd_link(args) -> int:
    v = _parse_vertex(args.vertex)
    _emit(pants.link(v, _parse_region(args.region)).to_json())
    return 0


def _cmd_extend(args) -> int:
    iso = am.LinkIso.from_json(json.loads(_payload(args.linkiso)))
    result = am.extend_link_iso(iso)
    if isinstance(result, am.Obstruction):
        _emit(result.to_json())
        return 3
    _emit(result.to_json())
    return 0


def _cmd_transitive(args) -> int:
    v = _parse_vertex(args.vertex)
    _emit(am.transitive_element(v).to_json())
    return 0


def _cmd_witness(args) -> int:
    g = _parse_element(args.element)
    if g.reflected:
        raise ValidationError("witness expects a plain group element")
    _emit(am.witness_vertex(g.t).to_json())
    return 0


def _nonhyp_rows(n: int) -> list[dict]:
    rows = []
    for k in range(1, n + 1):
        inst = pants.nonhyp_instance(k)
        rows.append(
            {
                "n": k,
                "d_uv": tg.arc_difference(inst.u, inst.v),
                "d_vw": tg.arc_difference(inst.v, inst.w),
                "d_uw": tg.arc_difference(inst.u, inst.w),
                "path_uw_len": len(inst.path_uw) - 1,
                "thinness": pants.thinness_certificate(k),
            }
        )
    return rows


def _cmd_nonhyp(args) -> int:
    rows = _nonhyp_rows(args.n)
    header = ["n", "d_uv", "d_vw", "d_uw", "path_uw_len", "thinness"]
    print("\t".join(header))
    for row in rows:
        print("\t".join(str(row[h]) for h in header))
    last = rows[-1]
    print(
        f"# d(u,v)=d(v,w)={last['d_uv']} and d(u,w)={last['d_uw']} are exact: "
        "path lengths meet the arc-difference bound"
    )
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(str(row[h]) for h in header) + "\n")
    if args.fig:
        from .figures import save_nonhyp_figure

        save_nonhyp_figure(rows, args.fig)
    return 0


def _cmd_oracle(args) -> int:
    graph = oc.flip_graph(args.n)
    if args.distance:
        t1 = oc.PolyTriangulation(args.n, frozenset(tuple(d) for d in json.loads(_payload(args.distance[0]))))
        t2 = oc.PolyTriangulation(args.n, frozenset(tuple(d) for d in json.loads(_payload(args.distance[1]))))
        print(oc.oracle_distance(t1, t2))
        return 0
    if args.dump:
        _emit(graph.to_json())
    else:
        _emit(
            {
                "n": args.n,
                "vertices": len(graph.vertices),
                "edges": len(graph.edges),
                "degree": args.n - 3,
                "connected": oc.is_connected(graph),
            }
        )
    if args.fig:
        from .figures import save_oracle_figure

        save_oracle_figure(graph, args.fig)
    return 0


def _cmd_render(args) -> int:
    v = _parse_vertex(args.vertex)
    region = _parse_region(args.region)
    svg = render_svg(v, region, labels=not args.no_labels)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.svg}")
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "compose": _cmd_compose,
    "reduce": _cmd_reduce,
    "relcheck": _cmd_relcheck,
    "act": _cmd_act,
    "flip": _cmd_flip,
    "ball": _cmd_ball,
    "distance": _cmd_distance,
    "link": _cmd_link,
    "extend": _cmd_extend,
    "transitive": _cmd_transitive,
    "witness": _cmd_witness,
    "nonhyp": _cmd_nonhyp,
    "oracle": _cmd_oracle,
    "render": _cmd_render,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FlippantError as exc:
        print(json.dumps({"error": exc.code, "detail": str(exc)}), file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
