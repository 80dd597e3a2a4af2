"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .hnn import (
    FinitePresentation,
    HnnPresentation,
    PresentationError,
    check_homomorphism,
    equal,
    normal_form,
    parse_finite_presentation,
    parse_hnn_word,
    parse_presentation,
)
from .polyring import PolySyntaxError, parse_poly
from .quotients import TrivialTarget, affine_witness, perm_witness
from .reproduce import EXPECTED, verify_paper
from .subgroups import NotAMember, build_folded
from .trace import kappa, trace_poly
from .variety import Solved, build_system, check_component, solve_triangular
from .words import AlphabetError, FreeWord, WordSyntaxError, format_word, parse_endomorphism, parse_word

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, plain: str, data: dict) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(plain)


def _read_presentation_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_trace(args) -> int:
    p = trace_poly(parse_word(args.word))
    _emit(args, str(p), {"word": args.word, "computed": str(p)})
    return EXIT_OK


def cmd_kappa(args) -> int:
    p = kappa(*(parse_poly(s) for s in (args.px, args.py, args.pz)))
    _emit(args, str(p), {"computed": str(p)})
    return EXIT_OK


def _parse_sigma(text: str) -> dict:
    sigma = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        var, sep, value = part.partition("=")
        if not sep or var.strip() not in ("x", "y", "z"):
            raise UsageError(f"expected 'var=polynomial', got {part!r}")
        sigma[var.strip()] = parse_poly(value)
    return sigma


def cmd_variety(args) -> int:
    system = build_system(parse_endomorphism(args.phi))
    result = solve_triangular(system)
    lines = [f"E{i} = {e}" for i, e in enumerate(system.equations, 1)]
    data: dict = {"equations": [str(e) for e in system.equations], "dimension": result.dimension}
    if args.solve:
        if isinstance(result, Solved):
            if result.quadratic is not None:
                lines.append(f"quadratic in {result.quadratic_var}: {result.quadratic}, discriminant {result.discriminant}")
            for i, comp in enumerate(result.components, 1):
                lines.append(f"component {i}: {comp}")
            data["components"] = [str(c) for c in result.components]
        else:
            lines.append(f"Unsolved: {len(result.residual)} constraints (dimension {result.dimension})")
            lines.extend(f"  residual: {e}" for e in result.residual)
            data["residual"] = [str(e) for e in result.residual]
    lines.append(f"dimension {result.dimension}")
    status = EXIT_OK
    if args.check:
        ok = check_component(system, _parse_sigma(args.check))
        lines.append(f"check {args.check}: {'true' if ok else 'false'}")
        data["status"] = "pass" if ok else "fail"
        status = EXIT_OK if ok else EXIT_CHECK
    _emit(args, "\n".join(lines), data)
    return status


def cmd_subgroup(args) -> int:
    gens = [parse_word(g) for g in args.gen or []]
    G = build_folded(gens)
    if args.action in ("contains", "express") and args.word is None:
        raise UsageError(f"subgroup {args.action} needs a word")
    if args.action == "fold":
        edges = sorted((s, g, t) for (s, g), (t, _) in G.edges.items())
        plain = "\n".join([f"vertices {len(G.vertices)}, edges {G.num_edges}, rank {G.rank()}"]
                          + [f"{s} -{g}-> {t}" for s, g, t in edges])
        _emit(args, plain, {"vertices": len(G.vertices), "edges": [list(e) for e in edges], "rank": G.rank()})
    elif args.action == "rank":
        _emit(args, str(G.rank()), {"computed": G.rank()})
    elif args.action == "contains":
        ok = G.contains(parse_word(args.word))
        _emit(args, str(ok).lower(), {"computed": ok})
    else:
        expr = G.express(parse_word(args.word))
        names = ", ".join(f"{n}={format_word(g)}" for n, g in zip(G.gen_names, G.gens))
        _emit(args, format_word(expr), {"computed": format_word(expr), "generators": names})
    return EXIT_OK


def _presentation(args) -> HnnPresentation:
    return parse_presentation(_read_presentation_text(args.presentation))


def cmd_hnn(args) -> int:
    P = _presentation(args)
    if args.action == "rewrite":
        _emit(args, str(P), {"gens": list(P.base), "phi": str(P.phi), "stable": P.stable})
        return EXIT_OK
    if args.action == "normal-form":
        nf = normal_form(P, P.translate(parse_hnn_word(args.word)))
        out = nf.format(P.stable)
        _emit(args, out, {"computed": out, "p": nf.p, "w": format_word(nf.w), "q": nf.q})
        return EXIT_OK
    if args.action == "equal":
        ok = equal(P, P.translate(parse_hnn_word(args.u)), P.translate(parse_hnn_word(args.v)))
        _emit(args, str(ok).lower(), {"computed": ok})
        return EXIT_OK
    # check-hom
    source = parse_finite_presentation(_read_presentation_text(args.source))
    images = {}
    for item in args.image:
        gen, sep, word = item.partition("=")
        if not sep:
            raise UsageError(f"expected 'gen=word', got {item!r}")
        images[gen.strip()] = FreeWord(P.translate(parse_word(word)))
    ok = check_homomorphism(source, P, images)
    _emit(args, str(ok).lower(), {"status": "pass" if ok else "fail", "computed": ok})
    return EXIT_OK if ok else EXIT_CHECK


def cmd_separate(args) -> int:
    pres: FinitePresentation = parse_finite_presentation(_read_presentation_text(args.presentation))
    target = parse_word(args.word)
    if args.affine is not None:
        A = affine_witness(pres, target, args.affine, partitions=args.jobs, workers=args.jobs)
    else:
        A = perm_witness(pres, target, args.perm, partitions=args.jobs, workers=args.jobs)
    if A is None:
        _emit(args, "none", {"status": "fail", "computed": None})
        return EXIT_CHECK
    _emit(args, str(A), {"status": "pass", "computed": str(A), "order": A.image_order()})
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    overrides = {}
    for item in args.expect or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        if name.strip() not in EXPECTED:
            raise UsageError(f"unknown check {name.strip()!r}; known: {', '.join(EXPECTED)}")
        overrides[name.strip()] = value
    report = verify_paper(overrides)
    if args.format == "json":
        print(json.dumps(report.as_dict(), sort_keys=True, indent=2))
    else:
        print(report.format())
    return EXIT_OK if report.passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hnnkit", description="Trace polynomials, trace varieties and "
                                     "ascending HNN extensions of free groups.")
    parser.add_argument("--format", choices=("plain", "json"), default="plain")
    # --format is also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="trace polynomial of a word in a, b")
    p.add_argument("word")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("kappa", parents=[common], help="commutator trace px^2 + py^2 + pz^2 - px*py*pz - 2")
    p.add_argument("px")
    p.add_argument("py")
    p.add_argument("pz")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("variety", parents=[common], help="trace variety of an endomorphism of F2")
    p.add_argument("phi", help="e.g. 'a -> a ; b -> [a,b]'")
    p.add_argument("--solve", action="store_true")
    p.add_argument("--check", metavar="SIGMA", help="e.g. 'y=x^2-1;z=x^3-2*x'")
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("subgroup", parents=[common], help="Stallings graph operations")
    p.add_argument("action", choices=("fold", "contains", "rank", "express"))
    p.add_argument("word", nargs="?")
    p.add_argument("-g", "--gen", action="append", help="subgroup generator (repeat)")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("hnn", parents=[common], help="ascending HNN extension given by a presentation file")
    p.add_argument("presentation")
    hsub = p.add_subparsers(dest="action", required=True)
    h = hsub.add_parser("normal-form", parents=[common])
    h.add_argument("word")
    h = hsub.add_parser("equal", parents=[common])
    h.add_argument("u")
    h.add_argument("v")
    hsub.add_parser("rewrite", parents=[common])
    h = hsub.add_parser("check-hom", parents=[common])
    h.add_argument("source", help="presentation file of the source group")
    h.add_argument("--image", action="append", required=True, metavar="GEN=WORD")
    p.set_defaults(func=cmd_hnn)

    p = sub.add_parser("separate", parents=[common], help="finite quotient in which a word survives")
    p.add_argument("presentation")
    p.add_argument("word")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--affine", type=int, metavar="M_MAX")
    fam.add_argument("--perm", type=int, metavar="N_MAX")
    p.add_argument("--jobs", type=int, default=1, help="parallel search branches")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce all worked computations")
    p.add_argument("--expect", action="append", metavar="NAME=VALUE", help="override an expected value")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, WordSyntaxError, PolySyntaxError, AlphabetError, PresentationError,
            TrivialTarget, NotAMember, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
