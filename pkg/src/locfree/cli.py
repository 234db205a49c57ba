"""Command-line interface.

Exit codes: 0 all checks pass, 1 at least one check refuted, 2 input or
usage error, 3 a precondition was refused (no check refuted).
"""

import argparse
import os
import sys
from fractions import Fraction

from . import morse, smallcancel, verify
from .errors import (LocfreeError, MoveError, ParseError, RangeError,
                     UnsupportedCell, UnsupportedRegime)
from .presentations import (FreeEndo, apply_tietze, make_gs, one_relator_form,
                            parse_document, parse_script)
from .report import digest_text, parse_structured
from .stallings import analyze_endomorphism, graph_from_generators
from .words import Alphabet, format_fraction, make_weights


def build_parser():
    parser = argparse.ArgumentParser(
        prog="locfree",
        description="Exact verification toolkit for free-by-cyclic groups")
    sub = parser.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("parse", help="parse a presentation file and echo "
                                     "its canonical form")
    q.add_argument("file")

    q = sub.add_parser("abelianize", help="free rank and torsion of the "
                                          "abelianized group")
    q.add_argument("file")

    q = sub.add_parser("stallings", help="subgroup graph queries")
    q.add_argument("--subgroup", help="comma-separated generator words")
    q.add_argument("--alphabet", help="ambient alphabet (defaults to the "
                                      "letters that occur)")
    q.add_argument("--member", help="word to test for membership")
    q.add_argument("--rank", action="store_true", help="print subgroup rank")
    q.add_argument("--dump", action="store_true", help="print the edge list")
    q.add_argument("--endo", help="endomorphism spec like 'a=b;b=abA'")

    q = sub.add_parser("smallcancel", help="piece analysis of a presentation")
    q.add_argument("file")
    q.add_argument("--lambda", dest="lam", default="1/7",
                   help="metric parameter, an exact fraction (default 1/7)")
    q.add_argument("--brute-force", action="store_true",
                   help="use the quadratic all-pairs oracle")
    q.add_argument("--figures", metavar="DIR",
                   help="write margin figures into DIR")

    q = sub.add_parser("morse", help="height/link analysis of a presentation")
    q.add_argument("file")
    q.add_argument("--hom", help="name of a weight map from the file")
    q.add_argument("--weights", help="inline weights like 'a=1,b=1,t=1'")
    q.add_argument("--check-kernel", action="store_true",
                   help="emit the kernel freeness certificate")
    q.add_argument("--figures", metavar="DIR",
                   help="write height/link figures into DIR")

    q = sub.add_parser("tietze", help="replay a move script on a presentation")
    q.add_argument("presentation")
    q.add_argument("script")
    q.add_argument("--trace", action="store_true",
                   help="print every intermediate presentation")

    q = sub.add_parser("gs", help="emit a member of the staircase family")
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--emit", choices=["pres", "onerel"], default="pres")

    q = sub.add_parser("verify", help="run a bundled verification")
    q.add_argument("target", choices=["prop1", "prop2", "prop3", "prop4"])
    q.add_argument("--s", type=int, default=9,
                   help="family parameter for prop3/prop4 (default 9)")
    q.add_argument("--require-hyperbolic", action="store_true",
                   help="fail unless the metric condition and the "
                        "sufficient inequality both hold (prop3)")
    q.add_argument("--pres", help="presentation file overriding the "
                                  "builtin one (prop1)")
    q.add_argument("--weights", help="weight override like 'a=1,b=1,t=1' "
                                     "for the height map (prop1)")
    q.add_argument("--script", help="move script overriding the builtin "
                                    "fixture (prop2)")
    q.add_argument("--format", choices=["text", "structured"], default="text")
    q.add_argument("--out", help="also write the structured report here")
    q.add_argument("--figures", metavar="DIR",
                   help="write figures into DIR alongside the report")

    q = sub.add_parser("report", help="re-render a saved structured report")
    q.add_argument("file")
    q.add_argument("--format", choices=["text", "structured"], default="text")
    return parser


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _parse_inline_weights(spec, alphabet):
    values = {}
    for item in spec.replace(",", " ").split():
        name, _, number = item.partition("=")
        try:
            values[name] = int(number)
        except ValueError:
            raise ParseError(f"bad weight {item!r}") from None
    return make_weights(alphabet, values)


def _weights_for(doc, args):
    if args.weights:
        return _parse_inline_weights(args.weights, doc.presentation.alphabet)
    if args.hom:
        if args.hom not in doc.weight_maps:
            raise ParseError(f"no weight map named {args.hom!r} in the file")
        return doc.weight_maps[args.hom]
    return make_weights(doc.presentation.alphabet, 1)


def cmd_parse(args, out):
    doc = parse_document(_read(args.file))
    for warning in doc.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    out.write(doc.presentation.format())
    for name, wm in doc.weight_maps.items():
        out.write(f"hom: {name}\n")
        out.write("weight: " + " ".join(
            f"{g}={wm[g]}" for g in doc.presentation.alphabet) + "\n")
    return 0


def cmd_abelianize(args, out):
    p = parse_document(_read(args.file)).presentation
    free_rank, torsion = p.abelianization()
    out.write(f"free rank: {free_rank}\n")
    out.write("torsion: " + (" ".join(map(str, torsion)) if torsion
                             else "none") + "\n")
    return 0


def cmd_stallings(args, out):
    if args.endo:
        images = {}
        for part in args.endo.split(";"):
            gen, _, image = part.strip().partition("=")
            if not gen or not image:
                raise ParseError(f"bad endomorphism part {part!r}")
            images[gen] = image
        endo = FreeEndo("".join(sorted(images)), images)
        era = analyze_endomorphism(endo)
        out.write(f"image rank: {era.image_rank}\n")
        out.write(f"injective: {era.injective}\n")
        out.write(f"proper: {era.proper}\n")
        if era.missing_generator:
            out.write(f"witness: {era.missing_generator}\n")
        return 0
    if not args.subgroup:
        raise ParseError("need --subgroup or --endo")
    gens = [w.strip() for w in args.subgroup.split(",") if w.strip()]
    letters = args.alphabet or "".join(
        sorted({ch.lower() for w in gens for ch in w}))
    graph = graph_from_generators(gens, Alphabet(letters))
    if args.member is not None:
        verdict = graph.contains(args.member)
        out.write(f"member {args.member}: {verdict}\n")
    if args.rank:
        out.write(f"rank: {graph.rank()}\n")
    if args.dump or (args.member is None and not args.rank):
        for line in graph.dump():
            out.write(line + "\n")
    return 0


def cmd_smallcancel(args, out):
    p = parse_document(_read(args.file)).presentation
    lam = Fraction(args.lam)
    rep = smallcancel.check_metric(list(p.relators), lam,
                                   brute_force=args.brute_force)
    sym = smallcancel.symmetrize(list(p.relators))
    out.write(f"symmetrized elements: {sym.element_count()}\n")
    out.write(f"max piece: {rep.max_piece_length}\n")
    if rep.witness:
        out.write(f"witness: {rep.describe_witness()}\n")
    for oi, orbit in enumerate(sym.orbits):
        out.write(f"orbit {oi} (length {len(orbit)}): max piece "
                  f"{rep.per_orbit_max[oi]}, threshold "
                  f"{format_fraction(rep.thresholds[oi])}\n")
    out.write(f"C'({format_fraction(lam)}): "
              f"{'holds' if rep.holds else 'fails'}\n")
    if args.figures:
        from . import figures
        os.makedirs(args.figures, exist_ok=True)
        entries = [(f"orbit {oi}", len(o), rep.per_orbit_max[oi],
                    rep.thresholds[oi]) for oi, o in enumerate(sym.orbits)]
        figures.save_piece_margins(
            entries, os.path.join(args.figures, "smallcancel_margins.png"))
    return 0


def cmd_morse(args, out):
    doc = parse_document(_read(args.file))
    p = doc.presentation
    weights = _weights_for(doc, args)
    out.write("weights: " + " ".join(
        f"{g}={weights[g]}" for g in p.alphabet) + "\n")
    if args.check_kernel:
        cert = morse.kernel_rank(p, weights)
        for cell, area in zip(cert.cells, cert.areas):
            out.write(f"cell {cell.boundary.letters}: heights "
                      f"{list(cell.heights)} area {area}\n")
        for link, name in ((cert.ascending, "ascending"),
                           (cert.descending, "descending")):
            edges = " ".join(f"{a}-{b}" for a, b, _, _ in link.edges)
            out.write(f"{name} link: {edges} (tree)\n")
        out.write(f"kernel free of rank: {cert.rank}\n")
        if args.figures:
            verify._render_morse_figures(p, cert, args.figures, "morse")
    else:
        asc = morse.ascending_link(p, weights)
        desc = morse.descending_link(p, weights)
        for link, name in ((asc, "ascending"), (desc, "descending")):
            edges = " ".join(f"{a}-{b}" for a, b, _, _ in link.edges)
            tree = "tree" if link.is_tree() else "not a tree"
            out.write(f"{name} link: {edges} ({tree})\n")
    return 0


def cmd_tietze(args, out):
    p = parse_document(_read(args.presentation)).presentation
    script = parse_script(_read(args.script))
    try:
        states = apply_tietze(p, script, trace=True)
    except MoveError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1
    if args.trace:
        for i, state in enumerate(states):
            label = "start" if i == 0 else f"after move {i - 1}"
            rels = ", ".join(r.letters for r in state.relators)
            out.write(f"{label}: <{state.alphabet.letters} | {rels}>\n")
    out.write(states[-1].format())
    return 0


def cmd_gs(args, out):
    p = make_gs(args.s)
    if args.emit == "onerel":
        p = one_relator_form(p)
    out.write(p.format())
    return 0


def cmd_verify(args, out):
    figures_dir = args.figures
    if args.target == "prop1":
        pres = None
        weights = None
        if args.pres:
            pres = parse_document(_read(args.pres)).presentation
        if args.weights:
            alphabet = (pres or verify.make_prop1()).alphabet
            weights = _parse_inline_weights(args.weights, alphabet)
        rep = verify.cmd_verify_prop1(pres=pres, weights=weights,
                                      figures_dir=figures_dir)
        if args.pres:
            rep.inputs = (("presentation", digest_text(_read(args.pres))),
                          rep.inputs[1])
    elif args.target == "prop2":
        script_text = _read(args.script) if args.script else None
        rep = verify.cmd_verify_prop2(script_text=script_text,
                                      figures_dir=figures_dir)
        if args.script:
            rep.inputs = (("script", digest_text(script_text)),)
    elif args.target == "prop3":
        rep = verify.cmd_verify_prop3(
            s=args.s, require_hyperbolic=args.require_hyperbolic,
            figures_dir=figures_dir)
    else:
        rep = verify.cmd_verify_prop4(s=args.s, figures_dir=figures_dir)
    out.write(rep.render(args.format))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.render_structured())
    return rep.exit_status


def cmd_report(args, out):
    rep = parse_structured(_read(args.file))
    out.write(rep.render(args.format))
    return rep.exit_status


_HANDLERS = {
    "parse": cmd_parse,
    "abelianize": cmd_abelianize,
    "stallings": cmd_stallings,
    "smallcancel": cmd_smallcancel,
    "morse": cmd_morse,
    "tietze": cmd_tietze,
    "gs": cmd_gs,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.cmd](args, sys.stdout)
    except (UnsupportedRegime, UnsupportedCell) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (ParseError, RangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LocfreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
