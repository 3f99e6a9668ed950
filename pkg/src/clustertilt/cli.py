"""Command-line frontend.

Exit codes: 0 success, 2 parse or configuration error, 3 domain error,
4 cap exceeded (the partial result is still written).
"""

import argparse
import json
import os
import sys
import warnings

from .cover import Cover
from .errors import CapExceeded, ClusterTiltError, NotAdmissible, ParseError
from .extension import cluster_repetitive, relation_extension
from .inputs import modules_from_file, read_json, read_quiver
from .modules import injective, top_dims
from .quiver import format_bound_quiver, path_basis
from .slices import slice_from_modules
from .strip import build_transjective, distance_matrix, enumerate_fibre_quotients, quotient_to_dot
from .tube import WARNING, insert_coray, knit_tube, tube_from_modules

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_CAP = 0, 2, 3, 4


class ConfigError(ParseError):
    """Bad flag combination or input that cannot be used as given."""


def _dump(data):
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _copies(text):
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO,HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("LO must not exceed HI")
    return lo, hi


def _positive(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("caps must be non-negative")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="clustertilt", description="Cluster-tilted algebras from tilted algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--input", "-i", required=True, help="bound quiver file of C")
        sp.add_argument("--format", "-f", choices=formats, default=formats[0])
        sp.add_argument("--output", "-o", help="write here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomised isomorphism tests")

    sp = sub.add_parser("info", help="summary of a bound quiver")
    common(sp)

    sp = sub.add_parser("extend", help="relation-extension and a cluster-repetitive window")
    common(sp)
    sp.add_argument("--copies", type=_copies, default=(0, 1), help="window LO,HI (default 0,1)")

    def knitting(sp):
        sp.add_argument("--slice", "-s", required=True, help="slice JSON file, or 'auto' for hereditary C")
        sp.add_argument("--knit-cap", type=_positive, help="moves between reflections (default 5n)")
        sp.add_argument("--reflect-cap", type=_positive, help="reflections per direction (default 4n)")
        sp.add_argument("--no-verify", action="store_true", help="skip the new-projective check")

    sp = sub.add_parser("knit", help="knit the transjective component")
    common(sp, ("text", "json", "dot"))
    knitting(sp)
    sp.add_argument("--mode", choices=("finite", "infinite"), default="finite")
    sp.add_argument("--view", choices=("quotient", "cover"), default="quotient",
                    help="dot output: the quotient component or the strip in the cover")

    sp = sub.add_parser("fibre-quotients", help="enumerate fibre quotients and their distances")
    common(sp)
    knitting(sp)
    sp.add_argument("--jobs", "-j", type=int, default=1, help="worker threads for the search")
    sp.add_argument("--limit", type=int, default=64, help="maximum number of algebras")
    sp.add_argument("--out-dir", help="also write each algebra as a bound quiver file here")

    sp = sub.add_parser("tube", help="EXPERIMENTAL: insert a coray into a tube")
    common(sp, ("text", "json", "dot"))
    sp.add_argument("--tube", "-t", required=True, help="tube JSON file")
    sp.add_argument("--vertex", help="vertex i of the projective P_i (default: the only projective)")
    sp.add_argument("--depth", type=_positive, default=6, help="knitting rounds after insertion")
    return p


# ---------------------------------------------------------------- loading

def _load_slice(args, C):
    A = path_basis(C)
    if args.slice == "auto":
        if not C.is_hereditary():
            raise ConfigError("--slice auto needs a hereditary algebra; give a slice file")
        mods = [injective(A, x) for x in C.vertices]
    else:
        mods = modules_from_file(A, read_json(args.slice))
    return mods


# ---------------------------------------------------------------- commands

def cmd_info(args, C):
    try:
        dim = path_basis(C).dim
        admissible = True
    except NotAdmissible:
        dim, admissible = None, False
    data = {"vertices": len(C.vertices), "arrows": len(C.arrows), "relations": len(C.relations),
            "dim": dim, "admissible": admissible, "hereditary": C.is_hereditary()}
    if args.format == "json":
        return _dump(data)
    d = dim if admissible else "infinite"
    lines = [f"{data['vertices']} vertices, {data['arrows']} arrows, dim {d}",
             f"relations: {data['relations']}",
             f"admissible: {'yes' if admissible else 'no'}"]
    return "\n".join(lines) + "\n"


def cmd_extend(args, C):
    Ct, ext = relation_extension(C)
    lo, hi = args.copies
    W = cluster_repetitive(C, (lo, hi), (Ct, ext)).quiver
    if args.format == "json":
        return _dump({"extension": format_bound_quiver(Ct), "equations": Ct.equations(),
                      "new_arrows": [label for label, _ in ext.new_arrows],
                      "window": {"copies": [lo, hi], "quiver": format_bound_quiver(W),
                                 "equations": W.equations()}})
    return ("# relation-extension\n" + format_bound_quiver(Ct)
            + "# equations: " + ", ".join(Ct.equations()) + "\n"
            + f"# cluster-repetitive window, copies {lo}..{hi}\n" + format_bound_quiver(W))


def _knit_text(strip):
    lines = [f"{len(strip.nodes)} modules in the cover, {len(strip.holes)} holes",
             f"reflections: {' '.join(f'{d}{x}' for d, x in strip.reflections) or 'none'}",
             f"outcome: {', '.join(strip.reasons) or 'none'}"]
    if strip.phi is not None:
        q = strip.quotient()
        lines.append(f"quotient: {len(q['nodes'])} modules, {len(q['holes_after'])} holes")
        lines.append("modules: " + " ".join(q["nodes"]))
        lines.append("holes after: " + " ".join(q["holes_after"]))
    else:
        lines.append("not periodic")
        lines.append("modules: " + " ".join(strip.label(c) for c in sorted(strip.nodes)))
    return "\n".join(lines) + "\n"


def _knit_output(args, strip):
    if args.format == "json":
        return strip.to_json() + "\n"
    if args.format == "dot":
        if args.view == "quotient" and strip.phi is not None:
            return quotient_to_dot(strip.quotient())
        return strip.to_dot()
    return _knit_text(strip)


def cmd_knit(args, C):
    cover = Cover(C, args.seed)
    mods = _load_slice(args, C)
    sl = slice_from_modules(cover, mods)
    try:
        strip = build_transjective(sl, args.mode, args.knit_cap, args.reflect_cap, not args.no_verify)
    except CapExceeded as e:
        e.output = _knit_output(args, e.partial)
        raise
    return _knit_output(args, strip)


def _fibre_output(args, found, matrix):
    algebras = [{"index": i, "path": [f"{d}{x}" for d, x in f.path],
                 "quiver": format_bound_quiver(f.quiver, names=False),
                 "equations": sorted(f.quiver.equations())} for i, f in enumerate(found)]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for a in algebras:
            with open(os.path.join(args.out_dir, f"fibre_{a['index']}.quiver"), "w", encoding="utf-8") as fh:
                fh.write(a["quiver"])
    if args.format == "json":
        return _dump({"algebras": algebras, "distance": matrix})
    lines = [f"{len(found)} fibre quotients"]
    for a in algebras:
        lines.append(f"[{a['index']}] path: {' '.join(a['path']) or '-'}; relations: {', '.join(a['equations']) or 'none'}")
    if matrix is not None:
        lines.append("distance:")
        lines.extend(" ".join(str(x) for x in row) for row in matrix)
    else:
        lines.append("distance: unavailable (strip not periodic)")
    return "\n".join(lines) + "\n"


def cmd_fibre_quotients(args, C):
    cover = Cover(C, args.seed)
    mods = _load_slice(args, C)
    sl = slice_from_modules(cover, mods)
    verify = not args.no_verify
    try:
        found = enumerate_fibre_quotients(sl, args.knit_cap, args.reflect_cap, args.limit, verify, max(1, args.jobs))
    except CapExceeded as e:
        e.output = _fibre_output(args, e.partial, None)
        raise
    try:
        strip = build_transjective(sl, "finite", args.knit_cap, args.reflect_cap, verify)
        matrix = distance_matrix(strip, found)
    except CapExceeded:
        matrix = None
    return _fibre_output(args, found, matrix)


def _tube_output(args, tube):
    if args.format == "json":
        return tube.to_json() + "\n"
    if args.format == "dot":
        return tube.to_dot()
    proj, inj = tube.flags()
    lines = [f"# {WARNING}", f"{len(tube.modules)} modules"]
    for i, label in enumerate(tube.labels()):
        tags = [t for t, on in (("inserted", i == tube.inserted), ("projective", i in proj),
                                ("injective", i in inj)) if on]
        lines.append(label + (f"  [{', '.join(tags)}]" if tags else ""))
    return "\n".join(lines) + "\n"


def cmd_tube(args, C):
    A = path_basis(C)
    data = read_json(args.tube)
    mods = modules_from_file(A, data)
    depth = data.get("knit", 0) if isinstance(data, dict) else 0
    print(WARNING.replace("experimental:", "EXPERIMENTAL:", 1), file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        tube = knit_tube(tube_from_modules(C, mods, args.seed), depth)
        i = args.vertex
        if i is None:
            proj = tube.flags()[0]
            if len(proj) > 1:
                raise ConfigError("the tube has several projectives; pass --vertex")
            if not proj:
                return _tube_output(args, tube)
            tp = top_dims(tube.modules[proj[0]])
            i = next(v for v, d in tp.items() if d)
        out = insert_coray(tube, str(i), args.depth)
    return _tube_output(args, out)


COMMANDS = {"info": cmd_info, "extend": cmd_extend, "knit": cmd_knit,
            "fibre-quotients": cmd_fibre_quotients, "tube": cmd_tube}


def _write(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    try:
        C = read_quiver(args.input)
    except ClusterTiltError as e:
        print(f"error: {args.input}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text = COMMANDS[args.command](args, C)
    except CapExceeded as e:
        out = getattr(e, "output", None)
        if out is not None:
            _write(args, out)
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ClusterTiltError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    _write(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
