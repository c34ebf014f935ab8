"""Command line front end: ``repkit <verb> ...``.

Group specs: Z<n>, D<n>, T, O, I (also A4, S4, A5); prefix "2" for the
binary cover in SU(2) (2T, 2D3, 2Z4); join two with "x" for a product
(TxT). Spin flags take twice the spin, so ``--twice-j 3`` means j = 3/2.
Set REPKIT_SEED to change the diagonalization seed (default 0).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import characters, mckay, module_action, time_functor
from .errors import RepkitError
from .groups import build_group, parse_group_spec

DEFAULT_TWICE_J_MAX = 6

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


def _group_arg(text: str):
    try:
        return parse_group_spec(text)
    except RepkitError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _r9(x: float) -> float:
    return round(float(x), 9) + 0.0


def _md_table(header: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _matrix_md(names: list[str], m) -> str:
    return _md_table([""] + names, [[names[i]] + list(row) for i, row in enumerate(m.tolist())])


# Handlers return (json data, {format: text}); run() picks the format.

def cmd_group(args):
    g = build_group(args.spec)
    data = {
        "group": g.name, "short": g.spec.short, "order": g.order,
        "is_binary": g.is_binary, "generators": list(g.generators),
        "classes": [{"representative": c.representative, "size": c.size,
                     "angle": _r9(c.angle)} for c in g.classes],
    }
    md = f"**{g.name}**, order {g.order}\n\n" + _md_table(
        ["class", "representative", "size", "angle"],
        [[i, c.representative, c.size, f"{c.angle:.9f}"] for i, c in enumerate(g.classes)])
    return data, {"md": md}


def cmd_chartable(args):
    t = characters.character_table(build_group(args.spec))
    data = characters.table_to_json(t)

    def fmt(z):
        re, im = _r9(z.real), _r9(z.imag)
        return f"{re:g}" if im == 0 else f"{re:g}{im:+g}i"

    header = ["irrep", "dim"] + [f"{c.size}@{c.angle:.4f}" for c in t.group.classes]
    rows = [[r.name, r.dim] + [fmt(z) for z in t.chi[r.index]] for r in t.irreps]
    return data, {"md": f"**{t.group.name}**\n\n" + _md_table(header, rows)}


def cmd_fusion(args):
    t = characters.character_table(build_group(args.spec))
    n = characters.fusion_tensor(t).n
    data = {"group": t.group.name, "irreps": t.names, "n": n.tolist()}
    rows = []
    for a in t.irreps:
        for b in t.irreps[a.index:]:
            parts = [(f"{m}*" if m > 1 else "") + t.names[c]
                     for c, m in enumerate(n[a.index, b.index]) if m]
            rows.append([f"{a.name} x {b.name}", " + ".join(parts)])
    return data, {"md": _md_table(["product", "decomposition"], rows)}


def cmd_mckay(args):
    t = characters.character_table(build_group(args.spec))
    g = mckay.mckay_graph(t)
    data = {"group": t.group.name, **g.to_json()}
    md = f"**{t.group.name}**: {g.ade_type}\n\n" + _matrix_md(t.names, g.adjacency)
    return data, {"md": md, "dot": mckay.to_dot(g)}


def cmd_restrict(args):
    t = characters.character_table(build_group(args.spec))
    mult = module_action.restrict_spin(t, module_action.SpinLabel(args.twice_j))
    data = {"group": t.group.name, "twice_j": args.twice_j, "irreps": t.names,
            "multiplicities": mult.tolist()}
    return data, {"md": _md_table(t.names, [mult.tolist()])}


def cmd_action(args):
    t = characters.character_table(build_group(args.spec))
    if args.twice_j is None:
        spins = module_action.admissible_spins(t, module_action.SpinLabel(DEFAULT_TWICE_J_MAX))
    else:
        spins = [module_action.SpinLabel(args.twice_j)]
    mats = [module_action.action_matrix(t, j) for j in spins]
    md = "".join(f"twice_j = {a.j.twice_j}\n\n" + _matrix_md(t.names, a.m) + "\n" for a in mats)
    return module_action.action_to_json(t, mats), {"md": md}


def cmd_module_axiom(args):
    t = characters.character_table(build_group(args.spec))
    report = module_action.verify_module_axiom(t, module_action.SpinLabel(args.twice_j))
    data = report.to_json()
    md = (f"{t.group.name}: {report.checked} pairs checked up to twice_j = {args.twice_j}, "
          f"{len(report.violations)} violations\n")
    return data, {"md": md}


def cmd_induce(args):
    t = characters.character_table(build_group(args.spec))
    try:
        rho = t.irrep(args.irrep)
    except KeyError as exc:
        raise _Usage(str(exc.args[0])) from None
    row = module_action.induction_row(t, rho, module_action.SpinLabel(args.twice_j))
    data = {"group": t.group.name, "irrep": rho.name, "twice_j_max": args.twice_j,
            "row": {str(k): v for k, v in row.items()}}
    return data, {"md": _md_table(["twice_j", "multiplicity"], [[k, v] for k, v in row.items()])}


def cmd_timefunctor(args):
    if args.lorentzian:
        if args.k is None or args.gamma is None:
            raise _Usage("--lorentzian needs --k and --gamma")
        label = time_functor.ft_lorentzian(module_action.SpinLabel(args.k), args.gamma)
        data = {"signature": "lorentzian", "gamma": args.gamma, "label": label.to_json()}
        md = f"R(k={label.k:g}) -> R({label.k:g}, {label.rho!r})\n"
    else:
        if args.twice_j is None:
            raise _Usage("--euclidean needs --twice-j")
        label = time_functor.ft_euclidean(module_action.SpinLabel(args.twice_j))
        data = {"signature": "euclidean", "label": label.to_json()}
        md = f"R(twice_j={args.twice_j}) -> R({label.twice_jL}/2, {label.twice_jR}/2)\n"
    return data, {"md": md}


def cmd_colax(args):
    a, b, c = (module_action.SpinLabel(x) for x in args.twice_spins)
    report = time_functor.colax_check(a, b, c)
    md = _md_table(["n", "image", "injective"],
                   [[report.n_abc, report.image_mult, report.injective]])
    return report.to_json(), {"md": md}


def cmd_product_module(args):
    t = characters.character_table(build_group(args.spec))
    report = time_functor.product_module_check(t, module_action.SpinLabel(args.twice_j))
    md = _md_table(["twice_j", "m", "c", "left", "right"],
                   [[e[0], t.names[e[1]], t.names[e[2]], e[3], e[4]] for e in report.strict])
    return report.to_json(), {"md": f"{t.group.name}: ok = {report.ok}\n\n" + md}


def cmd_homs(args):
    result = time_functor.find_injective_homs(build_group(args.source), build_group(args.target))
    md = f"{result.count} injective homomorphisms\n"
    return result.to_json(), {"md": md}


def cmd_ample(args):
    try:
        if args.diagram == "-":
            text = sys.stdin.read()
        else:
            with open(args.diagram) as fh:
                text = fh.read()
        d = time_functor.Diagram.from_json(json.loads(text))
    except RepkitError:
        raise
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _Usage(f"bad diagram input: {exc}") from None
    ample = time_functor.is_ample(d)
    data = {"vertices": d.vertex_count, "edges": len(d.edges), "ample": ample}
    return data, {"md": f"ample: {ample}\n"}


def cmd_search_generations(args):
    specs = characters.search_generation_groups(args.max_order)
    names = [s.name for s in specs]
    return names, {"md": "".join(f"- {n}\n" for n in names) or "(none)\n"}


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "md", "dot"], default="json")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    parser = argparse.ArgumentParser(
        prog="repkit", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, func, help_text, spec=True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if spec:
            p.add_argument("spec", type=_group_arg, help="group spec, e.g. 2T, D4, TxT")
        p.set_defaults(func=func)
        return p

    verb("group", cmd_group, "elements and conjugacy classes")
    verb("chartable", cmd_chartable, "character table")
    verb("fusion", cmd_fusion, "tensor product multiplicities")
    verb("mckay", cmd_mckay, "McKay graph and affine ADE type (binary groups)")
    p = verb("restrict", cmd_restrict, "restrict a spin to the group")
    p.add_argument("--twice-j", type=_nonneg, required=True)
    p = verb("action", cmd_action, "action matrices keyed by twice_j")
    p.add_argument("--twice-j", type=_nonneg, default=None,
                   help=f"one spin; default all admissible up to {DEFAULT_TWICE_J_MAX}")
    p = verb("module-axiom", cmd_module_axiom, "check the module axiom up to twice_j")
    p.add_argument("--twice-j", type=_nonneg, default=DEFAULT_TWICE_J_MAX)
    p = verb("induce", cmd_induce, "induction multiplicities of an irrep")
    p.add_argument("--irrep", required=True, help="irrep name, e.g. 3 or 1'")
    p.add_argument("--twice-j", type=_nonneg, default=DEFAULT_TWICE_J_MAX)
    p = verb("timefunctor", cmd_timefunctor, "time functor on a spin label", spec=False)
    sig = p.add_mutually_exclusive_group()
    sig.add_argument("--euclidean", action="store_true", help="(default) j -> (j, j)")
    sig.add_argument("--lorentzian", action="store_true", help="k -> (k, gamma k)")
    p.add_argument("--twice-j", type=_nonneg)
    p.add_argument("--k", type=_nonneg, help="twice the spin label k")
    p.add_argument("--gamma", type=float, help="Immirzi parameter")
    p = verb("colax", cmd_colax, "colax multiplicity check for c in a x b", spec=False)
    p.add_argument("twice_spins", type=_nonneg, nargs=3, metavar="TWICE_J")
    p = verb("product-module", cmd_product_module, "module functor m -> m x m over the Euclidean time functor")
    p.add_argument("--twice-j", type=_nonneg, default=DEFAULT_TWICE_J_MAX)
    p = verb("homs", cmd_homs, "injective homomorphisms SOURCE -> TARGET", spec=False)
    p.add_argument("source", type=_group_arg)
    p.add_argument("target", type=_group_arg)
    p = verb("ample", cmd_ample, "ample-diagram predicate on JSON input", spec=False)
    p.add_argument("diagram", help='JSON file {"vertices": n, "edges": [[u, v], ...]} or -')
    p = verb("search-generations", cmd_search_generations,
             "SO(3) groups with irreps 1, 1', 1'', 3", spec=False)
    p.add_argument("--max-order", type=_nonneg, default=60)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, renders = args.func(args)
    except _Usage as exc:
        parser.print_usage(stderr)
        print(f"repkit: error: {exc}", file=stderr)
        return EXIT_USAGE
    except RepkitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return EXIT_ERROR
    if args.format == "json":
        text = json.dumps(data, indent=2) + "\n"
    elif args.format in renders:
        text = renders[args.format]
    else:
        parser.print_usage(stderr)
        print(f"repkit: error: --format {args.format} is not available for {args.verb}",
              file=stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
