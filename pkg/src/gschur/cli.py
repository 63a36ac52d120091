"""Command-line front end: ``gschur <subcommand> [options]``.

Every subcommand reads JSON files, runs one kernel and writes one JSON
document (or a text summary with ``--text``) to standard output.  Exit
codes: 0 success, 1 domain error (the mathematics refuses the input),
2 input or format error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import matrix_io as mio
from .completion import IncompleteBlockSystem, completion_report, schur_complement
from .errors import DomainError, GschurError, InputError, InvalidInput
from .kv_extension import PartialPositiveOperator, krein_von_neumann
from .lebesgue import lebesgue_decompose
from .parallel import parallel_difference, parallel_sum, weighted_parallel_sum
from .psd_core import TolerancePolicy
from .star_algebra import complement_functional, gns, lebesgue_decompose_functional
from .verify import FORMULAS, check_supplied, passed, run_checks

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("tolerances")
    g.add_argument("--tol-psd", type=float, default=1e-9, help="PSD acceptance slack (default 1e-9)")
    g.add_argument("--tol-rank", type=float, default=None, help="relative rank cut-off (default 64*n*eps)")
    g.add_argument("--tol-eq", type=float, default=1e-8, help="equality / range tolerance (default 1e-8)")
    g.add_argument("--tol-lim", type=float, default=1e-9, help="limit stopping tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=0, help="seed for the oracle's randomness (default 0)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable output")
    p.set_defaults(fmt="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gschur", description="Generalized Schur complements of positive matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    p = add("complement", "minimal complement A_B of the system [[A, B*], [B, *]]")
    p.add_argument("--input", help='JSON {"a", "b", "probes"?}')
    p.add_argument("--a", help="matrix file for A")
    p.add_argument("--b", help="matrix file for B")
    p.add_argument("--probes", help="file with a list of probe vectors")

    p = add("schur", "Schur complement C - A_B of a completion C")
    p.add_argument("--input", help='JSON {"a", "b", "c"}')
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")

    p = add("kvext", "Krein-von Neumann extension of a partially defined positive operator")
    p.add_argument("--input", required=True, help='JSON {"ambientDim", "domainBasis", "values"}')

    p = add("parsum", "parallel sum A:B, or A:(wB) with --weight")
    p.add_argument("--input", help='JSON {"a", "b", "weight"?}')
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--weight", type=float)

    p = add("pardiff", "parallel difference B / A = (A - B)_A - A")
    p.add_argument("--input", help='JSON {"a", "b"}')
    p.add_argument("--a")
    p.add_argument("--b")

    p = add("lebesgue", "Lebesgue decomposition of A with respect to B")
    p.add_argument("--input", help='JSON {"a", "b"}')
    p.add_argument("--a")
    p.add_argument("--b")

    for name, help_, fs in (
        ("alg-gns", "GNS triple of a representable functional f", ("f",)),
        ("alg-complement", "complement functional f_g", ("f", "g")),
        ("alg-lebesgue", "Lebesgue decomposition of f with respect to g", ("f", "g")),
    ):
        p = add(name, help_)
        p.add_argument("--input", help='JSON {"algebra", ' + ", ".join(f'"{x}"' for x in fs) + "}")
        p.add_argument("--algebra", help='algebra file {"envDim", "basis", "unital"}')
        for x in fs:
            p.add_argument(f"--{x}", help=f'functional file {{"values"}} for {x}')

    p = add("verify", "cross-check closed forms against the variational oracle")
    p.add_argument("--a", help="check the complement of a supplied system (with --b)")
    p.add_argument("--b")
    p.add_argument("--probes", help="probe vectors for a supplied system (default: 5 random)")
    p.add_argument("--formula", action="append", choices=FORMULAS, help="restrict random checks (repeatable)")
    p.add_argument("--instances", type=int, default=20, help="random instances per formula (default 20)")
    p.add_argument("--max-dim", type=int, default=5, help="largest random dimension (default 5)")
    p.add_argument("--budget", type=int, default=200, help="oracle iteration budget (default 200)")
    p.add_argument("--starts", type=int, default=32, help="oracle multi-starts (default 32)")
    p.add_argument("--tolerance", type=float, default=1e-7, help="pass threshold on deviations (default 1e-7)")
    return parser


def _policy(args) -> TolerancePolicy:
    return TolerancePolicy(psd_tol=args.tol_psd, rank_tol=args.tol_rank, eq_tol=args.tol_eq, lim_tol=args.tol_lim)


def _operands(args, names, optional=()):
    """Collect operands from ``--input`` or from per-operand files."""
    doc = mio.load_json(args.input) if getattr(args, "input", None) else None
    if doc is not None and not isinstance(doc, dict):
        raise InvalidInput("--input must hold a JSON object")
    out = {}
    for name in names + tuple(optional):
        if doc is not None and name in doc:
            out[name] = doc[name]
        elif getattr(args, name, None) is not None:
            out[name] = mio.load_json(getattr(args, name))
        elif name in names:
            raise InvalidInput(f"missing operand '{name}' (give --{name} or --input)")
    return out


def _matrices(args, names, optional=()):
    raw = _operands(args, names, optional)
    return {k: (v if k in ("probes", "weight") else mio.parse_matrix(v)) for k, v in raw.items()}


def cmd_complement(args, pol):
    ops = _matrices(args, ("a", "b"), ("probes",))
    probes = [mio.parse_vector(v) for v in ops.get("probes", [])]
    s = IncompleteBlockSystem.from_arrays(ops["a"], ops["b"], pol)
    rep = completion_report(s, probes, pol)
    doc = {
        "completable": rep.completable,
        "complement": mio.dump_matrix(rep.complement.matrix) if rep.complement is not None else None,
        "bestConstants": [{"probe": mio.dump_vector(y), "value": v} for y, v in rep.best_constants],
    }
    error = None if rep.completable else "not completable: ran B* is not contained in ran A"
    return doc, error


def cmd_schur(args, pol):
    ops = _matrices(args, ("a", "b", "c"))
    s = IncompleteBlockSystem.from_arrays(ops["a"], ops["b"], pol)
    sc = schur_complement(s, ops["c"], pol)
    return {"schurComplement": mio.dump_matrix(sc), "complement": mio.dump_matrix(ops["c"] - sc)}, None


def cmd_kvext(args, pol):
    p: PartialPositiveOperator = mio.parse_partial_operator(mio.load_json(args.input))
    kv = krein_von_neumann(p, pol)
    return {"extension": mio.dump_matrix(kv.extension.matrix), "gram": mio.dump_matrix(kv.gram.matrix)}, None


def cmd_parsum(args, pol):
    ops = _matrices(args, ("a", "b"), ("weight",))
    weight = ops.get("weight", args.weight if args.weight is not None else None)
    if weight is None:
        value = parallel_sum(ops["a"], ops["b"], pol)
    else:
        if not isinstance(weight, (int, float)) or not weight > 0:
            raise InvalidInput("weight must be a positive number")
        value = weighted_parallel_sum(ops["a"], ops["b"], float(weight), pol)
    return {"parallelSum": mio.dump_matrix(value.matrix), "weight": weight}, None


def cmd_pardiff(args, pol):
    ops = _matrices(args, ("a", "b"))
    return {"parallelDifference": mio.dump_matrix(parallel_difference(ops["b"], ops["a"], pol))}, None


def cmd_lebesgue(args, pol):
    ops = _matrices(args, ("a", "b"))
    split = lebesgue_decompose(ops["a"], ops["b"], pol)
    return {
        "regular": mio.dump_matrix(split.regular.matrix),
        "singular": mio.dump_matrix(split.singular.matrix),
        "routes": {k: mio.dump_matrix(v) for k, v in split.routes.items()},
        "deviations": split.deviations,
        "iterations": split.iterations,
        "converged": split.converged,
        "certificates": {
            "regularAbsolutelyContinuous": split.regular_is_continuous,
            "singularIsSingular": split.singular_is_singular,
        },
    }, None


def _algebra_operands(args, names):
    doc = mio.load_json(args.input) if args.input else {}
    if not isinstance(doc, dict):
        raise InvalidInput("--input must hold a JSON object")
    alg_doc = doc.get("algebra") or (mio.load_json(args.algebra) if args.algebra else None)
    if alg_doc is None:
        raise InvalidInput("missing algebra (give --algebra or --input)")
    alg = mio.parse_algebra(alg_doc)
    out = [alg]
    for name in names:
        raw = doc.get(name)
        if raw is None:
            path = getattr(args, name)
            if path is None:
                raise InvalidInput(f"missing functional '{name}' (give --{name} or --input)")
            raw = mio.load_json(path)
        out.append(mio.parse_functional(raw, alg))
    return out


def cmd_alg_gns(args, pol):
    alg, f = _algebra_operands(args, ("f",))
    t = gns(f, pol)
    return {
        "hilbertDim": t.hilbert_dim,
        "gram": mio.dump_matrix(t.gram),
        "repMatrices": [mio.dump_matrix(r) for r in t.rep_matrices],
        "cyclic": mio.dump_vector(t.cyclic),
        "cyclicNormSq": t.cyclic_norm_sq,
        "boundConstants": [t.bound_constant(e) for e in np.eye(alg.dim)],
    }, None


def cmd_alg_complement(args, pol):
    _, f, g = _algebra_operands(args, ("f", "g"))
    return {"complement": mio.dump_functional(complement_functional(f, g, pol))}, None


def cmd_alg_lebesgue(args, pol):
    _, f, g = _algebra_operands(args, ("f", "g"))
    split = lebesgue_decompose_functional(f, g, pol)
    return {
        "regular": mio.dump_functional(split.regular),
        "singular": mio.dump_functional(split.singular),
        "alternateRegular": mio.dump_functional(split.alternate_regular),
        "deviation": split.deviation,
        "certificates": {
            "regularAbsolutelyContinuous": split.regular_is_continuous,
            "singularIsSingular": split.singular_is_singular,
        },
    }, None


def cmd_verify(args, pol):
    oracle_kw = dict(budget=args.budget, starts=args.starts)
    if args.a or args.b:
        ops = _matrices(args, ("a", "b"), ("probes",))
        if "probes" in ops:
            probes = [mio.parse_vector(v) for v in ops["probes"]]
        else:
            rng = np.random.default_rng(args.seed)
            n2 = ops["b"].shape[0]
            probes = [rng.standard_normal(n2) + 1j * rng.standard_normal(n2) for _ in range(5)]
        checks = check_supplied(ops["a"], ops["b"], probes, pol, seed=args.seed, **oracle_kw)
    else:
        if args.instances < 1 or args.max_dim < 1:
            raise InvalidInput("--instances and --max-dim must be positive")
        formulas = tuple(args.formula) if args.formula else FORMULAS
        checks = run_checks(formulas, args.instances, args.max_dim, args.seed, pol, **oracle_kw)
    ok = passed(checks, args.tolerance)
    doc = {"checks": [c.as_dict() for c in checks], "tolerance": args.tolerance, "passed": ok}
    return doc, None if ok else "verification failed: kernel and oracle disagree"


COMMANDS = {
    "complement": cmd_complement,
    "schur": cmd_schur,
    "kvext": cmd_kvext,
    "parsum": cmd_parsum,
    "pardiff": cmd_pardiff,
    "lebesgue": cmd_lebesgue,
    "alg-gns": cmd_alg_gns,
    "alg-complement": cmd_alg_complement,
    "alg-lebesgue": cmd_alg_lebesgue,
    "verify": cmd_verify,
}


def _text(doc, indent="") -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict) and "entries" in value:
            m = mio.parse_matrix(value) + 0.0
            body = np.array2string(m, precision=6, suppress_small=True, max_line_width=100)
            lines.append(f"{indent}{key} =\n" + "\n".join(indent + "  " + ln for ln in body.splitlines()))
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for i, item in enumerate(value):
                lines.append(f"{indent}  [{i}]")
                lines.append(_text(item, indent + "    "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def run(argv=None) -> int:
    """Run one subcommand; argparse usage errors exit with status 2."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        pol = _policy(args)
        doc, error = COMMANDS[args.command](args, pol)
    except DomainError as exc:
        print(f"gschur {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InputError as exc:
        print(f"gschur {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GschurError as exc:  # pragma: no cover - every error is one of the two families
        print(f"gschur {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    doc = {"command": args.command, **doc, "policy": pol.as_dict()}
    if args.fmt == "text":
        print(_text(doc))
    else:
        print(mio.dumps(doc))
    if error:
        print(f"gschur {args.command}: {error}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
