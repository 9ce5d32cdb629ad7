"""Command-line front end.

Exit codes: 0 = computation succeeded and every checked verdict holds;
1 = the run was valid but a mathematical verdict is false (e.g. the
submodule is not Dirac); 2 = malformed input, missing file, or a guard
refused the computation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from .algebra import AlgebraError, GuardError
from .courant import CourantError, EpsilonSpace, ESpace
from .dirac import (DiracError, Submodule, find_two_form_witness, is_dirac,
                    is_poisson, lie_algebroid_check, poisson_graph,
                    two_form_graph)
from .exactlin import QMatrix, rat_str
from .files import (BUNDLED_ALGEBRAS, BUNDLED_TABLES, FileFormatError,
                    load_algebra_ref, load_bracket_table, load_submodule,
                    load_two_form)
from .hochschild import homology, cohomology_h1, decode_index
from .morita import transport_dirac, verify_morita, verify_opposite
from .omni import (build_omni_iso, d_structure_check, verify_ev1,
                   verify_main_theorem)

SCHEMA = "hccourant/1"

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def _rvec(v):
    return [rat_str(x) for x in v]


def _rmat(M):
    return [_rvec(row) for row in M]


def _chain_terms(pres, k):
    """Human-readable representative of the k-th homology class."""
    c = pres.rep_chain(k)
    A = c.algebra
    terms = []
    for idx, x in enumerate(c.coords):
        if x:
            names = " (x) ".join(A.basis_names[i]
                                 for i in decode_index(A, idx, c.degree))
            terms.append(f"{rat_str(x)}*[{names}]")
    return " + ".join(terms) if terms else "0"


def _e_presentation(E: ESpace) -> dict:
    return {
        "h1_cohomology_dim": E.h1co.dim,
        "h1_homology_dim": E.h1.dim,
        "h0_dim": E.h0.dim,
        "e_dim": E.dim,
        "h1_cohomology_reps": [
            _rmat(E._derivation_rep(k).rows) for k in range(E.h1co.dim)],
        "h1_homology_reps": [_chain_terms(E.h1, k)
                             for k in range(E.h1.dim)],
        "h0_reps": [_chain_terms(E.h0, k) for k in range(E.h0.dim)],
    }


# ---------------------------------------------------------------------------
# subcommand implementations; each returns (report_dict, exit_code)

def _cmd_validate(args):
    A = load_algebra_ref(args.algebra)
    return {"algebra": A.name, "dimension": A.dim,
            "associative": True, "unital": True,
            "commutative": A.is_commutative()}, EXIT_OK


def _cmd_homology(args):
    A = load_algebra_ref(args.algebra)
    n = args.degree
    pres = homology(A, n, max_dim=args.guard)
    return {"algebra": A.name, "degree": n, "dim": pres.dim,
            "cycle_rank": pres.cycle_basis.rows,
            "boundary_rank": pres.boundary_basis.rows,
            "class_reps": [_chain_terms(pres, k)
                           for k in range(pres.dim)]}, EXIT_OK


def _cmd_cohomology(args):
    A = load_algebra_ref(args.algebra)
    E = ESpace(A, max_dim=args.guard)
    return {"algebra": A.name, "degree": 1, "dim": E.h1co.dim,
            "class_reps": [_rmat(E._derivation_rep(k).rows)
                           for k in range(E.h1co.dim)]}, EXIT_OK


def _cmd_courant(args):
    A = load_algebra_ref(args.algebra)
    E = ESpace(A, max_dim=args.guard)
    rep = _e_presentation(E)
    rep["algebra"] = A.name
    rep["pairing_table"] = [
        [_rvec(E.pairing_classes(
            tuple(1 if a == i else 0 for a in range(E.h1co.dim)),
            tuple(1 if b == j else 0 for b in range(E.h1.dim))))
         for j in range(E.h1.dim)] for i in range(E.h1co.dim)]
    return rep, EXIT_OK


def _cmd_kernel(args):
    A = load_algebra_ref(args.algebra)
    E = ESpace(A, max_dim=args.guard)
    eps = EpsilonSpace(E)
    return {"algebra": A.name, "e_dim": E.dim, "kernel_dim": eps.J.rows,
            "kernel_basis": _rmat(eps.J)}, EXIT_OK


def _cmd_epsilon(args):
    A = load_algebra_ref(args.algebra)
    E = ESpace(A, max_dim=args.guard)
    eps = EpsilonSpace(E)
    return {"algebra": A.name, "e_dim": E.dim, "kernel_dim": eps.J.rows,
            "epsilon_dim": eps.dim,
            "class_reps": _rmat(eps.class_reps),
            "form_table": [[_rvec(eps.form_table[i][j])
                            for j in range(eps.dim)]
                           for i in range(eps.dim)],
            "nondegenerate": True}, EXIT_OK


def _build_spaces(args):
    A = load_algebra_ref(args.algebra)
    E = ESpace(A, max_dim=args.guard)
    eps = EpsilonSpace(E)
    return A, E, eps


def _cmd_dirac_check(args):
    if (args.submodule is None) == (args.bracket is None):
        raise FileFormatError(
            "dirac-check needs exactly one of --submodule or --bracket")
    A, E, eps = _build_spaces(args)
    if args.bracket is not None:
        t = load_bracket_table(args.bracket, A)
        _, L = poisson_graph(E, eps, t)
    else:
        L = load_submodule(args.submodule, E, eps)
        if not L.on_quotient:
            L = Submodule(eps, QMatrix([eps.reduce(v) for v in L.vectors],
                                       cols=eps.dim))
    verdict = is_dirac(L)
    rep = {"algebra": A.name, "epsilon_dim": eps.dim,
           "submodule_dim": L.dim,
           "submodule_basis": _rmat(L.vectors)}
    rep.update(verdict.to_json())
    return rep, (EXIT_OK if verdict.dirac else EXIT_FALSE)


def _cmd_poisson_graph(args):
    A, E, eps = _build_spaces(args)
    t = load_bracket_table(args.bracket, A)
    L_E, L = poisson_graph(E, eps, t)
    poisson = is_poisson(t)
    verdict = is_dirac(L)
    rng = random.Random(args.seed)
    algebroid = (lie_algebroid_check(eps, L, rng=rng).to_json()
                 if verdict.dirac else None)
    rep = {"algebra": A.name, "is_poisson": poisson,
           "graph_basis_e": _rmat(L_E.vectors),
           "graph_basis_epsilon": _rmat(L.vectors),
           "verdict": verdict.to_json(),
           "poisson_iff_dirac": poisson == verdict.dirac,
           "lie_algebroid": algebroid}
    return rep, (EXIT_OK if poisson else EXIT_FALSE)


def _cmd_two_form(args):
    A, E, eps = _build_spaces(args)
    if args.omega is not None:
        omega = load_two_form(args.omega, E)
        L, verdict = two_form_graph(eps, omega)
        rep = {"algebra": A.name, "omega": _rvec(omega.coords),
               "graph_basis": _rmat(L.vectors),
               "verdict": verdict.to_json()}
        return rep, (EXIT_OK if verdict.dirac else EXIT_FALSE)
    rng = random.Random(args.seed)
    witness, h2 = find_two_form_witness(E, rng=rng)
    rep = {"algebra": A.name, "h2_dim": h2.dim,
           "witness": _rvec(witness.coords) if witness else None,
           "outcome": "witness found" if witness else "none found"}
    if witness is not None:
        L, verdict = two_form_graph(eps, witness)
        rep["graph_basis"] = _rmat(L.vectors)
        rep["verdict"] = verdict.to_json()
        return rep, (EXIT_OK if verdict.dirac else EXIT_FALSE)
    return rep, EXIT_OK


def _cmd_morita(args):
    A = load_algebra_ref(args.algebra)
    ctx = verify_morita(A, args.r, max_dim=args.guard)
    rep = ctx.report.to_json()
    rep["h0_map"] = _rmat(ctx.maps.h0_map)
    rep["opposite"] = verify_opposite(A, max_dim=args.guard).to_json()
    ok = ctx.report.ok and rep["opposite"]["ok"]
    return rep, (EXIT_OK if ok else EXIT_FALSE)


def _load_mu(path: str, n: int):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(
                f"{path}: invalid JSON at line {exc.lineno}, "
                f"column {exc.colno}") from exc
    from .exactlin import ZERO, rat
    mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    try:
        for i, j, coords in doc["entries"]:
            mu[int(i)][int(j)] = [rat(x) for x in coords]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FileFormatError(f"{path}: malformed mu table") from exc
    return mu


def _cmd_omni(args):
    n = args.dim
    if n is None:
        raise FileFormatError("omni requires --dim")
    ev1 = verify_ev1(n)
    iso, main = verify_main_theorem(n)
    rep = {"n": n, "ev1": ev1.to_json(), "main_theorem": main.to_json(),
           "e_dim": ev1.e_dim, "kernel_dim": iso.eps.J.rows,
           "epsilon_dim": iso.eps.dim,
           "isomorphism": {
               "gl_basis_images": _rmat(iso.fwd[:n * n]),
               "v_basis_images": _rmat(iso.fwd[n * n:])}}
    ok = ev1.ok and main.ok
    if args.mu is not None:
        d = d_structure_check(iso, _load_mu(args.mu, n))
        rep["d_structure"] = d.to_json()
        ok = ok and d.consistent and d.dirac
    return rep, (EXIT_OK if ok else EXIT_FALSE)


def _cmd_suite(args):
    from .suite import run_suite
    rep, ok = run_suite(args.seed)
    return rep, (EXIT_OK if ok else EXIT_FALSE)


COMMANDS = {
    "validate": _cmd_validate,
    "homology": _cmd_homology,
    "cohomology": _cmd_cohomology,
    "courant": _cmd_courant,
    "kernel": _cmd_kernel,
    "epsilon": _cmd_epsilon,
    "dirac-check": _cmd_dirac_check,
    "poisson-graph": _cmd_poisson_graph,
    "two-form": _cmd_two_form,
    "morita": _cmd_morita,
    "omni": _cmd_omni,
    "suite": _cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hccourant",
        description="Exact Courant brackets, Dirac structures, and "
                    "omni-Lie checks on finite-dimensional algebras over Q.",
        epilog="Bundled algebra names: " + ", ".join(BUNDLED_ALGEBRAS)
               + ". Bundled bracket tables: " + ", ".join(BUNDLED_TABLES)
               + ".")
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--algebra", help="algebra JSON file or bundled name")
        sp.add_argument("--degree", type=int, default=1,
                        help="homology degree (homology subcommand)")
        sp.add_argument("--r", type=int, default=2,
                        help="matrix size for the morita subcommand")
        sp.add_argument("--bracket",
                        help="bracket-table JSON file or bundled name")
        sp.add_argument("--submodule", help="submodule JSON file")
        sp.add_argument("--omega", help="two-form JSON file")
        sp.add_argument("--dim", type=int, help="V dimension (omni)")
        sp.add_argument("--mu", help="omni bracket table JSON file")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized draws (recorded)")
        sp.add_argument("--guard", type=int, default=None,
                        help="override the per-degree dimension guard")
        sp.add_argument("--format", choices=("text", "json"),
                        default="text")
        sp.add_argument("--out", help="write the report to a file")
    return p


def _emit_text(doc, out, indent=0):
    pad = "  " * indent
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                out.write(f"{pad}{k}:\n")
                _emit_text(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {_flat_str(v)}\n")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                out.write(f"{pad}-\n")
                _emit_text(v, out, indent + 1)
            else:
                out.write(f"{pad}- {_flat_str(v)}\n")
    else:
        out.write(f"{pad}{_flat_str(doc)}\n")


def _is_flat(v):
    return isinstance(v, list) and all(
        not isinstance(x, (dict, list)) for x in v)


def _flat_str(v):
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if v is None:
        return "none"
    return str(v)


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    needs_algebra = args.subcommand in (
        "validate", "homology", "cohomology", "courant", "kernel",
        "epsilon", "dirac-check", "poisson-graph", "two-form", "morita")
    try:
        if needs_algebra and not args.algebra:
            raise FileFormatError(
                f"{args.subcommand} requires --algebra")
        body, code = COMMANDS[args.subcommand](args)
    except (FileFormatError, AlgebraError, GuardError, CourantError,
            DiracError, OSError) as exc:
        body, code = {"error": str(exc)}, EXIT_ERROR
    report = {"schema": SCHEMA, "subcommand": args.subcommand,
              "seed": args.seed, "exit_code": code}
    report.update(body)
    if args.format == "json":
        text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    else:
        import io
        buf = io.StringIO()
        _emit_text(report, buf)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
