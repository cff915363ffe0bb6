"""Command-line entry point: one subcommand per pipeline stage.

All numeric output is exact coefficient strings; the only floating-point
field is the explicitly named Gauss-oracle diagnostic.  Identical inputs
produce byte-identical output (sorted keys, deterministic orders).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import casson as CS
from . import complexes as CX
from . import diagrams as D
from . import groups as G
from . import linking as LK
from . import surgery as SG
from . import trace as TR


class CliError(ValueError):
    pass


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coords_strings(coords):
    return [str(Fraction(c)) for c in coords]


# ---------------------------------------------------------------------------
# complex pipelines
# ---------------------------------------------------------------------------

def cmd_check(args):
    C = CX.load_complex(args.infile)
    return {"boundary_ok": CX.verify_boundary(C), "acyclic": CX.is_acyclic(C)}


def cmd_propagator(args):
    C = CX.load_complex(args.infile)
    g = CX.solve_propagator(C)
    out = CX.propagator_to_json(C, g)
    out["verified"] = CX.verify_propagator(C, g)
    return out


def cmd_homotopy(args):
    C = CX.load_complex(args.infile)
    g1 = CX.propagator_from_json(C, _load(args.g1))
    g2 = CX.propagator_from_json(C, _load(args.g2))
    h = CX.propagator_homotopy(C, g1, g2)
    maps = []
    for d in range(0, max(C.top_degree - 1, 0)):
        trips = []
        for i, row in enumerate(h.matrix(C, d)):
            for j, x in enumerate(row):
                if not C.field.is_zero(x):
                    trips.append([i, j, C.field.fmt(x)])
        maps.append(trips)
    return {"verified": CX.verify_homotopy(C, g1, g2, h), "maps": maps}


def cmd_end_acyclic(args):
    C = CX.load_complex(args.infile)
    return {"end_acyclic": CX.end_complex_acyclic(C)}


# ---------------------------------------------------------------------------
# graph-space pipelines
# ---------------------------------------------------------------------------

def _build_basis_from_params(params):
    group = G.group_from_tag(params["group"])
    connected = params.get("connected")
    return D.quotient_basis(int(params["degree"]), group,
                            int(params["support"]), connected=connected)


def _basis_payload(params, basis):
    return {
        "params": params,
        "dimension": basis.dimension,
        "diagnostics": basis.diagnostics,
        "basis": [D.graph_to_json(g) for g in basis.basis],
    }


def cmd_basis(args):
    params = {"degree": args.degree, "group": args.group,
              "support": args.support,
              "connected": True if args.connected else None}
    basis = _build_basis_from_params(params)
    return _basis_payload(params, basis)


def _load_basis(path):
    data = _load(path)
    return _build_basis_from_params(data["params"])


def cmd_reduce(args):
    basis = _load_basis(args.basis)
    vec = D.vector_from_json(_load(args.infile))
    return {"coordinates": _coords_strings(basis.reduce(vec))}


def cmd_trace(args):
    basis = _load_basis(args.basis)
    props = {}
    for label, entry in _load(args.propagators)["complexes"].items():
        C = CX.complex_from_json(entry)
        g = CX.propagator_from_json(C, entry["propagator"])
        props[label] = (C, g)
    terms = []
    for term in _load(args.terms)["terms"]:
        graph = D.graph_from_json(term["cgraph"]["graph"])
        states = [tuple(s) for s in term["cgraph"].get("states", [])] or None
        cg = TR.CGraph(graph, states)
        count = TR.ModuliCount([basis.group.parse_ring(s)
                                for s in term["count"]["edge_factors"]])
        terms.append((cg, count))
    coords = TR.trace_contract(terms, props, basis)
    return {"coordinates": _coords_strings(coords)}


def cmd_surgery_eval(args):
    basis = _load_basis(args.basis)
    gamma = D.graph_from_json(_load(args.graph))
    if gamma.degree > 2 * args.n_max:
        raise CliError("graph degree %d exceeds --n-max %d"
                       % (gamma.degree, args.n_max))
    data = SG.realize_ylink(gamma)
    budget = args.budget if args.budget > 0 else None
    coords, diag = SG.eval_Z_bracket(data, basis, budget=budget)
    out = {"coordinates": _coords_strings(coords), "diagnostics": diag}
    if args.tilde:
        tcoords, tdiag = SG.eval_Ztilde_bracket(data, basis, budget=budget)
        out["tilde_coordinates"] = _coords_strings(tcoords)
        out["tilde_diagnostics"] = tdiag
    return out


# ---------------------------------------------------------------------------
# linking pipelines
# ---------------------------------------------------------------------------

def _load_link(path):
    data = _load(path)
    return LK.LatticeLink(data["loops"], data.get("framings"),
                          period=data.get("period", 4))


def cmd_lk(args):
    link = _load_link(args.infile)
    group = G.FreeAbelian(3)
    i, j = args.pair
    val = LK.lk_equivariant(link, i, j, group)
    out = {"value": group.format_ring(val)}
    if args.gauss_diagnostic:
        out["gauss_oracle_float"] = LK.augmented_gauss_float(link, i, j)
    return out


def cmd_lkmatrix(args):
    link = _load_link(args.infile)
    group = G.FreeAbelian(3)
    mat = LK.linking_matrix(link, group)
    return {"matrix": [[group.format_ring(x) for x in row] for row in mat]}


def cmd_split_check(args):
    link = _load_link(args.infile)
    return {"pi_algebraically_split": LK.is_pi_algebraically_split(link)}


# ---------------------------------------------------------------------------
# casson pipeline
# ---------------------------------------------------------------------------

def cmd_casson(args):
    data = _load(args.knot)
    knot = CS.KnotDiagram(data["crossings"], data.get("signs"))
    delta = CS.alexander_polynomial(knot)
    from .ring import format_poly
    out = {"alexander": format_poly(delta)}
    lam = CS.casson_surgery(CS.SurgeryPresentation(knot, args.n))
    out["lambda"] = str(lam)
    if args.basis:
        basis = _load_basis(args.basis)
        out["lambda_pi"] = _coords_strings(CS.lambda_pi(lam, basis))
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="equivz")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallelism bound (evaluation is single-threaded)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="verify boundary and acyclicity")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("propagator", help="solve the canonical propagator")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_propagator)

    s = sub.add_parser("homotopy", help="homotopy between two propagators")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--g1", required=True)
    s.add_argument("--g2", required=True)
    s.set_defaults(fn=cmd_homotopy)

    s = sub.add_parser("end-acyclic", help="endomorphism-complex acyclicity")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_end_acyclic)

    s = sub.add_parser("basis", help="quotient basis of the graph space")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--support", type=int, required=True)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_basis)

    s = sub.add_parser("reduce", help="coordinates of a graph combination")
    s.add_argument("--basis", required=True)
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("trace", help="contract C-graph terms")
    s.add_argument("--terms", required=True)
    s.add_argument("--propagators", required=True)
    s.add_argument("--basis", required=True)
    s.set_defaults(fn=cmd_trace)

    s = sub.add_parser("surgery-eval", help="evaluate the surgery bracket")
    s.add_argument("--graph", required=True)
    s.add_argument("--basis", required=True)
    s.add_argument("--n-max", type=int, default=2)
    s.add_argument("--budget", type=int, default=0)
    s.add_argument("--tilde", action="store_true")
    s.set_defaults(fn=cmd_surgery_eval)

    s = sub.add_parser("lk", help="equivariant linking number of a pair")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--pair", type=int, nargs=2, required=True)
    s.add_argument("--gauss-diagnostic", action="store_true")
    s.set_defaults(fn=cmd_lk)

    s = sub.add_parser("lkmatrix", help="full equivariant linking matrix")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_lkmatrix)

    s = sub.add_parser("split-check", help="diagonal +-1 linking test")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_split_check)

    s = sub.add_parser("casson", help="surgery invariant of a knot diagram")
    s.add_argument("--knot", required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--basis")
    s.set_defaults(fn=cmd_casson)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.fn(args)
    except Exception as exc:  # structured error contract
        sys.stdout.write(json.dumps(
            {"error": str(exc), "type": type(exc).__name__},
            sort_keys=True) + "\n")
        return 1
    _emit(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
