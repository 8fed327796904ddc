"""``ttg``: command-line front end over workspace files.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or parse errors, 3 when a budget (degree bound, ``t_max``,
Gröbner pairs, point count) was exhausted before a verdict.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .groebner import GroebnerBudgetExceeded
from .workspace import WorkspaceError, module_block, parse_workspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def check(name, status, witness=""):
    return {"name": name, "status": status, "witness": witness}


def make_report(command, inputs, result, checks):
    return {"command": command, "inputs": inputs, "result": result, "checks": checks}


def exit_status(report):
    statuses = [c["status"] for c in report["checks"]]
    if "fail" in statuses:
        return EXIT_FAIL
    if "inconclusive" in statuses:
        return EXIT_BUDGET
    return EXIT_OK


def _flags(args):
    return {"degree_bound": args.degree_bound, "stabilize": args.stabilize,
            "ext_degree": args.ext_degree, "oracle": args.oracle, "tmax": args.tmax}


def _module(ws, name):
    if name not in ws.modules:
        raise UsageError(f"unknown module {name!r}")
    return ws.modules[name]


def _object(ws, name):
    """A module, or a named Koszul object built on demand."""
    if name in ws.koszul:
        from .homalg import koszul_ideal
        of, ideal = ws.koszul[name]
        return koszul_ideal(ws.modules[of], ws.ideals[ideal][1])
    return _module(ws, name)


def _subgroup(ws, name):
    if name not in ws.subgroups:
        raise UsageError(f"unknown subgroup {name!r}")
    return ws.subgroups[name]


def _support_summary(res):
    from .speclattice import v_of
    S = v_of(res.ideal)
    return {
        "annihilator": [str(g) for g in res.ideal.groebner()],
        "support": S.describe(),
        "components": [[str(g) for g in a.groebner()] for a in S.components],
        "stabilized": res.stabilized,
        "window": list(res.window),
    }


def _stabilization_check(res, D):
    if res.stabilized:
        return check("stabilized", "pass", f"V(ann) unchanged for degree bounds {res.window[0]}..{res.window[1]}")
    return check("stabilized", "inconclusive",
                 f"V(ann) still changing at degree bound {D}; raise --degree-bound")


# commands

def cmd_support(ws, args):
    from .homalg import annihilator_candidate
    from .rankvariety import cross_check, supp_points
    M = _object(ws, args.module)
    D, W = args.degree_bound, args.stabilize
    result = {"object": args.module, "group": repr(M.group), "degree_bound": D, "stabilize": W}
    checks = []
    res = None
    if args.oracle in ("ann", "both"):
        res = annihilator_candidate(M, D, W)
        result.update(_support_summary(res))
        checks.append(_stabilization_check(res, D))
    if args.oracle in ("rank", "both"):
        if not M.group.elementary:
            checks.append(check("rank-oracle", "skipped", "group is not elementary abelian"))
        elif args.oracle == "rank":
            cls = supp_points(M, args.ext_degree)
            result["rank_points"] = {"field": repr(cls.field), "checked": len(cls.points),
                                     "in_support": [pt.describe() for pt in cls.support()]}
            checks.append(check("rank-points", "inconclusive" if cls.partial else "pass",
                                f"{sum(cls.members)} of {len(cls.points)} points not free"))
        else:
            rep = cross_check(M, D, args.ext_degree, W, annihilator=res)
            result["oracle"] = {"ext_degree": args.ext_degree, "points_checked": rep.points_checked,
                                "certified_in_supp": rep.certified_in_supp,
                                "advisories": rep.advisories, "notes": rep.notes}
            if rep.hard_failures:
                f = rep.hard_failures[0]
                checks.append(check("rank-oracle", "fail", f"{f['point']}: {f['kind']} ({f['witness']})"))
            else:
                checks.append(check("rank-oracle", "inconclusive" if rep.partial else "pass",
                                    f"{rep.points_checked} points over GF({M.group.p}^{args.ext_degree}) agree"))
    return make_report("support", {"workspace": args.workspace, "module": args.module, **_flags(args)},
                       result, checks)


def cmd_koszul(ws, args):
    from .homalg import annihilator_candidate, koszul_ideal, supp
    from .polyring import HomogeneousIdeal
    from .speclattice import equal, meet, v_of
    M = _object(ws, args.module)
    if args.ideal not in ws.ideals:
        raise UsageError(f"unknown ideal {args.ideal!r}")
    ring, gens = ws.ideals[args.ideal]
    if ring != ws.cohomology_ring:
        raise UsageError(f"ideal {args.ideal} is not in the cohomology ring of the group")
    D, W = args.degree_bound, args.stabilize
    K = koszul_ideal(M, gens)
    res = annihilator_candidate(K, D, W)
    expected = meet(supp(M, D, W), v_of(HomogeneousIdeal(ring, gens)))
    got = v_of(res.ideal)
    result = {"object": f"kos({args.module},{args.ideal})", "generators": [str(g) for g in gens],
              "degree_bound": D, "stabilize": W, **_support_summary(res),
              "expected": expected.describe(), "window": [K.lo, K.hi],
              "model_dim": K.model.dim if K.model is not None else None}
    result["window"] = list(res.window)
    ok = equal(got, expected)
    checks = [_stabilization_check(res, D),
              check("koszul-support", "pass" if ok else "fail",
                    f"supp = {got.describe()}; supp(X) meet V(a) = {expected.describe()}")]
    return make_report("koszul", {"workspace": args.workspace, "module": args.module,
                                  "ideal": args.ideal, **_flags(args)}, result, checks)


def cmd_restrict(ws, args):
    from .modrep import restrict
    from .quillen import subgroup_theorem_check
    M = _module(ws, args.module)
    H = _subgroup(ws, args.subgroup)
    if ws.module_groups.get(args.module) is not None:
        raise UsageError(f"module {args.module} is not over the ambient group")
    R = restrict(M, H)
    name = f"{args.module}_{args.subgroup}"
    result = {"object": f"{args.module}|{args.subgroup}", "dim": R.dim,
              "module_block": module_block(R, name, over=args.subgroup)}
    checks = []
    if M.group.elementary:
        cmp_ = subgroup_theorem_check(M, H, args.degree_bound, args.stabilize, args.ext_degree)
        result["support_restricted"] = cmp_.lhs.describe()
        result["support_pulled_back"] = cmp_.rhs.describe()
        checks.append(check("subgroup-theorem", "pass" if cmp_.equal else "fail",
                            f"{cmp_.lhs.describe()} vs {cmp_.rhs.describe()}"))
        checks.append(check("rank-spot-checks", "fail" if cmp_.spot_failures else "pass",
                            f"{cmp_.spot_checks} rank points checked" + (f"; first failure {cmp_.spot_failures[0]}"
                                                           if cmp_.spot_failures else "")))
    return make_report("restrict", {"workspace": args.workspace, "module": args.module,
                                    "subgroup": args.subgroup, **_flags(args)}, result, checks)


def cmd_induce(ws, args):
    from .modrep import induce
    from .quillen import induction_support_check
    Y = _module(ws, args.module)
    H = _subgroup(ws, args.subgroup)
    if Y.group != H.group:
        raise UsageError(f"module {args.module} is not over subgroup {args.subgroup} (declare it with over={args.subgroup})")
    I = induce(Y, H)
    name = f"{args.module}_up"
    result = {"object": f"{args.module}^G", "dim": I.dim, "module_block": module_block(I, name)}
    checks = []
    if H.ambient.elementary:
        cmp_ = induction_support_check(Y, H, args.degree_bound, args.stabilize)
        result["support_induced"] = cmp_.lhs.describe()
        result["support_image"] = cmp_.rhs.describe()
        checks.append(check("induction-support", "pass" if cmp_.equal else "fail",
                            f"{cmp_.lhs.describe()} vs {cmp_.rhs.describe()}"))
    return make_report("induce", {"workspace": args.workspace, "module": args.module,
                                  "subgroup": args.subgroup, **_flags(args)}, result, checks)


def cmd_bgg(ws, args):
    from . import bggdg
    if ws.group is None or not ws.group.elementary:
        raise UsageError("bgg needs an elementary abelian [group]")
    p, r = ws.group.p, ws.group.rank
    N = args.truncation
    names = ["phi", "koszul", "bimodule", "apply", "ext"] if args.check == "all" else [args.check]
    result, checks = {"p": p, "r": r, "truncation": N}, []
    for name in names:
        if name == "phi":
            rep = bggdg.phi_quasi_iso_check(p, r)
            dims = [rep.b_homology[-n] for n in range(r + 1)]
            result["phi"] = {"homology_dims": dims, "algebra_map": rep.algebra_map,
                             "chain_map": rep.commutes_with_d}
            checks.append(check("phi-quasi-iso", "pass" if rep.ok else "fail",
                                "dims " + ",".join(map(str, dims))))
        elif name == "koszul":
            dims = bggdg.koszul_homology_dims(p, r)
            want = bggdg.binomial_dims(r)
            result["koszul"] = {"homology_dims": dims, "expected": want}
            checks.append(check("koszul-homology", "pass" if dims == want else "fail",
                                "dims " + ",".join(map(str, dims))))
        elif name == "bimodule":
            F = bggdg.bgg_bimodule(r, N, p)
            M = F.as_lambda_module()
            H = bggdg.dg_homology(M)
            nz = {str(k): v for k, v in sorted(H.dims.items()) if v}
            ok = nz == {"0": 1} and M.d_squared_zero() and M.leibniz_ok() and F.actions_commute()
            result["bimodule"] = {"certified_window": list(F.certified), "homology": nz}
            checks.append(check("bimodule-homology", "pass" if ok else "fail", f"nonzero homology {nz}"))
        elif name == "apply":
            X = bggdg.bgg_apply(bggdg.SemifreeSModule.free(r, p=p), N)
            H = bggdg.dg_homology(X)
            nz = {str(k): v for k, v in sorted(H.dims.items()) if v}
            result["apply"] = {"certified_window": list(X.certified), "homology": nz}
            checks.append(check("bgg-apply-S", "pass" if nz == {"0": 1} else "fail", f"nonzero homology {nz}"))
        elif name == "ext":
            top = args.degree_bound
            dims = bggdg.ext_over_dg(bggdg.exterior_algebra(r, p=p), top)
            want = bggdg.symmetric_dims(r, top)
            result["ext"] = {"dims": dims, "expected": want}
            checks.append(check("ext-over-exterior", "pass" if dims == want else "fail",
                                "dims " + ",".join(map(str, dims))))
    return make_report("bgg", {"workspace": args.workspace, "check": args.check, "truncation": N,
                               **_flags(args)}, result, checks)


def _named_set(ws, name, args):
    from .homalg import supp
    from .polyring import HomogeneousIdeal
    from .speclattice import v_of
    if name in ws.ideals:
        ring, gens = ws.ideals[name]
        return v_of(HomogeneousIdeal(ring, gens))
    if name in ws.modules or name in ws.koszul:
        return supp(_object(ws, name), args.degree_bound, args.stabilize)
    raise UsageError(f"{name!r} is neither an ideal nor a module")


def cmd_lattice(ws, args):
    from .speclattice import equal, hasse_dot, join, leq, meet, sublattice
    sets = [_named_set(ws, n, args) for n in args.names]
    ring = sets[0].ring
    if any(s.ring != ring for s in sets):
        raise UsageError("named sets live in different rings")
    elems = sublattice(sets)
    labels = [e.describe() for e in elems]
    dot = hasse_dot(elems, labels)
    n = len(elems)
    order = [[j for j in range(n) if i != j and leq(elems[i], elems[j])] for i in range(n)]
    laws = True
    for i in range(n):
        for j in range(n):
            if not equal(meet(elems[i], join(elems[i], elems[j])), elems[i]):
                laws = False
            if not equal(join(elems[i], meet(elems[i], elems[j])), elems[i]):
                laws = False
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    result = {"generators": {nm: s.describe() for nm, s in zip(args.names, sets)},
              "size": n, "elements": labels, "above": order}
    checks = [check("absorption", "pass" if laws else "fail", f"{n} elements")]
    return make_report("lattice", {"workspace": args.workspace, "names": list(args.names),
                                   **_flags(args)}, result, checks)


def cmd_quillen(ws, args):
    from .quillen import CohomologyPresentation, certify_presentation, f_isomorphism_check
    result, checks = {"certifications": {}, "maps": {}}, []
    targets = [args.map] if args.map else sorted(ws.maps)
    if args.map and args.map not in ws.maps:
        raise UsageError(f"unknown map {args.map!r}")
    if not targets and not ws.certify:
        raise UsageError("datum defines no [map] or [certify] blocks")
    for name in sorted(ws.certify):
        ring, group, degree = ws.certify[name]
        ok, presented, computed = certify_presentation(CohomologyPresentation(ring, f"user({ring.name})"),
                                                       group, degree)
        result["certifications"][name] = {"ring": ring.name, "orders": list(group.orders), "degree": degree,
                                          "presented": presented, "computed": computed}
        checks.append(check(f"certify:{name}", "pass" if ok else "fail",
                            f"dims {presented} vs Ext {computed}"))
    for name in targets:
        rep = f_isomorphism_check(ws.maps[name], args.degree_bound, args.tmax)
        result["maps"][name] = rep.as_dict()
        status = {"true": "pass", "false": "fail", "inconclusive": "inconclusive"}[rep.verdict]
        if rep.verdict == "false":
            bad = next(k for k in rep.kernel if not k[1])
            witness = f"kernel element {bad[0]} is not nilpotent (F1)"
        elif rep.verdict == "inconclusive":
            bad = next(s for s, t in rep.powers if t is None)
            witness = f"no p^t power of {bad} in the image for t <= {args.tmax} (F2)"
        else:
            witness = f"t = {rep.exponent}"
        checks.append(check(f"f-iso:{name}", status, witness))
    return make_report("quillen", {"datum": args.workspace, "map": args.map, **_flags(args)}, result, checks)


COMMANDS = {
    "support": cmd_support, "koszul": cmd_koszul, "restrict": cmd_restrict, "induce": cmd_induce,
    "bgg": cmd_bgg, "lattice": cmd_lattice, "quillen": cmd_quillen,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-bound", type=int, default=10, metavar="D")
    common.add_argument("--stabilize", type=int, default=3, metavar="W")
    common.add_argument("--ext-degree", type=int, default=2, metavar="m")
    common.add_argument("--oracle", choices=("ann", "rank", "both"), default="both")
    common.add_argument("--tmax", type=int, default=3, metavar="t")
    common.add_argument("--dot", metavar="PATH")
    common.add_argument("--json", metavar="PATH")
    parser = argparse.ArgumentParser(prog="ttg", description="Supports and thick-subcategory checks for kE-modules.")
    parser.add_argument("--version", action="version", version=f"ttg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("support", parents=[common], help="cohomological support of a module")
    p.add_argument("workspace")
    p.add_argument("module")
    p = sub.add_parser("koszul", parents=[common], help="support of kos(X, a)")
    p.add_argument("workspace")
    p.add_argument("module")
    p.add_argument("ideal")
    for name, helptext in (("restrict", "restriction to a subgroup"), ("induce", "induction from a subgroup")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("workspace")
        p.add_argument("module")
        p.add_argument("subgroup")
    p = sub.add_parser("bgg", parents=[common], help="dg/BGG checks for the group's rank")
    p.add_argument("workspace")
    p.add_argument("check", choices=("phi", "koszul", "bimodule", "apply", "ext", "all"))
    p.add_argument("--truncation", type=int, default=6, metavar="N")
    p = sub.add_parser("lattice", parents=[common], help="sub-lattice generated by named supports")
    p.add_argument("workspace")
    p.add_argument("names", nargs="+")
    p = sub.add_parser("quillen", parents=[common], help="F-isomorphism and presentation checks")
    p.add_argument("workspace", metavar="datum")
    p.add_argument("--map", metavar="NAME")
    return parser


def render_text(report):
    lines = [f"command: {report['command']}"]
    for key, val in report["result"].items():
        if key == "module_block":
            continue
        lines.append(f"{key}: {json.dumps(val, ensure_ascii=False)}")
    for c in report["checks"]:
        lines.append(f"{c['status'].upper():13s}{c['name']}: {c['witness']}")
    return "\n".join(lines) + "\n"


def dumps(report) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree_bound < 1 or args.stabilize < 1 or args.ext_degree < 1 or args.tmax < 0:
        parser.error("numeric flags must be positive")
    try:
        ws = parse_workspace(args.workspace)
        report = COMMANDS[args.command](ws, args)
    except WorkspaceError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"ttg: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GroebnerBudgetExceeded as e:
        print(f"ttg: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(render_text(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
