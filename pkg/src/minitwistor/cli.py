"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import branch, lattice, linsys, models
from .poly import UniPoly, as_fraction
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EXHAUSTED = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Params files


def _rationals(values, what: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise InputError(f"{what} must be a list of rational strings")
    try:
        return [as_fraction(v) for v in values]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from None


def params_from_dict(data: dict) -> models.ModelParams:
    if not isinstance(data, dict):
        raise InputError("params file must hold a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("n must be an integer")
    lambdas = _rationals(data.get("lambdas"), "lambdas")
    g_hat = _rationals(data.get("g_hat", []), "g_hat")
    kwargs = {}
    if "c" in data:
        c = _rationals(data["c"], "c")
        if len(c) != 2:
            raise InputError("c must be a pair [re, im]")
        if c[0] ** 2 + c[1] ** 2 != Fraction(1, 4):
            raise InputError("|c|^2 must equal 1/4")
        kwargs["c"] = tuple(c)
    if data.get("g_linear") is not None:
        kwargs["g_linear"] = tuple(_rationals(data["g_linear"], "g_linear"))
    try:
        return models.ModelParams(n, tuple(lambdas), UniPoly(g_hat), **kwargs)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def params_to_dict(p: models.ModelParams) -> dict:
    d = {
        "n": p.n,
        "lambdas": [str(x) for x in p.lambdas],
        "g_hat": [str(x) for x in p.g_hat.coeffs],
        "c": [str(p.c[0]), str(p.c[1])],
    }
    if p.g_linear is not None:
        d["g_linear"] = [str(x) for x in p.g_linear]
    return d


def load_params(path: str) -> models.ModelParams:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None
    return params_from_dict(data)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_build_surface(args, out) -> int:
    if args.n < 3:
        raise InputError("n must be at least 3")
    s = lattice.build_surface_S(args.n)
    rep = lattice.validate_configuration(s)
    curves = {}
    for name in s.names:
        c = s[name]
        curves[name] = {"class": c.as_dict(), "self_intersection": c @ c,
                        "genus": lattice.virtual_genus(c)}
    lat = s.lattice
    if args.json:
        data = {
            "n": args.n,
            "basis": list(lat.basis),
            "gram": [list(r) for r in lat.gram],
            "K": s.K.as_dict(),
            "K2": s.K @ s.K,
            "curves": curves,
            "report": rep.to_dict(),
            "failures": rep.n_fail,
        }
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(f"surface S, n={args.n}, rank={lat.rank}, K^2={s.K @ s.K}\n")
        out.write(f"K = {s.K}\n")
        for name, info in curves.items():
            out.write(f"{name}: {s[name]}  self={info['self_intersection']} genus={info['genus']}\n")
        out.write("basis: " + " ".join(lat.basis) + "\n")
        for row in lat.gram:
            out.write(" ".join(f"{v:3d}" for v in row) + "\n")
        out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _ideal_for(which: str, p: models.ModelParams, verbatim: bool) -> models.Ideal:
    if which == "minitwistor":
        sc = models.scroll_relations(p.n)
        return models.Ideal(sc.variables, sc.generators + (("conic", models.minitwistor_quadric(p)),))
    if which == "model-x":
        return models.model_X_ideal(p, verbatim=verbatim)
    if which == "fiber":
        return models.fiber_model(p)
    return models.Ideal(branch.BRANCH_VARS, (("branch", branch.branch_polynomial(p)),))


def cmd_emit_ideal(args, out) -> int:
    p = load_params(args.params)
    try:
        ideal = _ideal_for(args.which, p, args.verbatim)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write((ideal.to_json() if args.json else ideal.to_text()) + "\n")
    return EXIT_OK


def suite(n: int, p: models.ModelParams, deep: bool = False, seed: int = 0) -> VerificationReport:
    rep = VerificationReport()
    # lattices
    rep.extend(lattice.validate_configuration(lattice.build_surface_S(n)), "lattice.S.")
    rep.extend(lattice.check_C0_numbers(n), "lattice.")
    # linear systems
    rep.extend(linsys.verify_nontrivial_member(n), "linsys.")
    rep.extend(linsys.verify_Y_classes(n), "linsys.")
    rep.check("linsys.movable(n-2).selfint", 2, linsys.movable_part_numbers(n, n - 2)[0])
    rep.check("linsys.movable(n-1).selfint", 4, linsys.movable_part_numbers(n, n - 1)[0])
    if n >= 4:
        rep.extend(linsys.compare_with_reference(n)[0], "linsys.")
    # projective models
    rep.check("models.mt_identity", True, models.verify_mt_identity(p))
    wrong = [s + 1 for s in models.elementary_symmetric(p.lambdas)]
    rep.check("models.mt_identity.perturbed", False, models.verify_mt_identity(p, wrong))
    d = models.derive_branch(p)
    rep.check("models.derive_branch.imaginary_part", True, d.imaginary_part.is_zero())
    rep.check("models.derive_branch.q_coefficient", 4 * p.c_abs2, d.q_coefficient)
    rep.check("models.derive_branch.matches", p.c_abs2 == Fraction(1, 4), d.matches)
    unit = models.derive_branch(models.ModelParams(n, p.lambdas, p.g_hat, (1, 0)))
    rep.check("models.derive_branch.c=1.q_coefficient", 4, unit.q_coefficient)
    if p.c[1] == 0 or p.g_linear is not None:
        X = models.model_X_ideal(p)
        Xv = models.model_X_ideal(p, verbatim=True)
        pts = [models.lift_to_X(pt, p, seed=seed + k)
               for k, pt in enumerate(models.sample_points_on_T(p, 5, seed=seed))]
        rep.check("models.sample_points.on_X", True, all(X.vanishes_at(models.point_dict(x)) for x in pts))
        rep.check("models.sample_points.verbatim_quadric_fails", True,
                  not all(Xv.vanishes_at(models.point_dict(x)) for x in pts))
        rep.check("models.project_f.eta", True,
                  all(models.project_f(x)[-2:] == (x[n + 2], x[n + 3]) for x in pts))
        chart = dict(models.restrict_to_chart(X, n))
        fib = dict(models.fiber_model(p).generators)
        rep.check("models.chart_restriction", True,
                  all(chart.get(t) in (fib[t], -fib[t]) for t in fib))
    rep.extend(models.conic_bundle_form(p)["report"], "models.")
    if deep and n <= 4:
        rep.check("models.degree_by_slicing", 2 * (n - 1), models.degree_by_slicing(n, p, seed=seed))
    # branch divisor
    rep.check("branch.ruled_base_genus", (n - 1) // 2, branch.ruled_base_genus(p))
    probe = max(p.lambdas, key=abs) * 2 + 1
    rep.extend(branch.nonreduced_fibers(p, probes=[probe]).report, "branch.")
    rep.check("branch.infinity.exponent", 3 * n - 8, branch.infinity_chart(p).a_type_exponent)
    rep.check("branch.moduli_dimension", n, branch.moduli_dimension(n).dimension)
    bp = branch.branch_polynomial(p)
    rep.check("branch.degree.eta", (2, 2), (bp.degree("eta1"), bp.degree("eta2")))
    # the lam-free part is g_hat^2 - q, the cross term carries g_hat itself
    lam_degree = max((p.g_hat ** 2 - p.q()).degree, p.g_hat.degree)
    rep.check("branch.degree.lam", lam_degree, bp.degree("lam"))
    rep.entries.sort(key=lambda e: e.claim_id)
    return rep


def cmd_verify(args, out) -> int:
    if args.n < 3:
        raise InputError("n must be at least 3")
    if args.params:
        p = load_params(args.params)
        if p.n != args.n:
            raise InputError(f"params file has n={p.n}, expected {args.n}")
    else:
        p = models.random_params(args.n, args.seed)
    rep = suite(args.n, p, deep=args.deep, seed=args.seed)
    analysis = branch.is_admissible(p)
    if args.require_admissible:
        rep.check("branch.is_admissible", True, analysis.admissible)
    if args.json:
        data = rep.to_dict()
        data["params"] = params_to_dict(p)
        data["analysis"] = analysis.to_dict()
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(rep.to_text() + "\n")
        out.write("analysis: " + analysis.to_json() + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_find_admissible(args, out) -> int:
    if args.n < 3:
        raise InputError("n must be at least 3")
    try:
        lambdas = tuple(as_fraction(x) for x in args.lambdas)
        models.ModelParams(args.n, lambdas)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    if args.seeds < 0:
        raise InputError("--seeds must be non-negative")
    results = branch.search_admissible(args.n, lambdas, range(args.seeds), args.tol)
    found = [r for r in results if r.outcome is branch.Outcome.ADMISSIBLE]
    if args.json:
        out.write(json.dumps({"results": [r.to_dict() for r in results],
                              "admissible": len(found)}, indent=2) + "\n")
    else:
        for r in results:
            line = f"seed={r.seed} {r.outcome.value} iterations={r.iterations}"
            if r.g_hat is not None:
                line += f" g_hat=[{', '.join(str(c) for c in r.g_hat.coeffs)}] {r.analysis.to_json()}"
            out.write(line + "\n")
        out.write(f"admissible={len(found)} of {len(results)}\n")
    if found and args.write_params:
        p = models.ModelParams(args.n, lambdas, found[0].g_hat)
        with open(args.write_params, "w") as fh:
            json.dump(params_to_dict(p), fh, indent=2)
            fh.write("\n")
    return EXIT_OK if found else EXIT_EXHAUSTED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minitwistor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build-surface", help="build S(n) and validate its curve configuration")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_build_surface)

    e = sub.add_parser("emit-ideal", help="print defining equations")
    e.add_argument("--params", required=True)
    e.add_argument("--which", choices=("minitwistor", "model-x", "fiber", "branch"), required=True)
    e.add_argument("--verbatim", action="store_true", help="model-x: put z1 in front of the quadric bracket")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_emit_ideal)

    v = sub.add_parser("verify", help="run every verification suite")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--params")
    v.add_argument("--deep", action="store_true", help="include the slicing degree oracle (n <= 4)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--require-admissible", action="store_true")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("find-admissible", help="numerical search for admissible g_hat, verified exactly")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--lambdas", nargs="+", required=True)
    f.add_argument("--seeds", type=int, default=32)
    f.add_argument("--tol", type=float, default=1e-9)
    f.add_argument("--write-params")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_find_admissible)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
