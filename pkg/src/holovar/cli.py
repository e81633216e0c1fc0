"""Command-line front end.

Exit codes: 0 success, 2 certification failure, 3 mismatch with an expected
(published) value, 4 input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .algebra.scalars import format_rational, parse_rational, parse_scalar

log = logging.getLogger("holovar")

EXIT_OK, EXIT_CERT, EXIT_MISMATCH, EXIT_INPUT = 0, 2, 3, 4


class InputError(ValueError):
    pass


# plumbing ----------------------------------------------------------------------------------

def _cache(config):
    from .residue import FValueCache
    if not config.cache_dir:
        return FValueCache(None)
    tag = hashlib.sha256(__version__.encode()).hexdigest()[:12]
    return FValueCache(os.path.join(config.cache_dir, f"fvalues-{tag}.csv"))


def _config_echo(config) -> dict:
    keys = ("n_max", "k_limit", "n0", "eps", "format", "strict_meromorphy", "which", "coefficients",
            "oracle_ceiling", "max_order", "max_degree", "source")
    out = {}
    for k in keys:
        if hasattr(config, k):
            v = getattr(config, k)
            out[k] = format_rational(v) if isinstance(v, Fraction) else v
    return out


def _report(config, results, ledger=None, cache=None) -> dict:
    return {"command": config.command, "version": __version__, "config": _config_echo(config),
            "results": results, "cache_hits": 0 if cache is None else cache.hits,
            "certification_ledger": ledger or []}


def _emit(config, text: str):
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# fi-table -----------------------------------------------------------------------------------

def fi_table(n_max: int, oracle_ceiling: int = 40, cache=None, jobs: int = 1) -> List[dict]:
    """Rows n, f1, f2, f3 (strings; empty where undefined).

    Values up to the ceiling come from the residue computation, beyond it from
    the recurrences; the two are compared wherever both exist.
    """
    from .asympt import even_values
    from .pfinite import load_fixture, rec_eval
    from .residue import FValueCache
    if n_max < 0:
        raise InputError("--n-max must be >= 0")
    if n_max == 0:
        return []
    cache = cache or FValueCache(None)
    top = min(n_max, oracle_ceiling)
    oracle = {
        "f3": cache.table("f3", list(range(1, top + 1)), jobs=jobs),
        "f1": cache.table("f1", list(range(2, top + 1)), jobs=jobs),
        "f2": cache.table("f2", list(range(2, top + 1, 2)), jobs=jobs),
    }
    rec = {"f3": rec_eval(load_fixture("f3"), n_max),
           "f1": rec_eval(load_fixture("f1"), n_max) if n_max >= 2 else {}}
    ev = even_values("f2", n_max // 2) if n_max >= 2 else {}
    rec["f2"] = {2 * m: v for m, v in ev.items() if 2 * m <= n_max}
    for w in ("f1", "f2", "f3"):
        for n, v in oracle[w].items():
            if n in rec[w] and rec[w][n] != v:
                from .residue import CacheMismatch
                raise CacheMismatch(f"{w}({n}): residue value {v} but recurrence value {rec[w][n]}")
    rows = []
    for n in range(1, n_max + 1):
        row = {"n": n}
        for w in ("f1", "f2", "f3"):
            v = oracle[w].get(n, rec[w].get(n))
            row[w] = "" if v is None else format_rational(v)
        rows.append(row)
    return rows


def cmd_fi_table(config) -> int:
    cache = _cache(config)
    rows = fi_table(config.n_max, config.oracle_ceiling, cache, config.jobs)
    cache.save()
    if config.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["n", "f1", "f2", "f3"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(config, buf.getvalue())
    else:
        _emit(config, _dump(_report(config, rows, cache=cache)))
    return EXIT_OK


# recurrences --------------------------------------------------------------------------------

def cmd_verify_recurrences(config) -> int:
    from .pfinite import load_fixture, rec_verify
    cache = _cache(config)
    n = config.n_max
    res = {}
    f3 = cache.table("f3", list(range(1, n + 1)), jobs=config.jobs)
    f1 = cache.table("f1", list(range(2, n + 1)), jobs=config.jobs)
    f2 = cache.table("f2", list(range(2, n + 1, 2)), jobs=config.jobs)
    res["f3"] = {"range": [1, n], "annihilates": rec_verify(load_fixture("f3"), f3, f3.keys())}
    res["f1"] = {"range": [2, n], "annihilates": rec_verify(load_fixture("f1"), f1, f1.keys())}
    g = {m // 2: v for m, v in f2.items()}
    res["f2_even"] = {"range": [1, n // 2], "annihilates": rec_verify(load_fixture("f2_even"), g, g.keys())}
    cache.save()
    _emit(config, _dump(_report(config, res, cache=cache)))
    return EXIT_OK if all(r["annihilates"] for r in res.values()) else EXIT_MISMATCH


def cmd_guess_recurrence(config) -> int:
    from .pfinite import GuessFailure, InsufficientData, rec_guess, rec_verify, required_terms
    from .asympt import even_values
    w = config.which
    holdout = 40
    need = required_terms(config.max_order, config.max_degree)
    m0 = 1
    total = need + holdout
    if config.source == "oracle":
        cache = _cache(config)
        vals = cache.table(w, [2 * m for m in range(m0, m0 + total)], jobs=config.jobs)
        g = {m: vals[2 * m] for m in range(m0, m0 + total)}
        cache.save()
    else:
        ev = even_values(w, m0 + total)
        g = {m: ev[m] for m in range(m0, m0 + total)}
    seq = [g[m] for m in range(m0, m0 + need)]
    try:
        rec = rec_guess(seq, m0, config.max_order, config.max_degree)
    except InsufficientData as exc:
        raise InputError(str(exc))
    if rec is None:
        res = {"found": False, "max_order": config.max_order, "max_degree": config.max_degree}
        _emit(config, _dump(_report(config, res)))
        return EXIT_MISMATCH
    ok = rec_verify(rec, g, g.keys())
    res = {"found": True, "order": rec.order, "degree": rec.degree, "held_out_terms": holdout,
           "verified_on_held_out": ok, "recurrence": rec.to_json()}
    _emit(config, _dump(_report(config, res)))
    return EXIT_OK if ok else EXIT_MISMATCH


# certify ----------------------------------------------------------------------------------------

def certify_report(n0: int, eps: Fraction) -> dict:
    from .asympt import REFERENCE_FORMS, amplification, audit, certify_approx, chain
    from .integrability.pipelines import family_condition_coeffs
    from .algebra.ratfun import RatFun
    results, ledger = {}, []
    approx = {}
    for w in ("f1", "f2", "f3"):
        a = certify_approx(w, eps, n0)
        approx[w] = a
        ref = certify_approx(w, eps, n0, form=REFERENCE_FORMS[w])
        ch = chain(w, n0)
        results[w] = {"derived": a.to_json(), "published_form": ref.to_json(),
                      "audit_max_rel_err_to_3n0": format_rational(audit(a, 3 * n0)),
                      "published_audit_max_rel_err_to_3n0": format_rational(audit(ref, 3 * n0)),
                      "fitted_constants": [format_rational(c) for c in ch.fit.constants],
                      "enclosure_radius": format_rational(ch.fit.radius)}
        for tag, x in (("derived", a), ("published", ref)):
            ledger.append({"claim": f"|{w}(2n)/F(n) - 1| <= eps ({tag} form)", "n0": n0,
                           "bound": format_rational(x.rel_err)})
        ledger.append({"claim": f"tail sum M_inf for {w}", "n0": n0, "bound": format_rational(a.M_inf)})
    for fam in (1, 2):
        terms = [RatFun(c) * approx[w].ratfun() for c, w in zip(family_condition_coeffs(fam), ("f1", "f2", "f3"))]
        amp = amplification(terms, n0)
        results[f"amplification_family{fam}"] = format_rational(amp.bound)
        ledger.append({"claim": f"amplification of the family {fam} condition", "n0": n0,
                       "bound": format_rational(amp.bound)})
    return {"results": results, "ledger": ledger}


def cmd_certify(config) -> int:
    out = certify_report(config.n0, config.eps)
    _emit(config, _dump(_report(config, out["results"], out["ledger"])))
    return EXIT_OK


# diophantine --------------------------------------------------------------------------------------

def _parse_curve(text: Optional[str]):
    from .integrability.diophantine import CTX, DiophantineCurve, mixed_parity_quartic
    if not text:
        return DiophantineCurve(mixed_parity_quartic())
    import ast
    import operator
    import flint
    names = dict(zip(("k1", "k2"), CTX.gens()))
    ops = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return CTX.constant(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if type(node.op) in ops:
                return ops[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant) \
                    and isinstance(node.right.value, int) and node.right.value >= 0:
                return ev(node.left) ** node.right.value
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if den.is_constant() and not den.is_zero():
                    return ev(node.left) * flint.fmpq(1) / den.leading_coefficient()
        raise InputError(f"unsupported expression in curve: {ast.dump(node)[:60]}")

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse curve {text!r}: {exc.msg}")
    return DiophantineCurve(ev(tree))


def cmd_diophantine(config) -> int:
    from .integrability.diophantine import MethodInapplicable, solve_diophantine_asymptote
    curve = _parse_curve(config.curve)
    try:
        res = solve_diophantine_asymptote(curve).to_json()
        res["status"] = "solved"
    except MethodInapplicable as exc:
        res = {"status": "method inapplicable", "reason": str(exc)}
    _emit(config, _dump(_report(config, res)))
    return EXIT_OK


# classify -----------------------------------------------------------------------------------------

def parse_potential(text: str):
    from .integrability.potential import TrigPotential
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 4 or any(not p for p in parts):
        raise InputError(f"expected up to four comma-separated coefficients, got {text!r}")
    try:
        return TrigPotential(tuple(parse_scalar(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad coefficient in {text!r}: {exc}")


def cmd_classify(config) -> int:
    from .integrability.classify import classify
    V = parse_potential(config.coefficients)
    c = classify(V, config.strict_meromorphy)
    _emit(config, _dump(_report(config, c.to_json())))
    return EXIT_OK


def cmd_reproduce_main2(config) -> int:
    from .integrability.main2 import reproduce_main2
    r = reproduce_main2(config.k_limit, config.n0, config.eps, config.strict_meromorphy)
    _emit(config, _dump(_report(config, r)))
    return EXIT_MISMATCH if r["mismatches"] else EXIT_OK


COMMANDS = {
    "fi-table": cmd_fi_table,
    "verify-recurrences": cmd_verify_recurrences,
    "guess-recurrence": cmd_guess_recurrence,
    "certify": cmd_certify,
    "diophantine": cmd_diophantine,
    "classify": cmd_classify,
    "reproduce-main2": cmd_reproduce_main2,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _eps(text: str) -> Fraction:
    try:
        v = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        v = Fraction(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holovar", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--n0", type=_positive, default=100)
    common.add_argument("--eps", type=_eps, default=Fraction(1, 10 ** 5))
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fi-table", parents=[common])
    s.add_argument("--n-max", type=_positive, default=40)
    s.add_argument("--oracle-ceiling", type=_positive, default=40)

    s = sub.add_parser("verify-recurrences", parents=[common])
    s.add_argument("--n-max", type=_positive, default=38)

    s = sub.add_parser("guess-recurrence", parents=[common])
    s.add_argument("--which", choices=("f1", "f2", "f3"), default="f3")
    s.add_argument("--max-order", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=24)
    s.add_argument("--source", choices=("oracle", "recurrence"), default="oracle")

    sub.add_parser("certify", parents=[common])

    s = sub.add_parser("diophantine", parents=[common])
    s.add_argument("--curve", default=None, help="polynomial in k1, k2 (default: the mixed parity quartic)")

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("coefficients", help='a,b,c,d such as "-20,105/2,-42,21/2"')
    s.add_argument("--strict-meromorphy", action="store_true")

    s = sub.add_parser("reproduce-main2", parents=[common])
    s.add_argument("--k-limit", type=_positive, default=200)
    s.add_argument("--strict-meromorphy", action="store_true")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    from .asympt import CertificationFailure
    from .integrability.darboux import NoDarbouxPoint, TowerOverflow
    from .residue import CacheMismatch
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a coefficient list such as "-20,105/2,..." is positional, not an option
    for i, a in enumerate(argv):
        if a == "--":
            break
        if len(a) > 1 and a[0] == "-" and (a[1].isdigit() or a[1] == "."):
            argv = argv[:i] + ["--"] + argv[i:]
            break
    try:
        config = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if config.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[config.command](config)
    except CertificationFailure as exc:
        diag = {"error": "certification failure", "reason": str(exc),
                "n0": getattr(exc, "n0", None)}
        w = getattr(exc, "witness", None)
        if w is not None:
            diag["witness"] = str(w)
        sys.stderr.write(_dump(diag))
        return EXIT_CERT
    except CacheMismatch as exc:
        sys.stderr.write(_dump({"error": "cache mismatch", "reason": str(exc)}))
        return EXIT_MISMATCH
    except (InputError, TowerOverflow, NoDarbouxPoint) as exc:
        sys.stderr.write(_dump({"error": "input error", "reason": str(exc)}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
