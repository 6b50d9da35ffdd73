"""Command-line front end: ``pencil-lab <command> --config <path>``.

The config is one JSON document. Rationals are written as ``"num/den"`` strings
(plain integers are fine too); JSON floats are rejected to keep the input exact.
Exactly one of the following describes the object under study:

``pencil``
    explicit prefixes ``a, b, alpha_j5, beta_j5, gamma`` plus ``alpha_const``
    and (optional) ``beta_const``;
``jacobi``
    ``a, b`` of a Jacobi matrix; the pencil is ``(J3, J3**2, 1/a0, -b0/a0)``;
``perturbation``
    ``c, d`` and a ``measure`` (``"legendre"``, ``"jacobi:a,b"`` or an object
    with ``kind`` one of ``discrete``, ``jacobi``, ``jacobi-matrix``).

Command options live in top-level keys (``depth``, ``j``, ``samples``, ``ode``,
``band``); see the README for the full schema. Exit status: 0 when every check
passes, 1 when one fails, 2 on a config error.
"""
import argparse
import csv
import hashlib
import io
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .bandcheck import band_fit, symmetry_defect
from .errors import PencilLabError
from .exactcore import Poly
from .odecheck import perturbed_jacobi, solve_polynomial_eigen, perturbed_jacobi_ode_coeffs, verify_ode
from .pencil import (
    PencilData,
    associated_polynomials,
    christoffel_darboux,
    degenerate_from_jacobi,
    recurrence_residual,
    shifted_solutions,
    validate_pencil,
)
from .perturb import (
    PerturbationParams,
    build_pencil_from_perturbation,
    monic_polynomials,
    monic_recurrence,
    orthonormal_polynomials,
    orthonormality_check,
    p_from_r,
    parse_measure,
    perturbation_moment_table,
    r_from_p,
    recurrence3_residual,
)
from .spectral import detrep_check, moment_table, second_kind
from .truncated import RESIDUAL_TOL, factorization_check, orthogonality_report, pencil_eigs

COMMANDS = ("generate", "residuals", "cd-check", "spectrum", "moments", "detrep", "perturb", "ode-check", "band-check")
DEFAULT_TOL = {"spectrum": RESIDUAL_TOL, "perturb": 1e-10}


class ConfigError(Exception):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config error in field '{field}': {message}")


# -- serialisation ---------------------------------------------------------


def fmt_rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_float(x, tol):
    x = complex(x)
    if x.imag == 0:
        return {"float": x.real, "tol": tol}
    return {"re": x.real, "im": x.imag, "tol": tol}


def fmt_poly(p):
    return [fmt_rat(c) for c in p.coeffs] if p else ["0"]


# -- config parsing --------------------------------------------------------


def _rat(value, field):
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(field, f"expected an exact rational ('num/den' string or integer), got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ConfigError(field, f"cannot parse {value!r} as a rational") from None
    raise ConfigError(field, f"expected a rational, got {type(value).__name__}")


def _rat_list(value, field):
    if not isinstance(value, list):
        raise ConfigError(field, "expected a list of rationals")
    return [_rat(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _int(cfg, key, default=None, minimum=None):
    value = cfg.get(key, default)
    if value is None:
        raise ConfigError(key, "required")
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(key, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(key, f"must be >= {minimum}, got {value}")
    return value


def _require(section, key, prefix):
    if key not in section:
        raise ConfigError(f"{prefix}.{key}", "required")
    return section[key]


def parse_pencil(cfg):
    """The pencil described by a config, or ``None`` for a perturbation config."""
    sources = [k for k in ("pencil", "jacobi", "perturbation") if k in cfg]
    if len(sources) != 1:
        raise ConfigError("pencil", f"exactly one of pencil/jacobi/perturbation is required, found {sources or 'none'}")
    if "pencil" in cfg:
        sec = cfg["pencil"]
        seqs = {k: _rat_list(_require(sec, k, "pencil"), f"pencil.{k}") for k in ("a", "b", "alpha_j5", "beta_j5", "gamma")}
        alpha = _rat(_require(sec, "alpha_const", "pencil"), "pencil.alpha_const")
        beta = _rat(sec.get("beta_const", 0), "pencil.beta_const")
        try:
            pencil = PencilData(**seqs, alpha_const=alpha, beta_const=beta)
            validate_pencil(pencil, 0)
        except PencilLabError as e:
            raise ConfigError(f"pencil.{_field_of(e)}", str(e)) from None
        return pencil
    if "jacobi" in cfg:
        sec = cfg["jacobi"]
        a = _rat_list(_require(sec, "a", "jacobi"), "jacobi.a")
        b = _rat_list(_require(sec, "b", "jacobi"), "jacobi.b")
        try:
            return degenerate_from_jacobi(a, b)
        except PencilLabError as e:
            raise ConfigError("jacobi.a" if e.code == "nonpositive-a" else "jacobi", str(e)) from None
    return None


def _field_of(err):
    return {
        "nonpositive-alpha-const": "alpha_const",
        "nonpositive-a": "a",
        "nonpositive-gamma": "gamma",
    }.get(err.code, "a")


def parse_perturbation(cfg):
    sec = cfg.get("perturbation")
    if sec is None:
        raise ConfigError("perturbation", "this command needs a perturbation build (c, d, measure)")
    c = _rat(_require(sec, "c", "perturbation"), "perturbation.c")
    d = _rat(_require(sec, "d", "perturbation"), "perturbation.d")
    try:
        prm = PerturbationParams(c, d)
    except PencilLabError as e:
        raise ConfigError("perturbation.c", str(e)) from None
    raw = sec.get("measure", "legendre")
    if isinstance(raw, dict):
        raw = dict(raw)
        for key in ("nodes", "weights", "a", "b"):
            if key in raw:
                conv = _rat_list if isinstance(raw[key], list) else _rat
                raw[key] = conv(raw[key], f"perturbation.measure.{key}")
    try:
        measure = parse_measure(raw)
    except (PencilLabError, KeyError, ValueError) as e:
        raise ConfigError("perturbation.measure", str(e)) from None
    return prm, measure


def _pencil_depth(cfg, pencil, extra=0):
    depth = _int(cfg, "depth", default=min(pencil.max_depth - extra, 10), minimum=1)
    if depth + extra > pencil.max_depth:
        raise ConfigError("depth", f"depth {depth} needs longer prefixes (at most {pencil.max_depth - extra})")
    return depth


def _need_pencil(cfg):
    pencil = parse_pencil(cfg)
    if pencil is None:
        raise ConfigError("pencil", "this command needs an explicit pencil or a jacobi build")
    return pencil


# -- commands --------------------------------------------------------------
# Each returns (body, ok, polynomial rows for CSV or None).


def cmd_generate(cfg, tol):
    pencil = _need_pencil(cfg)
    depth = _pencil_depth(cfg, pencil)
    family = cfg.get("family", "p")
    if family == "p":
        seq = associated_polynomials(pencil, depth)
    elif family in ("u", "w"):
        seq = shifted_solutions(pencil, 1 if family == "u" else 2, depth)
    elif family == "q":
        P = associated_polynomials(pencil, depth)
        seq = second_kind(pencil, moment_table(pencil, depth, P), depth, P)
    else:
        raise ConfigError("family", f"expected one of p, q, u, w; got {family!r}")
    body = {"family": family, "depth": depth, "polynomials": [{"n": n, "coeffs": fmt_poly(s)} for n, s in enumerate(seq)]}
    return body, True, seq


def cmd_residuals(cfg, tol):
    pencil = _need_pencil(cfg)
    depth = _pencil_depth(cfg, pencil)
    if depth < 2:
        raise ConfigError("depth", "residuals need depth >= 2")
    P = associated_polynomials(pencil, depth)
    fams = {
        "p": P,
        "q": second_kind(pencil, moment_table(pencil, depth, P), depth, P),
        "u": shifted_solutions(pencil, 1, depth),
        "w": shifted_solutions(pencil, 2, depth),
    }
    expected = {
        "p": lambda n: Poly(),
        "q": lambda n: Poly.const(pencil.b[0]) if n == 0 else Poly.const(pencil.a[0]) if n == 1 else Poly(),
        "u": lambda n: Poly(),
        "w": lambda n: Poly.const(pencil.gamma[0]) if n == 0 else Poly(),
    }
    body, ok = {}, True
    for name, seq in fams.items():
        rows = []
        for n in range(depth - 1):
            res = recurrence_residual(pencil, seq, n)
            match = res == expected[name](n)
            ok &= match
            rows.append({"n": n, "residual": fmt_poly(res), "expected": match})
        body[name] = rows
    return body, ok, None


def cmd_cd_check(cfg, tol):
    pencil = _need_pencil(cfg)
    samples = cfg.get("samples")
    if samples is None:
        rng = random.Random(_int(cfg, "seed", default=0))
        nmax = _int(cfg, "nmax", default=min(pencil.max_depth - 2, 10), minimum=1)
        samples = []
        for _ in range(_int(cfg, "count", default=20, minimum=1)):
            lam = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            y = lam
            while y == lam:
                y = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            samples.append({"n": rng.randint(1, nmax), "lam": fmt_rat(lam), "y": fmt_rat(y)})
    if not isinstance(samples, list):
        raise ConfigError("samples", "expected a list of {n, lam, y} objects")
    top = max((s.get("n", 1) for s in samples if isinstance(s, dict)), default=1)
    if not isinstance(top, int) or top + 2 > pencil.max_depth:
        raise ConfigError("samples", f"n up to {top} needs prefixes reaching depth {top + 2}")
    P = associated_polynomials(pencil, top + 2)
    rows, ok = [], True
    for i, s in enumerate(samples):
        field = f"samples[{i}]"
        if not isinstance(s, dict):
            raise ConfigError(field, "expected an object")
        n = s.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ConfigError(f"{field}.n", "expected an integer >= 1")
        lam, y = _rat(s.get("lam"), f"{field}.lam"), _rat(s.get("y"), f"{field}.y")
        if lam == y:
            raise ConfigError(f"{field}.y", "lam and y must differ")
        lhs, rhs = christoffel_darboux(pencil, n, lam, y, P)
        ok &= lhs == rhs
        rows.append({"n": n, "lam": fmt_rat(lam), "y": fmt_rat(y), "lhs": fmt_rat(lhs), "rhs": fmt_rat(rhs), "equal": lhs == rhs})
    return {"samples": rows}, ok, None


def cmd_spectrum(cfg, tol):
    pencil = _need_pencil(cfg)
    j = _int(cfg, "j", default=min(pencil.max_depth - 2, 8), minimum=1)
    if j + 2 > pencil.max_depth:
        raise ConfigError("j", f"j = {j} needs prefixes reaching depth {j + 2}")
    spec = pencil_eigs(pencil, j)
    c, fact_ok = factorization_check(pencil, j)
    report = orthogonality_report(spec, tol=tol)
    resid_ok = spec.max_residual <= tol
    body = {
        "j": j,
        "charpoly": fmt_poly(spec.charpoly),
        "factorization": {"c_j": fmt_rat(c), "holds": fact_ok},
        "eigenpairs": [
            {"eigenvalue": fmt_float(lam, tol), "multiplicity": m, "residual": fmt_float(r, tol)}
            for lam, m, r in zip(spec.eigenvalues, spec.multiplicities, spec.residuals)
        ],
        "orthogonality": {
            "bilinear_ok": report.bilinear_ok,
            "sesquilinear_ok": report.sesquilinear_ok,
            "j3_positive_definite": report.j3_positive_definite,
            "real_ok": report.real_ok,
        },
    }
    return body, bool(fact_ok and resid_ok and report.ok), None


def cmd_moments(cfg, tol):
    pencil = _need_pencil(cfg)
    M = _pencil_depth(cfg, pencil)
    table = moment_table(pencil, M)
    body = {"M": M, "s": [[fmt_rat(x) for x in row] for row in table.s], "hankel": [fmt_rat(x) for x in table.delta]}
    return body, True, None


def cmd_detrep(cfg, tol):
    pencil = _need_pencil(cfg)
    depth = _pencil_depth(cfg, pencil)
    P = associated_polynomials(pencil, depth)
    table = moment_table(pencil, depth, P)
    rows = [{"n": n, "holds": detrep_check(table, P, n)} for n in range(1, depth + 1)]
    return {"rows": rows}, all(r["holds"] for r in rows), None


def cmd_perturb(cfg, tol):
    prm, measure = parse_perturbation(cfg)
    depth = _int(cfg, "depth", default=8, minimum=1)
    if measure.size < depth + 1:
        raise ConfigError("depth", f"the measure has only {measure.size} points")
    rec = monic_recurrence(measure, depth + 1)
    pis = monic_polynomials(rec, depth + 1)
    P = p_from_r(prm, pis)
    roundtrip = r_from_p(prm, P) == pis
    at_d = all(pn(prm.d) == rn(0) for pn, rn in zip(P, pis))
    rec_ok = all(not recurrence3_residual(prm, P, rec.beta, rec.alpha, n, monic=True) for n in range(depth))
    gram = orthonormality_check(prm, measure, P, depth, monic=True)
    off_ok = all(gram[i][k] == 0 for i in range(depth + 1) for k in range(depth + 1) if i != k)
    R = orthonormal_polynomials(measure, depth + 1)
    defect = float(np.max(np.abs(orthonormality_check(prm, measure, p_from_r(prm, R), depth, quadrature=True))))
    fp = build_pencil_from_perturbation(prm, measure, depth + 1)
    assoc = associated_polynomials(fp, depth)
    drift = max(
        max((abs(x) for x in (q.to_float() - r).coeffs), default=0.0) for q, r in zip(assoc, p_from_r(prm, R))
    )
    body = {
        "c": fmt_rat(prm.c),
        "d": fmt_rat(prm.d),
        "monic_family": [{"n": n, "coeffs": fmt_poly(q)} for n, q in enumerate(P[: depth + 1])],
        "checks": {
            "roundtrip": roundtrip,
            "p_n(d) == r_n(0)": at_d,
            "recurrence_residual_zero": rec_ok,
            "gram_offdiagonal_zero": off_ok,
            "gram_diagonal": [fmt_rat(gram[i][i]) for i in range(depth + 1)],
            "float_orthonormality_defect": fmt_float(defect, tol),
            "float_pencil_drift": fmt_float(drift, tol),
        },
    }
    ok = roundtrip and at_d and rec_ok and off_ok and defect <= tol and drift <= max(tol, 1e-9)
    return body, ok, P[: depth + 1]


def cmd_ode_check(cfg, tol):
    sec = cfg.get("ode")
    if not isinstance(sec, dict):
        raise ConfigError("ode", "expected an object with a, b, n")
    a = _rat(_require(sec, "a", "ode"), "ode.a")
    b = _rat(_require(sec, "b", "ode"), "ode.b")
    n = sec.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigError("ode.n", "expected an integer >= 1")
    try:
        co = perturbed_jacobi_ode_coeffs(a, b)
    except PencilLabError as e:
        raise ConfigError("ode.a", str(e)) from None
    lam, mu = solve_polynomial_eigen(co, n)
    pn = perturbed_jacobi(a, b, n)
    residual = verify_ode(co, lam, pn)
    proportional = Poly(tuple(mu)) == pn.monic()
    expected = n * (n + a + b + 1)
    body = {
        "a": fmt_rat(a),
        "b": fmt_rat(b),
        "n": n,
        "lambda": fmt_rat(lam),
        "lambda_expected": fmt_rat(expected),
        "residual": fmt_poly(residual),
        "mu": [fmt_rat(x) for x in mu],
        "mu_proportional_to_p_n": proportional,
    }
    return body, bool(lam == expected and not residual and proportional), None


def cmd_band_check(cfg, tol, expect_banded=False):
    sec = cfg.get("band", {})
    if not isinstance(sec, dict):
        raise ConfigError("band", "expected an object with N and M")
    try:
        N = _int(sec, "N", default=1, minimum=1)
        M = _int(sec, "M", default=max(2 * N + 2, 6), minimum=N)
    except ConfigError as e:
        raise ConfigError(f"band.{e.field}", str(e).split(": ", 1)[1]) from None
    body = {"N": N, "M": M}
    if "perturbation" in cfg:
        prm, measure = parse_perturbation(cfg)
        rep = symmetry_defect(prm, measure, N, M)
        pis = monic_polynomials(monic_recurrence(measure, M + 1), M)
        P = p_from_r(prm, pis)
        table = perturbation_moment_table(prm, measure, M)
        body["symmetry"] = {
            "method": rep.method,
            "max_defect": fmt_rat(rep.max_defect),
            "symmetric_on_grid": rep.symmetric_on_grid,
            "witness": [fmt_poly(w) for w in rep.witness] if rep.witness else None,
        }
        symmetric = rep.symmetric_on_grid
    else:
        pencil = _need_pencil(cfg)
        if M > pencil.max_depth:
            raise ConfigError("band.M", f"M = {M} exceeds the available depth {pencil.max_depth}")
        P = associated_polynomials(pencil, M)
        table = moment_table(pencil, M, P)
        symmetric = None
    fit = band_fit(P, table, N)
    body["banded"] = fit.banded
    body["offenders"] = [{"k": k, "i": i, "xi": fmt_rat(fit.xi[k][i])} for k, i in fit.offenders]
    if fit.banded:
        body["recurrence"] = [[fmt_rat(x) for x in row] for row in fit.recurrence]
    # a zero defect on the grid forces the band (one direction of the equivalence)
    consistent = not (symmetric and not fit.banded)
    body["consistent"] = consistent
    ok = consistent and (fit.banded or not expect_banded)
    return body, ok, None


HANDLERS = {
    "generate": cmd_generate,
    "residuals": cmd_residuals,
    "cd-check": cmd_cd_check,
    "spectrum": cmd_spectrum,
    "moments": cmd_moments,
    "detrep": cmd_detrep,
    "perturb": cmd_perturb,
    "ode-check": cmd_ode_check,
    "band-check": cmd_band_check,
}


def run(command, cfg, tol=None, expect_banded=False):
    """Execute one command; returns ``(document, exit_status, csv_rows)``."""
    if command not in HANDLERS:
        raise ConfigError("command", f"unknown command {command!r}")
    if not isinstance(cfg, dict):
        raise ConfigError("<root>", "the config must be a JSON object")
    if tol is None:
        tol = DEFAULT_TOL.get(command, RESIDUAL_TOL)
    if not tol > 0:
        raise ConfigError("tol", f"must be positive, got {tol}")
    kwargs = {"expect_banded": expect_banded} if command == "band-check" else {}
    try:
        body, ok, rows = HANDLERS[command](cfg, tol, **kwargs)
    except PencilLabError as e:
        # a failed precondition inside the computation is a failed check, not a bad config
        body, ok, rows = {"error": str(e), "code": e.code}, False, None
    digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()
    header = {"tool": "pencil-lab", "version": __version__, "command": command, "config_sha256": digest, "tol": tol}
    doc = {"header": header, "body": body, "status": "pass" if ok else "fail"}
    return doc, 0 if ok else 1, rows


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for n, p in enumerate(rows):
        writer.writerow([n, *fmt_poly(p)])
    return buf.getvalue()


def build_parser():
    parser = argparse.ArgumentParser(prog="pencil-lab", description="Exact checks for Jacobi-type pencils.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="path to a JSON config")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--tol", type=float, help="float tolerance override")
    parser.add_argument("--expect-banded", action="store_true", help="band-check fails unless the fit is banded")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except OSError as e:
            raise ConfigError("--config", str(e)) from None
        except json.JSONDecodeError as e:
            raise ConfigError("<root>", f"invalid JSON: {e}") from None
        doc, status, rows = run(args.command, cfg, args.tol, args.expect_banded)
        if args.format == "csv":
            if rows is None:
                raise ConfigError("--format", "csv output is only available for generate and perturb")
            text = to_csv(rows)
        else:
            text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
