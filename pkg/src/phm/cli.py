"""Command-line front end.

Subcommands: analyze, metric, canonical, enumerate, oracle, generate,
verify. Every command writes exactly one JSON document to stdout (with a
"schema": 1 version field) and human diagnostics to stderr only, and
exits with a documented code:

    0  success (all gates passed)
    1  malformed input: unparsable file, usage error, size mismatch
    2  classification failure (including inadmissible characteristic polynomial)
    3  degenerate spectrum
    4  numerical failure (ill-conditioned diagonalizer, solver breakdown)
    5  bad parameters (wrong counts, zero or near-zero values, ...)
    6  enumeration or dense-solve size cap exceeded
    7  generation rejection budget exhausted
    8  verification gate failed (residual, hermiticity, kernel match)

Matrix files are JSON: {"schema": 1, "n": N, "entries": [[[re, im], ...], ...]}
with N rows of N two-element [re, im] cells. Complex command-line
literals use a+bi form ("1.5-2e-3i"); a bare real is accepted, forms
with a coefficient-less i are rejected as ambiguous. The env var
PHM_DEFAULT_TOL overrides the 1e-8 default classification tolerances.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from .errors import (
    ClassificationError,
    DegenerateSpectrumError,
    DimensionError,
    EnumerationCapError,
    FamilyMismatchError,
    FileFormatError,
    GenerationError,
    IllConditionedError,
    NumericError,
    ParameterError,
    PhmError,
)
from .generators import GeneratorConfig, generate_via_observable, generate_via_spectrum
from .matrices import hermiticity_defect, hermitize
from .metrics import (
    TWO_PI,
    CanonicalClass,
    MetricParameters,
    build_M,
    canonical_metric,
    enumerate_classes,
    inertia_of_matrix,
    intertwining_residual,
)
from .oracle import ORACLE_DIM_CAP, family_vs_kernel, solution_space
from .spectral import SpectralData, Tolerances, check_ph_admissible, decompose

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CLASSIFY = 2
EXIT_DEGENERATE = 3
EXIT_NUMERIC = 4
EXIT_PARAMS = 5
EXIT_CAP = 6
EXIT_GENERATE = 7
EXIT_GATE = 8

RESIDUAL_GATE = 1e-9
HERMITICITY_GATE = 1e-10
MATCH_DEFECT_GATE = 1e-8
MIN_PARAM_MAGNITUDE = 1e-6
ENUMERATE_CLI_CAP = 20

_EXIT_FOR_ERROR: list[tuple[type, int]] = [
    (FileFormatError, EXIT_INPUT),
    (DimensionError, EXIT_INPUT),
    (ClassificationError, EXIT_CLASSIFY),
    (DegenerateSpectrumError, EXIT_DEGENERATE),
    (IllConditionedError, EXIT_NUMERIC),
    (NumericError, EXIT_NUMERIC),
    (ParameterError, EXIT_PARAMS),  # includes NonHermitianError, NotSqhError
    (EnumerationCapError, EXIT_CAP),
    (GenerationError, EXIT_GENERATE),
    (FamilyMismatchError, EXIT_GATE),
]


def _exit_code_for(exc: PhmError) -> int:
    for cls, code in _EXIT_FOR_ERROR:
        if isinstance(exc, cls):
            return code
    return EXIT_INPUT


def _emit(doc: dict) -> None:
    # One top-level key per line, nested values compact; plain json.dumps
    # indentation would spread every [re, im] cell over four lines.
    parts = []
    for key, value in doc.items():
        if isinstance(value, dict) and "entries" in value:
            rows = ",\n   ".join(json.dumps(r) for r in value["entries"])
            text = '{"schema": 1, "n": %d, "entries": [\n   %s\n  ]}' % (value["n"], rows)
        else:
            text = json.dumps(value)
        parts.append(f' "{key}": {text}')
    print("{\n" + ",\n".join(parts) + "\n}")


def _emit_error(exc: Exception, extra: dict | None = None) -> None:
    doc = {"schema": 1, "error": {"type": type(exc).__name__, "message": str(exc)}}
    if extra:
        doc.update(extra)
    _emit(doc)
    print(f"error: {exc}", file=sys.stderr)


def _complex_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=np.complex128)]


def _matrix_doc(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    return {
        "schema": 1,
        "n": int(M.shape[0]),
        "entries": [_complex_pairs(row) for row in M],
    }


def _write_matrix_file(path: str, M: np.ndarray) -> None:
    doc = _matrix_doc(M)
    rows = ",\n   ".join(json.dumps(row) for row in doc["entries"])
    text = '{\n "schema": 1,\n "n": %d,\n "entries": [\n   %s\n ]\n}\n' % (doc["n"], rows)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileFormatError(f"cannot write {path}: {exc}") from exc


def _cell_to_complex(cell, row: int, col: int, path: str) -> complex:
    where = f"{path}: row {row + 1}, column {col + 1}"
    if not isinstance(cell, (list, tuple)) or len(cell) != 2:
        raise FileFormatError(f"{where}: entry must be a two-element [re, im] array")
    re_part, im_part = cell
    if isinstance(re_part, bool) or isinstance(im_part, bool) or not all(
        isinstance(x, (int, float)) for x in (re_part, im_part)
    ):
        raise FileFormatError(f"{where}: re/im must be numbers")
    z = complex(float(re_part), float(im_part))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise FileFormatError(f"{where}: entries must be finite")
    return z


def read_matrix_file(path: str) -> np.ndarray:
    """Parse a MatrixFile JSON document into a complex square array."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    if doc.get("schema", 1) != 1:
        raise FileFormatError(f"{path}: unsupported schema {doc.get('schema')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FileFormatError(f"{path}: field 'n' must be a positive integer")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != n:
        raise FileFormatError(f"{path}: 'entries' must be an array of {n} rows")
    M = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise FileFormatError(f"{path}: row {i + 1} must have exactly {n} entries")
        for j, cell in enumerate(row):
            M[i, j] = _cell_to_complex(cell, i, j, path)
    return M


_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_FLOAT}$")
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})([+-]{_FLOAT})i$")


def parse_complex_literal(token: str) -> complex:
    """Parse 'a+bi' (or a bare real) with optional signs and exponents.

    Coefficient-less forms like 'i' or '1+i' are rejected rather than
    guessed at, as is everything else that does not match exactly.
    """
    tok = token.strip()
    if _REAL_RE.match(tok):
        return complex(float(tok), 0.0)
    m = _COMPLEX_RE.match(tok)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    raise ParameterError(
        f"cannot parse complex literal {token!r}; write it as a+bi with "
        "explicit coefficients, e.g. '1+0i', '-2.5e-3+1i'"
    )


def parse_real_literal(token: str) -> float:
    tok = token.strip()
    if not _REAL_RE.match(tok):
        raise ParameterError(f"cannot parse real literal {token!r}")
    return float(tok)


def _split_csv(raw: str | None) -> list[str]:
    if raw is None or raw.strip() == "":
        return []
    return [tok for tok in raw.split(",")]


def _default_tolerance() -> float:
    raw = os.environ.get("PHM_DEFAULT_TOL")
    if raw is None:
        return 1e-8
    try:
        tol = float(raw)
    except ValueError:
        raise ParameterError(f"PHM_DEFAULT_TOL is not a number: {raw!r}") from None
    if not (math.isfinite(tol) and tol > 0.0):
        raise ParameterError(f"PHM_DEFAULT_TOL must be a positive number, got {raw!r}")
    return tol


def _tolerances(args: argparse.Namespace) -> Tolerances:
    base = _default_tolerance()
    pick = lambda name: getattr(args, name, None)
    return Tolerances(
        eps_real=pick("eps_real") if pick("eps_real") is not None else base,
        eps_pair=pick("eps_pair") if pick("eps_pair") is not None else base,
        gap_tol=pick("gap_tol") if pick("gap_tol") is not None else base,
    )


def _decompose_file(path: str, args: argparse.Namespace) -> tuple[np.ndarray, SpectralData]:
    """Shared front half: read, admissibility-check, decompose."""
    H = read_matrix_file(path)
    tol = _tolerances(args)
    adm = check_ph_admissible(H, tol=tol.eps_real)
    if not adm.is_ph:
        raise ClassificationError(
            "characteristic polynomial has a relative imaginary coefficient of "
            f"{adm.max_imag_coeff:.3e}; matrix is not pseudo-hermitian admissible"
        )
    return H, decompose(H, tol=tol)


def _check_magnitudes(values, what: str) -> None:
    small = [abs(v) for v in values if abs(v) < MIN_PARAM_MAGNITUDE]
    if small:
        raise ParameterError(
            f"every {what} must have magnitude >= {MIN_PARAM_MAGNITUDE:g}; "
            f"smallest given is {min(small):.3e}"
        )


def cmd_analyze(args: argparse.Namespace) -> int:
    H = read_matrix_file(args.path)
    tol = _tolerances(args)
    adm = check_ph_admissible(H, tol=tol.eps_real)
    if not adm.is_ph:
        exc = ClassificationError(
            "characteristic polynomial has a relative imaginary coefficient of "
            f"{adm.max_imag_coeff:.3e}; matrix is not pseudo-hermitian admissible"
        )
        _emit_error(
            exc,
            extra={"is_ph_admissible": False, "max_imag_coeff": adm.max_imag_coeff},
        )
        return EXIT_CLASSIFY
    sd = decompose(H, tol=tol)
    _emit(
        {
            "schema": 1,
            "n": sd.n,
            "r": sd.r,
            "p": sd.p,
            "eigenvalues": _complex_pairs(sd.lam),
            "min_gap": None if math.isinf(sd.min_gap) else sd.min_gap,
            "cond_S": sd.cond_S,
            "is_ph_admissible": True,
            "inertia_floor": [sd.p, sd.p],
            "class_count": 2 ** (sd.r + sd.p - 1),
        }
    )
    return EXIT_OK


def _emit_metric_result(M: np.ndarray, inertia, residual: float) -> int:
    _emit(
        {
            "schema": 1,
            "M": _matrix_doc(M),
            "inertia": [int(x) for x in inertia],
            "residual": float(residual),
        }
    )
    if residual > RESIDUAL_GATE:
        print(
            f"warning: residual {residual:.3e} exceeds gate {RESIDUAL_GATE:g}",
            file=sys.stderr,
        )
        return EXIT_GATE
    return EXIT_OK


def cmd_metric(args: argparse.Namespace) -> int:
    _, sd = _decompose_file(args.path, args)
    mu = [parse_real_literal(t) for t in _split_csv(args.mu)]
    tau = [parse_complex_literal(t) for t in _split_csv(args.tau)]
    if len(mu) != sd.r or len(tau) != sd.p:
        raise ParameterError(
            f"expected {sd.r} --mu value(s) and {sd.p} --tau value(s) for this "
            f"spectrum, got {len(mu)} and {len(tau)}"
        )
    _check_magnitudes(mu, "--mu entry")
    _check_magnitudes(tau, "--tau entry")
    result = build_M(sd, MetricParameters(mu=np.array(mu), tau=np.array(tau)))
    return _emit_metric_result(result.M, result.inertia, result.residual)


def _parse_signs(raw: str | None) -> tuple[int, ...]:
    out = []
    for tok in _split_csv(raw):
        t = tok.strip()
        if t == "+":
            out.append(1)
        elif t == "-":
            out.append(-1)
        else:
            raise ParameterError(f"signs must be '+' or '-', got {tok!r}")
    return tuple(out)


def _parse_bits(raw: str | None) -> tuple[int, ...]:
    out = []
    for tok in _split_csv(raw):
        t = tok.strip()
        if t not in ("0", "1"):
            raise ParameterError(f"orientation bits must be 0 or 1, got {tok!r}")
        out.append(int(t))
    return tuple(out)


def _reduce_angle(t: float) -> float:
    red = t % TWO_PI
    return 0.0 if red >= TWO_PI else red  # t slightly below 0 can round onto 2*pi


def cmd_canonical(args: argparse.Namespace) -> int:
    _, sd = _decompose_file(args.path, args)
    signs = _parse_signs(args.signs)
    bits = _parse_bits(args.n)
    theta = tuple(_reduce_angle(parse_real_literal(t)) for t in _split_csv(args.theta))
    if len(signs) != sd.r or len(bits) != sd.p or len(theta) != sd.p:
        raise ParameterError(
            f"expected {sd.r} sign(s), {sd.p} orientation bit(s) and {sd.p} "
            f"phase(s) for this spectrum, got {len(signs)}, {len(bits)}, {len(theta)}"
        )
    result = canonical_metric(sd, CanonicalClass(signs=signs, n=bits, theta=theta))
    return _emit_metric_result(result.M, result.inertia, result.residual)


def cmd_enumerate(args: argparse.Namespace) -> int:
    _, sd = _decompose_file(args.path, args)
    if sd.r + sd.p > ENUMERATE_CLI_CAP:
        raise EnumerationCapError(
            f"refusing to list 2**{sd.r + sd.p} classes (cap r + p <= {ENUMERATE_CLI_CAP})"
        )
    classes = enumerate_classes(sd.r, sd.p, mod_global=not args.no_mod_global)
    rows = []
    for signs, bits in classes:
        pos = sum(1 for s in signs if s > 0)
        rows.append(
            {
                "signs": list(signs),
                "n": list(bits),
                "inertia": [sd.p + pos, sd.p + (sd.r - pos), 0],
            }
        )
    # one class per line, by hand; json.dumps alone cannot mix indent styles
    body = ",\n".join("  " + json.dumps(row) for row in rows)
    classes_block = "[\n%s\n ]" % body if rows else "[]"
    print(
        '{\n "schema": 1,\n "count": %d,\n "classes": %s\n}' % (len(rows), classes_block)
    )
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    H = read_matrix_file(args.path)
    if H.shape[0] > ORACLE_DIM_CAP:
        raise EnumerationCapError(
            f"dense solve is capped at n <= {ORACLE_DIM_CAP}, got n = {H.shape[0]}"
        )
    try:
        _, sd = _decompose_file(args.path, args)
    except DegenerateSpectrumError as exc:
        # Still report the kernel: its dimension exceeding n is exactly why
        # degenerate spectra are outside the family's reach.
        report = solution_space(H)
        _emit_error(
            exc,
            extra={
                "kernel_dimension": report.dimension,
                "family_complete": False,
            },
        )
        return EXIT_DEGENERATE
    report = solution_space(H)
    doc = {
        "schema": 1,
        "n": sd.n,
        "kernel_dimension": report.dimension,
        "expected_dimension": sd.n,
        "singular_value_tail": [float(s) for s in report.singular_values[: 2 * sd.n]],
        "gap_ratio": None if math.isinf(report.gap_ratio) else report.gap_ratio,
        "warning": "rank decision is ambiguous (gap ratio < 10)"
        if report.rank_ambiguous
        else None,
    }
    try:
        match = family_vs_kernel(sd, report)
    except FamilyMismatchError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(doc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    doc["max_projection_defect"] = match.max_projection_defect
    doc["max_recovery_defect"] = match.max_recovery_defect
    doc["params_recovered"] = match.params_recovered
    _emit(doc)
    defects_ok = (
        match.max_projection_defect <= MATCH_DEFECT_GATE
        and match.max_recovery_defect <= MATCH_DEFECT_GATE
    )
    return EXIT_OK if report.dimension == sd.n and defects_ok else EXIT_GATE


def cmd_generate(args: argparse.Namespace) -> int:
    files: dict[str, str] = {}
    if args.mode == "spectrum":
        if args.n is None or args.r is None or args.p is None:
            raise ParameterError("--mode spectrum requires --n, --r and --p")
        cfg = GeneratorConfig(
            n=args.n, r=args.r, p=args.p, seed=args.seed, cond_max=args.cond_max
        )
        inst = generate_via_spectrum(cfg)
        H, M = inst.H, inst.certificate.M
        residual = inst.certificate_residual
        extra = {"n": cfg.n, "r": cfg.r, "p": cfg.p}
    else:
        if args.metric is None:
            raise ParameterError("--mode observable requires --metric METRIC_FILE")
        M_in = read_matrix_file(args.metric)
        Phi, A = generate_via_observable(M_in, seed=args.seed)
        H, M = Phi, M_in
        residual = intertwining_residual(H, M, check_hermitian=False)
        files["A"] = args.out + "_A.json"
        _write_matrix_file(files["A"], A)
        extra = {"n": int(M_in.shape[0])}
    files["H"] = args.out + "_H.json"
    files["M"] = args.out + "_M.json"
    _write_matrix_file(files["H"], H)
    _write_matrix_file(files["M"], M)
    doc = {
        "schema": 1,
        "mode": args.mode,
        "seed": args.seed,
        "files": {k: files[k] for k in sorted(files)},
        "residual": float(residual),
    }
    doc.update(extra)
    _emit(doc)
    return EXIT_OK if residual <= RESIDUAL_GATE else EXIT_GATE


def cmd_verify(args: argparse.Namespace) -> int:
    H = read_matrix_file(args.path_h)
    M = read_matrix_file(args.path_m)
    if H.shape != M.shape:
        raise DimensionError(
            f"size mismatch: H is {H.shape[0]}x{H.shape[0]} but M is "
            f"{M.shape[0]}x{M.shape[0]}"
        )
    defect = hermiticity_defect(M)
    residual = intertwining_residual(H, M, check_hermitian=False)
    inertia = inertia_of_matrix(hermitize(M))
    _emit(
        {
            "schema": 1,
            "residual": float(residual),
            "hermiticity_defect": float(defect),
            "inertia": [int(x) for x in inertia],
        }
    )
    ok = defect <= HERMITICITY_GATE and residual <= RESIDUAL_GATE
    if not ok:
        print(
            f"verification failed: residual {residual:.3e} "
            f"(gate {RESIDUAL_GATE:g}), hermiticity defect {defect:.3e} "
            f"(gate {HERMITICITY_GATE:g})",
            file=sys.stderr,
        )
    return EXIT_OK if ok else EXIT_GATE


class _Parser(argparse.ArgumentParser):
    """Argparse variant whose usage failures keep the JSON-on-stdout contract."""

    def error(self, message: str) -> None:
        print(
            json.dumps(
                {"schema": 1, "error": {"type": "UsageError", "message": message}}
            )
        )
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _add_tolerance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--eps-real", type=float, default=None, help="real-eigenvalue tolerance (relative)")
    sub.add_argument("--eps-pair", type=float, default=None, help="conjugate-pair matching tolerance (relative)")
    sub.add_argument("--gap-tol", type=float, default=None, help="degeneracy gap tolerance (relative)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="phm",
        description="Construct, canonicalize, enumerate and verify hermitian "
        "metrics M with H^dagger M = M H for a given matrix H.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify the spectrum and report family shape")
    p.add_argument("path", help="matrix JSON file")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("metric", help="build the metric for given family parameters")
    p.add_argument("path", help="matrix JSON file")
    p.add_argument("--mu", default=None, help="comma-separated real parameters, one per real eigenvalue")
    p.add_argument("--tau", default=None, help="comma-separated a+bi parameters, one per conjugate pair")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("canonical", help="build the canonical (unitary-gauge) metric of a class")
    p.add_argument("path", help="matrix JSON file")
    p.add_argument("--signs", default=None, help="comma-separated +/- per real eigenvalue")
    p.add_argument("--n", default=None, help="comma-separated orientation bits (0/1) per pair")
    p.add_argument("--theta", default=None, help="comma-separated phases in radians per pair")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("enumerate", help="list the discrete metric classes with inertias")
    p.add_argument("path", help="matrix JSON file")
    p.add_argument(
        "--no-mod-global",
        action="store_true",
        help="list all 2**(r+p) sign assignments instead of one per global-flip orbit",
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle", help="solve the intertwining equation by brute force and compare")
    p.add_argument("path", help="matrix JSON file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="generate a random admissible instance with a certificate metric")
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument("--r", type=int, default=None, help="number of real eigenvalues")
    p.add_argument("--p", type=int, default=None, help="number of conjugate pairs")
    p.add_argument("--seed", type=int, required=True, help="RNG seed (counter-based; same seed, same files)")
    p.add_argument("--cond-max", type=float, default=1e6, help="condition-number cap for the similarity")
    p.add_argument("--mode", choices=("spectrum", "observable"), default="spectrum")
    p.add_argument("--metric", default=None, help="metric JSON file (observable mode input)")
    p.add_argument("--out", required=True, help="output path prefix; writes PREFIX_H.json etc.")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a candidate metric against a matrix")
    p.add_argument("path_h", help="matrix JSON file (H)")
    p.add_argument("path_m", help="candidate metric JSON file (M)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PhmError as exc:
        _emit_error(exc)
        return _exit_code_for(exc)


if __name__ == "__main__":
    raise SystemExit(main())
