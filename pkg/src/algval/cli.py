"""Command-line front end.

Reads a problem file holding either a prime-ideal presentation
(variables plus generator strings) or an integer exponent matrix,
computes the requested valuated-matroid objects, and writes a text or
JSON document to standard output.  Matrix inputs run the determinant
route; ideal inputs run the elimination route; cross-check runs both on
the same matrix and compares.

Exit codes: 0 success, 1 input error, 2 verification failure or
cross-check mismatch, 3 internal inconsistency (a non-principal
elimination ideal or inconsistent circuit data).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

from algval.algmat import EliminationOracle, bases, circuits, hyperplanes
from algval.ffpoly import INF, is_prime
from algval.groebner import Ideal, NotPrincipalError
from algval.toric import (
    IntMatrix,
    integer_kernel_circuits,
    linear_valuated_matroid,
    toric_ideal,
    toric_valuated_circuit,
)
from algval.valmat import (
    InconsistentValuationError,
    Valuation,
    check_circuit_axioms,
    check_exchange_consistency,
    check_orthogonality,
    cocircuits,
    dual,
    minor,
    valuated_circuits,
    valuation_from_circuits,
)
from algval.flock import check_flock_axioms, flock_slice, g


class CliInputError(Exception):
    """Bad command line or problem file; exits with code 1."""


@dataclass
class ProblemInput:
    kind: str
    p: int
    variables: tuple = ()
    generators: tuple = ()
    matrix: IntMatrix = None

    @property
    def n(self):
        return self.matrix.n if self.kind == "matrix" else len(self.variables)


def load_problem(path) -> ProblemInput:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise CliInputError("problem file must hold a JSON object")
    kind = raw.get("kind")
    if kind not in ("ideal", "matrix"):
        raise CliInputError('problem "kind" must be "ideal" or "matrix"')
    p = raw.get("p")
    if not isinstance(p, int) or not is_prime(p):
        raise CliInputError('"p" must be a prime integer')
    if kind == "ideal":
        variables = raw.get("vars")
        generators = raw.get("generators")
        if (not isinstance(variables, list) or not variables
                or not all(isinstance(v, str) for v in variables)):
            raise CliInputError('"vars" must be a nonempty list of names')
        if len(set(variables)) != len(variables):
            raise CliInputError("variable names must be unique")
        if not isinstance(generators, list) or not all(
            isinstance(t, str) for t in generators
        ):
            raise CliInputError('"generators" must be a list of strings')
        return ProblemInput("ideal", p, tuple(variables), tuple(generators))
    rows, cols = raw.get("rows"), raw.get("cols")
    entries = raw.get("entries")
    if not isinstance(rows, int) or not isinstance(cols, int):
        raise CliInputError('"rows" and "cols" must be integers')
    if (not isinstance(entries, list) or len(entries) != rows
            or any(not isinstance(r, list) or len(r) != cols for r in entries)
            or any(not isinstance(e, int) for r in entries for e in r)):
        raise CliInputError('"entries" must be a rows x cols integer array')
    return ProblemInput("matrix", p, matrix=IntMatrix(tuple(map(tuple, entries))))


def problem_fingerprint(problem: ProblemInput) -> str:
    if problem.kind == "ideal":
        payload = {
            "kind": "ideal",
            "p": problem.p,
            "vars": list(problem.variables),
            "generators": list(problem.generators),
        }
    else:
        payload = {
            "kind": "matrix",
            "p": problem.p,
            "entries": [list(r) for r in problem.matrix.rows],
        }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Pipeline:
    """Everything the subcommands consume, computed on one route."""

    problem: ProblemInput
    fingerprint: str
    valuation: Valuation
    vcircuits: list


def _ideal_route(ideal, p, seed, cache_dir, fingerprint):
    oracle = EliminationOracle(
        ideal,
        cache_dir=cache_dir,
        fingerprint=fingerprint[:16] if cache_dir else None,
    )
    records = circuits(ideal, oracle=oracle)
    matroid = bases(ideal, oracle=oracle)
    vcircs = valuated_circuits(records, p)
    valuation = valuation_from_circuits(matroid, vcircs, seed=seed)
    return valuation, vcircs


def build_pipeline(problem, seed="lex", cache_dir=None) -> Pipeline:
    fingerprint = problem_fingerprint(problem)
    if problem.kind == "matrix":
        valuation = linear_valuated_matroid(problem.matrix, problem.p)
        vcircs = sorted(
            (
                toric_valuated_circuit(c, problem.p)
                for c in integer_kernel_circuits(problem.matrix)
            ),
            key=lambda c: c.sort_key(),
        )
    else:
        try:
            ideal = Ideal.from_strings(
                problem.p, problem.variables, problem.generators
            )
        except ValueError as exc:
            raise CliInputError(f"bad generator: {exc}")
        valuation, vcircs = _ideal_route(
            ideal, problem.p, seed, cache_dir, fingerprint
        )
    return Pipeline(problem, fingerprint, valuation, vcircs)


# -- documents ---------------------------------------------------------------


def _entry(e):
    return "inf" if e == INF else e


def _vector_doc(vec):
    return {"entries": [_entry(e) for e in vec.entries]}


def _labelled(valuation, basis):
    return sorted(valuation.labels[i] + 1 for i in basis)


def _bases_doc(valuation):
    return [
        {"set": _labelled(valuation, b), "value": v} for b, v in valuation.items()
    ]


def valuation_document(pipe: Pipeline) -> dict:
    valuation = pipe.valuation
    return {
        "input_sha256": pipe.fingerprint,
        "n": valuation.n,
        "rank": valuation.matroid.rank,
        "p": pipe.problem.p,
        "bases": _bases_doc(valuation),
        "circuits": [_vector_doc(c) for c in pipe.vcircuits],
        "cocircuits": [_vector_doc(c) for c in cocircuits(valuation)],
    }


def minor_document(pipe: Pipeline, delete, contract) -> dict:
    from algval.valmat import valuated_circuit_family

    sub = minor(pipe.valuation, delete=delete, contract=contract)
    subcircs = valuated_circuit_family(sub)
    return {
        "input_sha256": pipe.fingerprint,
        "n": sub.n,
        "rank": sub.matroid.rank,
        "p": pipe.problem.p,
        "elements": [e + 1 for e in sub.labels],
        "bases": _bases_doc(sub),
        "circuits": [_vector_doc(c) for c in subcircs],
        "cocircuits": [_vector_doc(c) for c in cocircuits(sub)],
    }


def flock_document(pipe: Pipeline, alpha) -> dict:
    s = flock_slice(pipe.valuation, alpha)
    return {
        "input_sha256": pipe.fingerprint,
        "n": pipe.valuation.n,
        "p": pipe.problem.p,
        "alpha": list(alpha),
        "g": s.g_value,
        "bases": [sorted(i + 1 for i in b) for b in s.matroid.bases],
    }


def verify_document(pipe: Pipeline, box_radius=None) -> dict:
    valuation = pipe.valuation
    suites = []

    axioms = check_circuit_axioms(pipe.vcircuits, valuation.matroid)
    suites.append(("circuit-axioms", axioms.checked, axioms.violations))

    exchange = check_exchange_consistency(valuation, pipe.vcircuits)
    suites.append(("exchange-identity", exchange.checked, exchange.violations))

    duality_violations = []
    checked = 1
    if dual(dual(valuation)) != valuation:
        duality_violations.append("double dual differs from the valuation")
    cocircs = cocircuits(valuation)
    if valuation.matroid.rank >= 1:
        checked += 1
        ground = frozenset(range(valuation.n))
        expected = {ground - h for h in hyperplanes(valuation.matroid)}
        got = {c.support for c in cocircs}
        if got != expected:
            duality_violations.append(
                "cocircuit supports differ from hyperplane complements"
            )
    suites.append(("duality", checked, duality_violations))

    orth = check_orthogonality(pipe.vcircuits, cocircs)
    suites.append(("orthogonality", orth.checked, orth.violations))

    flock = check_flock_axioms(valuation, radius=box_radius)
    suites.append(("flock-axioms", flock.checked, flock.violations))

    return {
        "input_sha256": pipe.fingerprint,
        "ok": all(not v for _, _, v in suites),
        "suites": [
            {"name": name, "checked": checked, "violations": violations}
            for name, checked, violations in suites
        ],
    }


def cross_check(problem: ProblemInput, cache_dir=None) -> dict:
    """Run the determinant route and the elimination route on the same
    matrix and compare valuations and canonical circuit families."""
    if problem.kind != "matrix":
        raise CliInputError("cross-check needs a matrix input")
    fingerprint = problem_fingerprint(problem)
    p = problem.p
    direct = linear_valuated_matroid(problem.matrix, p)
    direct_circuits = sorted(
        (
            toric_valuated_circuit(c, p)
            for c in integer_kernel_circuits(problem.matrix)
        ),
        key=lambda c: c.sort_key(),
    )
    ideal = toric_ideal(problem.matrix, p)
    derived, derived_circuits = _ideal_route(
        ideal, p, "lex", cache_dir, fingerprint
    )
    details = []
    valuations_match = True
    if set(direct.values) != set(derived.values):
        valuations_match = False
        details.append("basis families differ between the routes")
    else:
        for b in direct.matroid.bases:
            lhs, rhs = direct.values[b], derived.values[b]
            if lhs != rhs:
                valuations_match = False
                details.append(
                    f"value of basis {sorted(i + 1 for i in b)}: "
                    f"determinant route {lhs}, elimination route {rhs}"
                )
    circuits_match = direct_circuits == derived_circuits
    if not circuits_match:
        details.append("canonical circuit families differ between the routes")
    return {
        "input_sha256": fingerprint,
        "n": problem.matrix.n,
        "p": p,
        "valuations_match": valuations_match,
        "circuits_match": circuits_match,
        "agree": valuations_match and circuits_match,
        "details": details,
    }


# -- rendering ---------------------------------------------------------------


def _infinity_symbol(stream):
    try:
        "∞".encode(stream.encoding or "ascii")
        return "∞"
    except (UnicodeEncodeError, LookupError):
        return "inf"


def _render_vector(entries, inf_symbol):
    return "(" + ", ".join(
        inf_symbol if e == "inf" else str(e) for e in entries
    ) + ")"


def render_text(doc: dict, stream) -> str:
    inf_symbol = _infinity_symbol(stream)
    lines = [f"input {doc['input_sha256'][:16]}"]
    scalars = [k for k in ("n", "rank", "p", "g") if k in doc]
    if scalars:
        lines.append("  ".join(f"{k} {doc[k]}" for k in scalars))
    if "alpha" in doc:
        lines.append("alpha (" + ", ".join(map(str, doc["alpha"])) + ")")
    if "elements" in doc:
        lines.append("elements {" + ",".join(map(str, doc["elements"])) + "}")
    if "agree" in doc:
        lines.append(f"agree {str(doc['agree']).lower()}")
        for d in doc["details"]:
            lines.append(f"  {d}")
    if "bases" in doc:
        lines.append(f"bases ({len(doc['bases'])}):")
        for item in doc["bases"]:
            if isinstance(item, dict):
                label = "{" + ",".join(map(str, item["set"])) + "}"
                lines.append(f"  {label}  {item['value']}")
            else:
                lines.append("  {" + ",".join(map(str, item)) + "}")
    for key in ("circuits", "cocircuits"):
        if key in doc:
            lines.append(f"{key} ({len(doc[key])}):")
            for item in doc[key]:
                lines.append("  " + _render_vector(item["entries"], inf_symbol))
    if "suites" in doc:
        lines.append(f"ok {str(doc['ok']).lower()}")
        for suite in doc["suites"]:
            status = "pass" if not suite["violations"] else "FAIL"
            lines.append(
                f"  {suite['name']}: {status} ({suite['checked']} checks)"
            )
            for v in suite["violations"]:
                lines.append(f"    {v}")
    return "\n".join(lines) + "\n"


def emit(doc: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        stream.write(render_text(doc, stream))


# -- argument handling -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _parse_int_list(text, what):
    if not text:
        return ()
    out = []
    for chunk in text.split(","):
        try:
            out.append(int(chunk))
        except ValueError:
            raise CliInputError(f"bad {what} entry {chunk!r}")
    return tuple(out)


def _parse_elements(text, n, what):
    out = _parse_int_list(text, what)
    for e in out:
        if not 1 <= e <= n:
            raise CliInputError(f"{what} element {e} outside 1..{n}")
    return frozenset(e - 1 for e in out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algval", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, extra in (
        ("circuits", ()),
        ("bases", ()),
        ("valuation", ()),
        ("cocircuits", ()),
        ("minor", ("delete", "contract")),
        ("flock", ("alpha",)),
        ("verify", ("box",)),
        ("cross-check", ()),
    ):
        p = sub.add_parser(name)
        p.add_argument("input", help="problem file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--cache", metavar="DIR", default=None)
        p.add_argument("--seed-basis", choices=("lex", "given"), default="lex")
        if "delete" in extra:
            p.add_argument("--delete", default="", metavar="i,j,...")
            p.add_argument("--contract", default="", metavar="i,j,...")
        if "alpha" in extra:
            p.add_argument("--alpha", required=True, metavar="c1,...,cn")
        if "box" in extra:
            p.add_argument("--box", type=int, default=None, metavar="R")
    return parser


def _merge_value_flags(argv):
    # lets "--alpha -1,0,..." survive argparse's option detection
    out = []
    skip = False
    for i, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        if arg in ("--alpha", "--delete", "--contract") and i + 1 < len(argv):
            out.append(f"{arg}={argv[i + 1]}")
            skip = True
        else:
            out.append(arg)
    return out


def run(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_value_flags(list(argv))
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return exc.code or 0
        problem = load_problem(args.input)
        if args.command == "cross-check":
            doc = cross_check(problem, cache_dir=args.cache)
            emit(doc, args.format, sys.stdout)
            return 0 if doc["agree"] else 2
        pipe = build_pipeline(problem, seed=args.seed_basis, cache_dir=args.cache)
        if args.command == "verify":
            doc = verify_document(pipe, box_radius=args.box)
            emit(doc, args.format, sys.stdout)
            return 0 if doc["ok"] else 2
        if args.command == "minor":
            delete = _parse_elements(args.delete, pipe.valuation.n, "delete")
            contract = _parse_elements(args.contract, pipe.valuation.n, "contract")
            if delete & contract:
                raise CliInputError("delete and contract sets overlap")
            doc = minor_document(pipe, delete, contract)
        elif args.command == "flock":
            alpha = _parse_int_list(args.alpha, "alpha")
            if len(alpha) != pipe.valuation.n:
                raise CliInputError(
                    f"alpha needs {pipe.valuation.n} entries, got {len(alpha)}"
                )
            doc = flock_document(pipe, alpha)
        else:
            full = valuation_document(pipe)
            if args.command == "circuits":
                doc = {k: full[k] for k in ("input_sha256", "n", "p", "circuits")}
            elif args.command == "bases":
                doc = {
                    k: full[k]
                    for k in ("input_sha256", "n", "rank", "p", "bases")
                }
            elif args.command == "cocircuits":
                doc = {
                    k: full[k] for k in ("input_sha256", "n", "p", "cocircuits")
                }
            else:
                doc = full
        emit(doc, args.format, sys.stdout)
        return 0
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NotPrincipalError, InconsistentValuationError) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
