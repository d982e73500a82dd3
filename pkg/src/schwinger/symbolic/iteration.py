"""Iterating the angular-momentum relations under a deformed commutator table.

Starting from J_+ = a^+ b, J_- = (J_+)^dagger and J_z = (a^+ a - b^+ b)/2, each
step recomputes J_z from [J_+, J_-] = 2 J_z, then J_+ from [J_z, J_+] = J_+,
and reads off constraints on c, d:

* every monomial of the new J_z missing from a^+ a - b^+ b must vanish;
* the coefficient of a^+ b in the new J_+ must stay 1.

Other terms the new J_+ picks up are carried into the next step rather than
forced to zero. Once J_z stops changing only the J_+ relation is iterated.
The loop ends when neither operator changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CommutatorTable, Expr, adjoint, coefficient_of, commutator
from .coeffs import FAMILY, Num, Poly
from .parser import format_expr, parse_expression

HALF = Num(1, 0) / 2

JZ_ANSATZ = "1/2 a^+ a - 1/2 b^+ b"
JP_ANSATZ = "a^+ b"

PRINTED = {
    "step1.J_z'": "a^+ a - b^+ b + c a^+ b^+ + c^* a b",
    "step1.J_+'": "(1 - c c^*) a^+ b - (c a^+ a^+ - c^* b b) - 1/2 d (a^+ a + b^+ b + c a^+ b^+ + c^* a b)",
    "step1.J_+'|c=0": "a^+ b - 1/2 d (a^+ a + b^+ b)",
    "step2.J_+''": "(1 - 1/2 d d^*) a^+ b + 1/2 d d b^+ a",
}

CONCLUSION_COMMUTE = ("c = 0 and d = 0: the cross-mode commutators vanish, so the two sets of "
                      "operators should commute with each other")


@dataclass(frozen=True)
class Constraint:
    """``family`` (its conjugate implied) set to zero, or an unsolved ``equation = 0``."""

    equation: Poly
    family: str | None
    source: str

    def text(self) -> str:
        if self.family is not None:
            return f"{self.family} = 0"
        return f"{self.equation} = 0"

    def to_dict(self) -> dict:
        return {"constraint": self.text(), "equation": f"{self.equation} = 0", "source": self.source}


@dataclass
class IterationStep:
    name: str
    expressions: dict[str, Expr]
    extracted_constraints: list[Constraint]
    simplified: dict[str, Expr] = field(default_factory=dict)
    carried_terms: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expressions": {k: format_expr(v) for k, v in self.expressions.items()},
            "extracted_constraints": [c.to_dict() for c in self.extracted_constraints],
            "simplified": {k: format_expr(v) for k, v in self.simplified.items()},
            "carried_terms": self.carried_terms,
        }


@dataclass
class IterationReport:
    table: dict[str, str]
    assumptions: list[str]
    steps: list[IterationStep]
    final_constraints: list[str]
    pending_equations: list[str]
    status: str
    conclusion: str
    normalization: dict = field(default_factory=dict)
    comparisons: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "assumptions": self.assumptions,
            "status": self.status,
            "steps": [s.to_dict() for s in self.steps],
            "final_constraints": self.final_constraints,
            "pending_equations": self.pending_equations,
            "conclusion": self.conclusion,
            "normalization": self.normalization,
            "comparisons": self.comparisons,
        }


def solve_vanishing(p: Poly, source: str) -> Constraint | None:
    """Turn ``p = 0`` into a constraint; ``None`` when ``p`` is already zero.

    A polynomial that is a single symbol family times a nonzero constant, such
    as -c c*, forces that family to zero. Anything else stays an equation.
    """
    if p.is_zero():
        return None
    g = p.monomial_gcd()
    rest = p.divide_monomial(g)
    families = {FAMILY[name] for name, e in zip(("c", "c^*", "d", "d^*"), g) if e}
    if rest.is_const() and len(families) == 1:
        return Constraint(p, families.pop(), source)
    return Constraint(p, None, source)


def compare_terms(computed: Expr, printed: Expr) -> dict:
    """Monomial-by-monomial comparison; differences are listed, never dropped."""
    rows = []
    monos = sorted(set(computed.terms) | set(printed.terms), key=lambda m: tuple(-e for e in m))
    for mono in monos:
        got = coefficient_of(computed, mono)
        want = coefficient_of(printed, mono)
        rows.append({
            "monomial": format_expr(Expr({mono: Poly.const(1)})),
            "computed": str(got),
            "printed": str(want),
            "equal": got == want,
        })
    return {"identical": all(r["equal"] for r in rows), "terms": rows,
            "differences": [r for r in rows if not r["equal"]]}


def _am_jz(jp: Expr, table: CommutatorTable) -> Expr:
    return commutator(jp, adjoint(jp, table), table).scale(HALF)


def _constraint_values(constraints) -> dict:
    return {c.family: Poly() for c in constraints if c.family is not None}


def _normalization_study(table: CommutatorTable) -> dict:
    """First step under both readings of J_z' against the printed first step."""
    jp = parse_expression(JP_ANSATZ, table)
    raw_jz = commutator(jp, adjoint(jp, table), table)
    am_jz = raw_jz.scale(HALF)
    printed_jz = parse_expression(PRINTED["step1.J_z'"], table)
    printed_jp = parse_expression(PRINTED["step1.J_+'"], table)
    out = {}
    for label, jz in (("raw: J_z' = [J_+, J_-]", raw_jz), ("am: J_z' = [J_+, J_-]/2", am_jz)):
        jp_new = commutator(jz, jp, table)
        out[label] = {
            "J_z'": format_expr(jz),
            "J_+'": format_expr(jp_new),
            "a^+ b coefficient of J_+'": str(coefficient_of(jp_new, ("a^+", "b"))),
            "J_z' vs printed": compare_terms(jz, printed_jz),
            "J_+' vs printed": compare_terms(jp_new, printed_jp),
        }
    summary = {
        "printed J_z' reproduced by": [k for k, v in out.items() if v["J_z' vs printed"]["identical"]],
        "printed a^+ b coefficient of J_+' reproduced by": [
            k for k, v in out.items()
            if v["J_+' vs printed"]["terms"] and any(
                r["monomial"] == "a^+ b" and r["equal"] for r in v["J_+' vs printed"]["terms"])],
        "printed J_+' fully reproduced by": [k for k, v in out.items() if v["J_+' vs printed"]["identical"]],
    }
    return {"readings": out, "summary": summary}


def uniqueness_iteration(table: CommutatorTable | None = None, max_steps: int = 10) -> IterationReport:
    """Run the iteration from the undeformed ansatz; the symbolic table is the default."""
    table = table if table is not None else CommutatorTable.symbolic()
    initial = table
    header = table.describe()
    assumptions = [
        "[a,a^+] = [b,b^+] = 1 are kept unmodified",
        "[b,a] = c and [b,a^+] = d; [a^+,b^+] = c^* and [a,b^+] = d^* follow by conjugation",
        "no other cross-mode entries: [a,b] = -c is the only a-b bracket",
        "c, c^*, d, d^* are independent commuting symbols tied only by conjugation",
        "hbar = 1; J_z is normalized from [J_+, J_-] = 2 J_z",
    ]
    if max_steps < 1:
        return IterationReport(header, assumptions, [], [], [], "not run",
                               "iteration not run (max_steps < 1)")

    jz_ansatz = parse_expression(JZ_ANSATZ, table)
    jp = parse_expression(JP_ANSATZ, table)
    jz = jz_ansatz
    jz_frozen = False
    constraints: list[Constraint] = []
    pending: list[Poly] = []
    steps: list[IterationStep] = []
    status = "max_steps reached"
    primes = ["'", "''", "'''"]

    for k in range(1, max_steps + 1):
        tag = primes[k - 1] if k <= len(primes) else f"^({k})"
        found: list[Constraint] = []
        exprs: dict[str, Expr] = {}
        if not jz_frozen:
            jz_new = _am_jz(jp, table)
            exprs[f"J_z{tag}"] = jz_new
            for mono in sorted(set(jz_new.terms) | set(jz_ansatz.terms)):
                coeff, target = coefficient_of(jz_new, mono), coefficient_of(jz_ansatz, mono)
                c = solve_vanishing(coeff - target, f"J_z{tag} coefficient of {format_expr(Expr({mono: Poly.const(1)}))}")
                if c is not None:
                    found.append(c)
        else:
            jz_new = jz
        jp_new = commutator(jz_new, jp, table)
        exprs[f"J_+{tag}"] = jp_new
        c = solve_vanishing(coefficient_of(jp_new, ("a^+", "b")) - 1, f"J_+{tag} coefficient of a^+ b")
        if c is not None:
            found.append(c)

        inconsistent = [c for c in found if c.equation.is_const()]
        known = {c.text() for c in constraints} | {f"{p} = 0" for p in pending}
        new = [c for c in found if c.text() not in known and c not in inconsistent]
        for c in new:
            if c.text() in known:
                continue
            known.add(c.text())
            if c.family is not None:
                constraints.append(c)
            else:
                pending.append(c.equation)
        values = _constraint_values(constraints)

        table = table.subs(values)
        jz_s, jp_s = jz_new.subs(values), jp_new.subs(values)
        jp_prev, jz_prev = jp.subs(values), jz.subs(values)
        carried = {format_expr(Expr({m: Poly.const(1)})): str(co)
                   for m, co in jp_s.items() if m != (1, 0, 0, 1)}
        steps.append(IterationStep(
            name=f"step {k}",
            expressions=exprs,
            extracted_constraints=new + inconsistent,
            simplified={**({f"J_z{tag}": jz_s} if not jz_frozen else {}), f"J_+{tag}": jp_s},
            carried_terms=carried,
        ))
        if inconsistent:
            status = "inconsistent"
            break
        if jz_s == jz_prev and jp_s == jp_prev:
            status = "converged"
            break
        if not jz_frozen and jz_s == jz_ansatz.subs(values):
            jz_frozen = True
        jz, jp = jz_s, jp_s

    families = sorted({c.family for c in constraints})
    final = [f"{f} = 0" for f in families]
    if status == "converged" and families == ["c", "d"] and not pending:
        conclusion = CONCLUSION_COMMUTE
    elif status == "converged":
        conclusion = f"fixed point reached with constraints {final or 'none'}"
    elif status == "inconsistent":
        conclusion = "the relations force a nonzero constant to vanish: no consistent deformation"
    else:
        conclusion = f"no fixed point within {max_steps} steps"
    report = IterationReport(header, assumptions, steps, final, [f"{p} = 0" for p in pending], status,
                             conclusion)
    report.normalization = _normalization_study(initial)
    report.comparisons = printed_comparison(report, _presets(initial))
    return report


def _presets(table: CommutatorTable) -> dict:
    values = {}
    if table.c != Poly.symbol("c"):
        values["c"] = table.c
    if table.d != Poly.symbol("d"):
        values["d"] = table.d
    return values


def printed_comparison(report: IterationReport, presets: dict | None = None) -> dict:
    """Set the computed steps against the printed ones, term by term.

    Printed expressions are specialized to any preset c or d first.
    """
    if not report.steps:
        return {}
    symbolic = CommutatorTable.symbolic()
    presets = presets or {}

    def printed(key):
        return parse_expression(PRINTED[key], symbolic).subs(presets)

    out = {}
    step1 = report.steps[0]
    if "J_z'" in step1.expressions:
        out["step1.J_z' (2 x computed)"] = compare_terms(step1.expressions["J_z'"].scale(2), printed("step1.J_z'"))
    if "J_+'" in step1.expressions:
        out["step1.J_+'"] = compare_terms(step1.expressions["J_+'"], printed("step1.J_+'"))
        out["step1.J_+'|c=0"] = compare_terms(step1.simplified["J_+'"],
                                              printed("step1.J_+'|c=0").subs({"c": Poly()}))
    if len(report.steps) > 1 and "J_+''" in report.steps[1].expressions:
        out["step2.J_+''"] = compare_terms(report.steps[1].expressions["J_+''"], printed("step2.J_+''"))
    return out
