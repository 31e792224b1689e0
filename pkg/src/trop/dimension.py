"""Chains of admissible corner sets and variable elimination.

On every facet of a corner set, the defining ties give binomial relations
alpha * x^w == 0 (the multiplicative unit) that hold identically on the
facet.  A relation lets one variable be written as a rational-exponent
monomial in the others, eliminating it on that facet.  A chain of strict
inclusions picks up a new relation on some facet at every step, so chains
are bounded by the number of variables; dimension is the length of the
canonical maximal chain down to a point fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ChainError, DegenerateRelationError, InadmissibleError
from .equivalence import AdmissibilityVerdict, check_admissible
from .geom import Cell
from .linear import Vec, dot, is_zero
from .loci import AlgebraicSet, Facet, corner_locus, nu_fiber
from .poly import TropicalPolynomial
from .values import st


@dataclass(frozen=True)
class BinomialRelation:
    """alpha * x^exps equals the unit on a facet (magnitude-wise)."""

    exps: Vec
    coeff: Fraction

    @staticmethod
    def of(exps: Sequence, coeff) -> "BinomialRelation":
        return BinomialRelation(
            tuple(Fraction(x) for x in exps), Fraction(coeff)
        )

    @staticmethod
    def from_tie(
        f: TropicalPolynomial, i: int, j: int
    ) -> "BinomialRelation":
        """The relation carried by the tie of terms i and j of f."""
        ei, ej = f.terms[i].exps, f.terms[j].exps
        ci = f.terms[i].coeff.magnitude
        cj = f.terms[j].coeff.magnitude
        return BinomialRelation(
            tuple(a - b for a, b in zip(ei, ej)), ci - cj
        )

    def value_at(self, mags: Sequence[Fraction]) -> Fraction:
        return dot(self.exps, tuple(Fraction(x) for x in mags)) + self.coeff

    def holds_on_cell(self, cell: Cell) -> bool:
        """Identically zero on the cell (sample plus direction test)."""
        if self.value_at(cell.sample()) != 0:
            return False
        return all(dot(self.exps, d) == 0 for d in _hull_dirs(cell))

    def holds_on_cells(self, cells: Sequence[Cell]) -> bool:
        return all(self.holds_on_cell(c) for c in cells)

    def __str__(self) -> str:
        from .values import format_rational

        parts = [format_rational(self.coeff)] if self.coeff != 0 else []
        for k, e in enumerate(self.exps):
            if e != 0:
                parts.append(f"x{k + 1}^{format_rational(e)}")
        return ("*".join(parts) if parts else "0") + " == 0"


@dataclass(frozen=True)
class OrderRelation:
    """alpha * x^exps is dominated by the unit on a facet."""

    exps: Vec
    coeff: Fraction

    def value_at(self, mags: Sequence[Fraction]) -> Fraction:
        return dot(self.exps, tuple(Fraction(x) for x in mags)) + self.coeff

    def holds_on_cell(self, cell: Cell) -> bool:
        from .geom import cell_constraints
        from .linear import Constraint, feasible

        violated = Constraint(self.exps, -self.coeff, True)
        return not feasible(list(cell_constraints(cell)) + [violated], cell.arity)


Relation = Union[BinomialRelation, OrderRelation]


def _hull_dirs(cell: Cell) -> list[Vec]:
    from .geom import RegionCell, _as_param

    if cell.dim == 0:
        return []
    if isinstance(cell, RegionCell):
        n = cell.arity
        return [
            tuple(Fraction(1 if j == i else 0) for j in range(n))
            for i in range(n)
        ]
    _, d, _, _ = _as_param(cell)
    return [d]


@dataclass(frozen=True)
class Substitution:
    """Replace variable `var` by the tangible monomial coeff * x^exps."""

    var: int
    coeff: Fraction
    exps: Vec

    def apply(self, f: TropicalPolynomial) -> TropicalPolynomial:
        return f.substitute(self.var, self.coeff, self.exps)

    def __str__(self) -> str:
        from .values import format_rational

        parts = [] if self.coeff == 0 else [format_rational(self.coeff)]
        for k, e in enumerate(self.exps):
            if e == 0:
                continue
            parts.append(f"x{k + 1}" if e == 1 else f"x{k + 1}^{format_rational(e)}")
        return f"x{self.var + 1} -> " + ("*".join(parts) if parts else "0")


def eliminate_variable(
    rel: BinomialRelation, var: Optional[int] = None
) -> Substitution:
    """Solve the relation for one variable as a monomial in the others."""
    if is_zero(rel.exps):
        raise DegenerateRelationError(
            "relation involves no variable"
            + ("" if rel.coeff == 0 else " and is inconsistent")
        )
    if var is None:
        var = max(i for i, e in enumerate(rel.exps) if e != 0)
    e_var = rel.exps[var]
    if e_var == 0:
        raise DegenerateRelationError(f"variable x{var + 1} does not appear")
    coeff = -rel.coeff / e_var
    exps = tuple(
        Fraction(0) if i == var else -rel.exps[i] / e_var
        for i in range(len(rel.exps))
    )
    return Substitution(var, coeff, exps)


# -- chains ------------------------------------------------------------------------


@dataclass(frozen=True)
class FacetRelations:
    facet_label: tuple
    relations: tuple[Relation, ...]
    new: bool  # at least one relation fails identically on the parent set


@dataclass(frozen=True)
class ChainStep:
    member: AlgebraicSet
    admissibility: AdmissibilityVerdict
    assumed_irreducible: bool
    facet_relations: tuple[FacetRelations, ...] = ()

    def describe(self) -> dict:
        return {
            "member": self.member.describe(),
            "admissible": self.admissibility.verdict,
            "assumed_irreducible": self.assumed_irreducible,
            "relations": [
                {
                    "facet": list(map(str, fr.facet_label)),
                    "relations": [str(r) for r in fr.relations],
                    "new": fr.new,
                }
                for fr in self.facet_relations
            ],
        }


@dataclass(frozen=True)
class VarietyChain:
    steps: tuple[ChainStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "steps": [s.describe() for s in self.steps],
        }


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    length: int
    arity: int
    maximal: bool
    extendable: bool
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "length": self.length,
            "arity": self.arity,
            "maximal": self.maximal,
            "extendable": self.extendable,
            "errors": list(self.errors),
            "warnings": list(self.warnings),
        }


def _facet_binomials(X: AlgebraicSet, facet: Facet) -> list[BinomialRelation]:
    """Binomial relations holding identically on a facet of X."""
    out = []
    seen = set()
    for ci, cond in enumerate(X.conditions):
        f = cond.f
        s = facet.sample()
        _, dom = f.eval_mag(s)
        for a in range(len(dom)):
            for b in range(a + 1, len(dom)):
                rel = BinomialRelation.from_tie(f, dom[a], dom[b])
                key = (rel.exps, rel.coeff)
                if key in seen:
                    continue
                seen.add(key)
                if rel.holds_on_cells(facet.cells):
                    out.append(rel)
    return out


def _is_new_on(rel: BinomialRelation, parent: AlgebraicSet) -> bool:
    """The relation fails somewhere on the parent set."""
    if parent.is_ambient():
        return not (is_zero(rel.exps) and rel.coeff == 0)
    return not rel.holds_on_cells(parent.complex.cells)


def _step_admissibility(member: AlgebraicSet) -> tuple[AdmissibilityVerdict, bool]:
    verdict = check_admissible(member)
    if verdict.verdict == "inadmissible":
        raise InadmissibleError(
            f"chain member {member.describe()} is inadmissible: "
            + (f"witness {verdict.witness}" if verdict.witness else verdict.reason)
        )
    return verdict, verdict.verdict == "unknown"


def _fiber_step(
    fiber: AlgebraicSet, parent: AlgebraicSet
) -> ChainStep:
    verdict, assumed = _step_admissibility(fiber)
    frs = []
    for facet in fiber.facets():
        rels = _facet_binomials(fiber, facet)
        new = any(_is_new_on(r, parent) for r in rels)
        frs.append(FacetRelations(facet.label, tuple(rels), new))
    return ChainStep(fiber, verdict, assumed, tuple(frs))


def build_chain(X: AlgebraicSet) -> VarietyChain:
    """The canonical greedy chain from X down to a point fiber."""
    verdict, assumed = _step_admissibility(X)
    steps = [ChainStep(X, verdict, assumed)]
    current = X
    while True:
        if current.is_ambient():
            n = current.arity
            if n == 1:
                nxt = nu_fiber((Fraction(0),))
                steps.append(_fiber_step(nxt, current))
                break
            exps = lambda *e: tuple(Fraction(x) for x in e)
            f = TropicalPolynomial(
                n,
                [(exps(*(1 if j == i else 0 for j in range(n))), st(0)) for i in range(n)]
                + [(exps(*([0] * n)), st(0))],
            )
            nxt = corner_locus(f)
            v2, a2 = _step_admissibility(nxt)
            frs = []
            for facet in nxt.facets():
                rels = _facet_binomials(nxt, facet)
                new = any(_is_new_on(r, current) for r in rels)
                frs.append(FacetRelations(facet.label, tuple(rels), new))
            steps.append(ChainStep(nxt, v2, a2, tuple(frs)))
            current = nxt
            continue
        if current.dim() <= 0:
            break
        facets = [f for f in current.facets() if f.dim == current.dim()]
        point = facets[0].sample()
        nxt = nu_fiber(point)
        steps.append(_fiber_step(nxt, current))
        current = nxt
    return VarietyChain(tuple(steps))


def dimension(X: AlgebraicSet) -> int:
    """Maximal chain length below X: eliminable variables, maximized over
    facets."""
    return build_chain(X).length


def dimension_with_chain(X: AlgebraicSet) -> tuple[int, VarietyChain]:
    chain = build_chain(X)
    return chain.length, chain


def verify_chain(chain: VarietyChain) -> ChainReport:
    """Validate strictness, per-facet relations, and the length bound."""
    errors: list[str] = []
    warnings: list[str] = []
    steps = chain.steps
    if not steps:
        raise ChainError("empty chain")
    arity = steps[0].member.arity
    for idx, step in enumerate(steps):
        if step.member.arity != arity:
            errors.append(f"member {idx}: arity mismatch")
        if step.admissibility.verdict == "inadmissible":
            errors.append(f"member {idx}: inadmissible")
        elif step.assumed_irreducible:
            warnings.append(
                f"member {idx}: irreducibility assumed, not certified"
            )
    for idx in range(len(steps) - 1):
        upper, lower = steps[idx].member, steps[idx + 1].member
        if not upper.proper_superset_of(lower):
            errors.append(f"step {idx}: inclusion is not strict")
        frs = steps[idx + 1].facet_relations
        facet_labels = {f.label for f in lower.facets()}
        covered = {fr.facet_label for fr in frs}
        if not facet_labels <= covered:
            errors.append(f"step {idx}: some facet carries no relation")
        any_new = False
        for fr in frs:
            for rel in fr.relations:
                cells = _facet_cells(lower, fr.facet_label)
                if isinstance(rel, BinomialRelation):
                    if cells and not rel.holds_on_cells(cells):
                        errors.append(
                            f"step {idx}: relation {rel} fails on its facet"
                        )
                    elif _is_new_on(rel, upper):
                        any_new = True
                else:
                    if cells and not all(rel.holds_on_cell(c) for c in cells):
                        errors.append(
                            f"step {idx}: order relation {rel} fails on its facet"
                        )
                    else:
                        var = next(
                            (k for k, e in enumerate(rel.exps) if e != 0), None
                        )
                        if var is not None and not _variable_in_facet_binomial(
                            lower, fr.facet_label, var
                        ):
                            errors.append(
                                f"step {idx}: order relation {rel} has no "
                                "essential binomial carrying its variable"
                            )
        if not any_new:
            errors.append(f"step {idx}: no new relation on any facet")
    length = chain.length
    if length > arity:
        errors.append(f"chain length {length} exceeds the number of variables {arity}")
    terminal_point = steps[-1].member.dim() <= 0 and not steps[-1].member.is_ambient()
    extendable = length < arity or not terminal_point
    return ChainReport(
        ok=not errors,
        length=length,
        arity=arity,
        maximal=not extendable,
        extendable=extendable,
        errors=tuple(errors),
        warnings=tuple(warnings),
    )


def _facet_cells(X: AlgebraicSet, label: tuple) -> list[Cell]:
    for f in X.facets():
        if f.label == label:
            return list(f.cells)
    return []


def _variable_in_facet_binomial(
    X: AlgebraicSet, label: tuple, var: int
) -> bool:
    cells = _facet_cells(X, label)
    if not cells:
        return False
    facet = Facet(label, tuple(cells))
    return any(
        rel.exps[var] != 0 for rel in _facet_binomials(X, facet)
    )
