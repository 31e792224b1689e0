"""Exact arithmetic for supertropical and layered tropical values.

The ground structure is max-plus over the rationals: addition is maximum,
multiplication is ordinary rational addition, and the multiplicative
identity is 0.  There is no additive zero anywhere in this package; empty
sums are a programming error, not a value.

A supertropical value is a rational magnitude tagged either tangible or
ghost.  Adding two values of equal magnitude produces a ghost; ghosts are
absorbing under multiplication.

A layered value refines the ghost tag into a layer drawn from the
naturals-with-infinity: ties add layers, products multiply them.  Layer 1
plays the role of tangible; collapsing every layer above 1 to "ghost"
recovers the supertropical structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

#: Sorting layers live in {1, 2, ...} together with infinity.  Finite
#: layers are ints; infinity is math.inf (comparison and saturating
#: arithmetic come for free, and no layer is ever 0 so inf*0 cannot occur).
Layer = Union[int, float]

LAYER_INF: Layer = math.inf


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _check_layer(layer: Layer) -> Layer:
    if layer is LAYER_INF or layer == math.inf:
        return LAYER_INF
    if isinstance(layer, int) and not isinstance(layer, bool) and layer >= 1:
        return layer
    raise ValueError(f"layer must be an integer >= 1 or infinity, got {layer!r}")


@dataclass(frozen=True)
class SupertropicalValue:
    """A rational magnitude that is either tangible or ghost."""

    magnitude: Fraction
    ghost: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "magnitude", _frac(self.magnitude))

    # -- the two semiring operations -------------------------------------

    def __add__(self, other: "SupertropicalValue") -> "SupertropicalValue":
        if self.magnitude > other.magnitude:
            return self
        if self.magnitude < other.magnitude:
            return other
        return SupertropicalValue(self.magnitude, True)

    def __mul__(self, other: "SupertropicalValue") -> "SupertropicalValue":
        return SupertropicalValue(
            self.magnitude + other.magnitude, self.ghost or other.ghost
        )

    def __pow__(self, exponent: Rational) -> "SupertropicalValue":
        e = _frac(exponent)
        if e == 0:
            return ST_ONE
        return SupertropicalValue(self.magnitude * e, self.ghost)

    # -- the ghost map and its section -----------------------------------

    def nu(self) -> "SupertropicalValue":
        """Project onto the ghosts, preserving magnitude."""
        return SupertropicalValue(self.magnitude, True)

    def lift(self) -> "SupertropicalValue":
        """The tangible lift: the tangible value of the same magnitude."""
        return SupertropicalValue(self.magnitude, False)

    @property
    def tangible(self) -> bool:
        return not self.ghost

    # -- magnitude comparisons (layer-blind) ------------------------------

    def nu_eq(self, other: "SupertropicalValue") -> bool:
        return self.magnitude == other.magnitude

    def nu_lt(self, other: "SupertropicalValue") -> bool:
        return self.magnitude < other.magnitude

    def nu_le(self, other: "SupertropicalValue") -> bool:
        return self.magnitude <= other.magnitude

    def __str__(self) -> str:
        body = format_rational(self.magnitude)
        return body + "v" if self.ghost else body

    def __repr__(self) -> str:
        return f"st({str(self)!r})"


def st(magnitude: Rational, ghost: bool = False) -> SupertropicalValue:
    """Shorthand constructor for a supertropical value."""
    return SupertropicalValue(_frac(magnitude), ghost)


ST_ONE = SupertropicalValue(Fraction(0))


def st_add(x: SupertropicalValue, y: SupertropicalValue) -> SupertropicalValue:
    return x + y


def st_mul(x: SupertropicalValue, y: SupertropicalValue) -> SupertropicalValue:
    return x * y


def st_sum(values) -> SupertropicalValue:
    it = iter(values)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty supertropical sum (there is no additive zero)")
    for v in it:
        acc = acc + v
    return acc


def nu(x: SupertropicalValue) -> SupertropicalValue:
    return x.nu()


def tangible_lift(x: SupertropicalValue) -> SupertropicalValue:
    return x.lift()


@dataclass(frozen=True)
class LayeredValue:
    """A rational magnitude carrying a sort layer in {1, 2, ...} or infinity."""

    magnitude: Fraction
    layer: Layer = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "magnitude", _frac(self.magnitude))
        object.__setattr__(self, "layer", _check_layer(self.layer))

    def __add__(self, other: "LayeredValue") -> "LayeredValue":
        if self.magnitude > other.magnitude:
            return self
        if self.magnitude < other.magnitude:
            return other
        return LayeredValue(self.magnitude, _layer_add(self.layer, other.layer))

    def __mul__(self, other: "LayeredValue") -> "LayeredValue":
        return LayeredValue(
            self.magnitude + other.magnitude, _layer_mul(self.layer, other.layer)
        )

    def __pow__(self, exponent: Rational) -> "LayeredValue":
        e = _frac(exponent)
        if e == 0:
            return LAY_ONE
        if self.layer == 1:
            return LayeredValue(self.magnitude * e, 1)
        if e.denominator == 1 and e > 0:
            if self.layer is LAYER_INF:
                return LayeredValue(self.magnitude * e, LAYER_INF)
            return LayeredValue(self.magnitude * e, self.layer ** int(e))
        raise ValueError(
            f"cannot raise a layer-{self.layer} value to exponent {e}: "
            "layers above 1 only support positive integer exponents"
        )

    @property
    def sort(self) -> Layer:
        return self.layer

    def raised(self, layer: Layer) -> "LayeredValue":
        """Transition map to a higher layer; magnitude is preserved."""
        layer = _check_layer(layer)
        if layer < self.layer:
            raise ValueError(f"transition maps only raise layers ({self.layer} -> {layer})")
        return LayeredValue(self.magnitude, layer)

    def lift(self) -> "LayeredValue":
        return LayeredValue(self.magnitude, 1)

    def nu_eq(self, other: "LayeredValue") -> bool:
        return self.magnitude == other.magnitude

    def __str__(self) -> str:
        body = format_rational(self.magnitude)
        if self.layer == 1:
            return body
        suffix = "inf" if self.layer is LAYER_INF else str(self.layer)
        return f"{body}@{suffix}"

    def __repr__(self) -> str:
        return f"lay({str(self)!r})"


def lay(magnitude: Rational, layer: Layer = 1) -> LayeredValue:
    return LayeredValue(_frac(magnitude), layer)


LAY_ONE = LayeredValue(Fraction(0), 1)


def lay_add(x: LayeredValue, y: LayeredValue) -> LayeredValue:
    return x + y


def lay_mul(x: LayeredValue, y: LayeredValue) -> LayeredValue:
    return x * y


def lay_sum(values) -> LayeredValue:
    it = iter(values)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty layered sum (there is no additive zero)")
    for v in it:
        acc = acc + v
    return acc


def _layer_add(k: Layer, l: Layer) -> Layer:
    if k is LAYER_INF or l is LAYER_INF:
        return LAYER_INF
    return k + l


def _layer_mul(k: Layer, l: Layer) -> Layer:
    if k is LAYER_INF or l is LAYER_INF:
        return LAYER_INF
    return k * l


def supertropical_of_layered(x: LayeredValue) -> SupertropicalValue:
    """Collapse layers: 1 stays tangible, everything above 1 becomes ghost.

    This map is a semiring homomorphism.
    """
    return SupertropicalValue(x.magnitude, x.layer > 1)


def layered_of_supertropical(x: SupertropicalValue) -> LayeredValue:
    """Embed: tangible at layer 1, ghost at layer infinity."""
    return LayeredValue(x.magnitude, LAYER_INF if x.ghost else 1)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_layer(layer: Layer) -> str:
    return "inf" if layer is LAYER_INF else str(layer)
