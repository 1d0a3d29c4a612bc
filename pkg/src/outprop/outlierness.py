"""Outlierness of one attribute value against a selection of rows.

The score compares the density of the queried value with the densities of
all rows in the selection. With G the step cdf of the per-row densities and
f_o the density at the queried value, the raw score is the area above G past
f_o minus the area below G before f_o, both computed exactly from the step
segments. The raw difference is squashed into [0, 1]; negative differences
(the value is denser than typical) map to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import density as dens
from .dataset import NUMERIC, Attribute, DataObject, SelectionView, satisfies
from .errors import EmptySampleError, PreconditionError


def omega(x: float) -> float:
    """Squash a raw area difference into [0, 1]; 0 for negative input.

    Mathematically the map stays below 1; in floating point it saturates
    at exactly 1.0 for large inputs.
    """
    if x < 0:
        return 0.0
    e = math.exp(-x)
    return (1.0 - e) / (1.0 + e)


@dataclass(frozen=True, eq=False)
class OutliernessScore:
    """Score plus the quantities it was assembled from."""

    value: float
    raw: float
    query_density: float
    area_above: float
    area_below: float
    curve: dens.StepCDF

    def __float__(self) -> float:
        return self.value


def _member_densities(view: SelectionView, attribute: Attribute, o_value):
    """Densities of every selected row's value plus the queried value's own.

    A column with a single distinct value carries no contrast: every row is
    given the same density so the score comes out exactly 0.
    """
    col = view.column(attribute.index)
    if attribute.kind == NUMERIC:
        model = dens.fit_numeric(col)
        if model.bandwidth == dens.DEGENERATE_BANDWIDTH:
            return np.ones(len(col)), 1.0
        return dens.parzen_densities(model, col), dens.parzen_density(model, float(o_value))
    model = dens.fit_categorical(col)
    return dens.categorical_pmfs(model, col), dens.categorical_pmf(model, o_value)


def outlierness(view: SelectionView, attribute: Attribute, o: DataObject) -> OutliernessScore:
    """Score how atypical o's value on the attribute is within the view.

    Parameters
    ----------
    view : SelectionView
        Rows the score is computed against. o must satisfy the view's
        explanation and is expected to be one of its rows.
    attribute : Attribute
        The property being scored. Must not appear in the view's explanation.
    o : DataObject
        The designated row.

    Returns
    -------
    OutliernessScore
        Score in [0, 1] with the raw area difference, the query density and
        the density cdf it integrates.
    """
    if attribute.index in view.explanation.attributes:
        raise PreconditionError(
            f"attribute {attribute.name!r} appears in the conditioning explanation"
        )
    if not satisfies(o, view.explanation):
        raise PreconditionError("row does not satisfy the view's explanation")
    if len(view) == 0:
        raise EmptySampleError("outlierness against an empty selection")

    densities, f_o = _member_densities(view, attribute, o.values[attribute.index])
    curve = dens.density_cdf(densities)
    a1 = curve.area_above(f_o)
    a2 = curve.area_below(f_o)
    raw = a1 - a2
    return OutliernessScore(
        value=omega(raw),
        raw=raw,
        query_density=float(f_o),
        area_above=a1,
        area_below=a2,
        curve=curve,
    )
