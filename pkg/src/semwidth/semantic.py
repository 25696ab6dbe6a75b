"""Semantic widths: the least width over all equivalent queries.

For every notion shipped here the least value is attained at the core, so a
semantic width is computed as the width of the core.  ``adw_lower`` and
``subw_lower`` are sampled lower bounds, never exact values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .cover import CoverCertificatePair, rational_str, rho_star
from .cq import ConjunctiveQuery, render_query
from .decomposition import (
    DEFAULT_CAP,
    SampledBound,
    WidthReport,
    fhw_exact,
    ghw_exact,
    sampled_lower_bound,
)
from .errors import SemwidthError
from .homomorphism import CoreResult, compute_core, mapping_to_json
from .hypergraph import hypergraph_of

EXACT_NOTIONS = ("rho_star", "ghw", "fhw")
LOWER_NOTIONS = ("adw_lower", "subw_lower")
NOTIONS = EXACT_NOTIONS + LOWER_NOTIONS

Width = Union[WidthReport, CoverCertificatePair, SampledBound]


def _check_notion(notion):
    if notion not in NOTIONS:
        raise ValueError(f"unknown width notion {notion!r}; expected one of {', '.join(NOTIONS)}")


def width(q: ConjunctiveQuery, notion: str, *, cap: int = DEFAULT_CAP,
          samples: int = 8, seed: int = 0) -> Width:
    """The notion's width of ``q`` itself, with its certificate."""
    _check_notion(notion)
    h = hypergraph_of(q)
    if notion == "rho_star":
        return rho_star(h)
    if notion == "ghw":
        return ghw_exact(h, cap)
    if notion == "fhw":
        return fhw_exact(h, cap)
    family = "modular" if notion == "adw_lower" else "submodular"
    return sampled_lower_bound(h, family, samples, seed, min(cap, 10))


def width_to_json(w: Width):
    if isinstance(w, SampledBound):
        return {"value": rational_str(w.value), "family": w.family, "certified_functions": w.certified,
                "function": w.function.to_json(), "report": w.report.to_json()}
    return w.to_json()


@dataclass(frozen=True)
class SemanticWidthReport:
    notion: str
    core: CoreResult
    core_width: Width
    original_width: Width

    @property
    def exactness(self) -> str:
        return "exact" if self.notion in EXACT_NOTIONS else "lower_bound"

    @property
    def value(self) -> Fraction:
        return self.core_width.value

    def to_json(self):
        return {
            "notion": self.notion,
            "exactness": self.exactness,
            "core": render_query(self.core.core),
            "retraction": mapping_to_json(self.core.retraction),
            "semantic_width": rational_str(self.core_width.value),
            "original_width": rational_str(self.original_width.value),
            "core_report": width_to_json(self.core_width),
            "original_report": width_to_json(self.original_width),
        }


def semantic_width(q: ConjunctiveQuery, notion: str, *, cap: int = DEFAULT_CAP,
                   samples: int = 8, seed: int = 0) -> SemanticWidthReport:
    """Width of the core of ``q``, alongside the width of ``q`` for comparison."""
    _check_notion(notion)
    core = compute_core(q)
    kw = dict(cap=cap, samples=samples, seed=seed)
    core_w = width(core.core, notion, **kw)
    original_w = core_w if core.core == q else width(q, notion, **kw)
    return SemanticWidthReport(notion, core, core_w, original_w)


def reformulation_decision(q: ConjunctiveQuery, notion: str, k, *, cap: int = DEFAULT_CAP) -> bool:
    """Is there a query equivalent to ``q`` of width at most ``k``?"""
    if notion not in EXACT_NOTIONS:
        raise SemwidthError(f"reformulation is only decided for exact notions, not {notion}")
    return semantic_width(q, notion, cap=cap).value <= Fraction(k)


def verify_core_minimality(q: ConjunctiveQuery, notion: str, *, cap: int = DEFAULT_CAP) -> bool:
    if notion not in EXACT_NOTIONS:
        raise SemwidthError(f"core minimality is only checked for exact notions, not {notion}")
    report = semantic_width(q, notion, cap=cap)
    return report.core_width.value <= report.original_width.value
