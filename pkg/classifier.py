#!/usr/bin/env python3
"""
Shape Classifier

Decides from the factorization alone whether the nontrivial small divisors
of n form an arithmetic progression, and names the family:

    (i)    n = p or p^2             A_n = {}
    (ii)   n = pq, p < q            A_n = {p}
    (iii)  n = p^3 or p^4           A_n = {p}
    (iv)   n = p^5                  A_n = {p, p^2}
    (v)    n = pq^2, p < q          A_n = {p, q}
    (vi)   n = p^2 q, p^2 < q       A_n = {p, p^2}
    (vii)  n = p^2 q, p < q < p^2   A_n = {p, q}
    (viii) n = p^6                  A_n = {p, p^2}
    (ix)   n = 36                   A_n = {2, 3, 4}
    (x)    n = pqr, 2q = p + r      A_n = {p, q, r}
    (xi)   n = 24                   A_n = {2, 3, 4}
    (xii)  n = 60                   A_n = {2, 3, 4, 5, 6}

Every other n >= 2 is NotAP. No divisor is ever enumerated here.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from arith_core import Factorization, tau
from errors import InvalidInputError


class CaseId(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"
    XII = "XII"
    NOT_AP = "NotAP"
    UNIT = "Unit"

    def __str__(self) -> str:
        return self.value


THEOREM_FAMILIES: Tuple[CaseId, ...] = (
    CaseId.I, CaseId.II, CaseId.III, CaseId.IV, CaseId.V, CaseId.VI,
    CaseId.VII, CaseId.VIII, CaseId.IX, CaseId.X, CaseId.XI, CaseId.XII,
)

SPORADIC: Dict[int, CaseId] = {24: CaseId.XI, 36: CaseId.IX, 60: CaseId.XII}

ARITY: Dict[CaseId, int] = {
    CaseId.I: 1, CaseId.II: 2, CaseId.III: 1, CaseId.IV: 1,
    CaseId.V: 2, CaseId.VI: 2, CaseId.VII: 2, CaseId.VIII: 1,
    CaseId.IX: 0, CaseId.X: 3, CaseId.XI: 0, CaseId.XII: 0,
    CaseId.NOT_AP: 0, CaseId.UNIT: 0,
}

PREDICTED_K: Dict[CaseId, Optional[int]] = {
    CaseId.I: 0, CaseId.II: 1, CaseId.III: 1, CaseId.IV: 2,
    CaseId.V: 2, CaseId.VI: 2, CaseId.VII: 2, CaseId.VIII: 2,
    CaseId.IX: 3, CaseId.X: 3, CaseId.XI: 3, CaseId.XII: 5,
    CaseId.NOT_AP: None, CaseId.UNIT: 0,
}

ITEMS: Dict[CaseId, str] = {
    CaseId.I: "(i)", CaseId.II: "(ii)", CaseId.III: "(iii)", CaseId.IV: "(iv)",
    CaseId.V: "(v)", CaseId.VI: "(vi)", CaseId.VII: "(vii)", CaseId.VIII: "(viii)",
    CaseId.IX: "(ix)", CaseId.X: "(x)", CaseId.XI: "(xi)", CaseId.XII: "(xii)",
}

_ALIASES: Dict[str, CaseId] = {
    "36-FAMILY": CaseId.IX,
    "24-FAMILY": CaseId.XI,
    "60-FAMILY": CaseId.XII,
    "TRIPLE-FAMILY": CaseId.X,
}


@dataclass(frozen=True)
class CaseLabel:
    """
    A classification verdict.

    Attributes:
        case_id: Family (I..XII), NotAP or Unit
        witnesses: The primes instantiating the family, ascending
        predicted_k: |A_n| the family forces (None for NotAP)
    """

    case_id: CaseId
    witnesses: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.witnesses) != ARITY[self.case_id]:
            raise InvalidInputError(
                f"family {self.case_id} takes {ARITY[self.case_id]} witnesses, got {self.witnesses}"
            )
        if any(b <= a for a, b in zip(self.witnesses, self.witnesses[1:])):
            raise InvalidInputError(f"witnesses must ascend: {self.witnesses}")

    @property
    def predicted_k(self) -> Optional[int]:
        return PREDICTED_K[self.case_id]

    @property
    def is_ap(self) -> bool:
        return self.case_id is not CaseId.NOT_AP

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id.value,
            "witnesses": list(self.witnesses),
            "predicted_k": self.predicted_k,
        }


@dataclass(frozen=True)
class Explanation:
    """Human-readable account of how classify() reached its verdict."""

    n: int
    factorization: str
    shape: str
    label: CaseLabel
    branch: str
    citation: str
    tau: int
    tau_case_k: Optional[int]
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "factorization": self.factorization,
            "shape": self.shape,
            "label": self.label.to_dict(),
            "branch": self.branch,
            "citation": self.citation,
            "tau": self.tau,
            "tau_case_k": self.tau_case_k,
            "note": self.note,
        }


def parse_case_id(text: str) -> CaseId:
    """
    Parse a family name: roman numerals in any case, optionally in
    parentheses, or one of the aliases "36-family", "24-family",
    "60-family", "triple-family".
    """
    key = text.strip().strip("()").upper()
    if key in _ALIASES:
        return _ALIASES[key]
    for case_id in THEOREM_FAMILIES:
        if case_id.value == key:
            return case_id
    raise InvalidInputError(f"unknown family {text!r}; expected I..XII or an alias")


def _decide(f: Factorization) -> Tuple[CaseLabel, str]:
    """The dispatch shared by classify() and explain(): (label, branch)."""
    n = f.n
    if n == 1:
        return CaseLabel(CaseId.UNIT), "n = 1"
    if n in SPORADIC:
        return CaseLabel(SPORADIC[n]), f"n = {n} (sporadic)"

    primes, shape = f.primes, f.shape
    if len(shape) == 1:
        p, e = primes[0], shape[0]
        family = {1: CaseId.I, 2: CaseId.I, 3: CaseId.III, 4: CaseId.III,
                  5: CaseId.IV, 6: CaseId.VIII}.get(e)
        if family is None:
            return CaseLabel(CaseId.NOT_AP), f"n = p^{e}: p, p^2, p^3 are not in AP"
        return CaseLabel(family, (p,)), "n = p" if e == 1 else f"n = p^{e}"

    if len(shape) == 2:
        p, q = primes
        if shape == (1, 1):
            return CaseLabel(CaseId.II, (p, q)), "n = pq, p < q"
        if shape == (1, 2):
            return CaseLabel(CaseId.V, (p, q)), "n = pq^2, p < q"
        if shape == (2, 1):
            # q is prime, so q == p*p is impossible
            if p * p < q:
                return CaseLabel(CaseId.VI, (p, q)), f"p^2 < q ({p * p} < {q})"
            return CaseLabel(CaseId.VII, (p, q)), f"q < p^2 ({q} < {p * p})"

    if shape == (1, 1, 1):
        p, q, r = primes
        if 2 * q == p + r:
            return CaseLabel(CaseId.X, (p, q, r)), f"2q = p + r ({2 * q} = {p + r})"
        return CaseLabel(CaseId.NOT_AP), f"2q != p + r ({2 * q} != {p + r})"

    return CaseLabel(CaseId.NOT_AP), "no family has this shape"


def classify(f: Factorization) -> CaseLabel:
    """
    Map a factorization to its family.

    Sporadic constants (24, 36, 60) are matched first, then the exponent
    sequence, then the prime inequalities.

    Args:
        f: Factorization of n (n >= 1)

    Returns:
        CaseLabel: Unit for n = 1, a family I..XII, or NotAP
    """
    return _decide(f)[0]


def predicted_A(label: CaseLabel) -> List[int]:
    """
    The exact A_n a family asserts.

    Raises:
        InvalidInputError: label is NotAP
    """
    case_id, w = label.case_id, label.witnesses
    if case_id is CaseId.NOT_AP:
        raise InvalidInputError("NotAP has no predicted A_n")
    if case_id in (CaseId.UNIT, CaseId.I):
        return []
    if case_id in (CaseId.II, CaseId.III):
        return [w[0]]
    if case_id in (CaseId.IV, CaseId.VI, CaseId.VIII):
        return [w[0], w[0] * w[0]]
    if case_id in (CaseId.V, CaseId.VII):
        return [w[0], w[1]]
    if case_id in (CaseId.IX, CaseId.XI):
        return [2, 3, 4]
    if case_id is CaseId.X:
        return list(w)
    return [2, 3, 4, 5, 6]


def shape_name(f: Factorization) -> str:
    """Symbolic shape such as "p^2 q" (letters assigned by ascending prime)."""
    if not f.factors:
        return "1"
    letters = "pqrs" + string.ascii_lowercase[:11]
    return " ".join(
        letters[i] if e == 1 else f"{letters[i]}^{e}" for i, e in enumerate(f.shape)
    )


def explain(f: Factorization) -> Explanation:
    """
    Explain the verdict for f: matched shape, the branch that fired, the
    family item, and tau(n) with the |A_n| it forces.
    """
    label, branch = _decide(f)
    t = tau(f)
    if f.n == 1:
        tau_case_k = None
    else:
        tau_case_k = (t - 3) // 2 if f.is_square else (t - 2) // 2

    if label.case_id is CaseId.UNIT:
        citation, note = "none", "outside theorem hypothesis n >= 2"
    elif label.case_id is CaseId.NOT_AP:
        citation, note = "none", "A_n is not an arithmetic progression"
    else:
        citation = f"item {ITEMS[label.case_id]}"
        note = f"A_n = {predicted_A(label)}"

    return Explanation(
        n=f.n,
        factorization=str(f),
        shape=shape_name(f),
        label=label,
        branch=branch,
        citation=citation,
        tau=t,
        tau_case_k=tau_case_k,
        note=note,
    )
