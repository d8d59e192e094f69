"""Three-valued verdicts on full irreducibility, ageometricity and shape."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from src.whitehead.index import format_fraction, rotationless_index
from src.whitehead.pnp import PNPKind, PNPStatus


class Verdict(Enum):
    CERTIFIED_YES = "CertifiedYes"
    CERTIFIED_NO = "CertifiedNo"
    UNKNOWN = "Unknown"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Classification:
    rank: int
    fully_irreducible: Verdict
    ageometric: Verdict
    triangular: bool
    principal: bool
    pnp_status: PNPStatus | None = None
    index: Fraction | None = None
    sizes: tuple[int, ...] = ()
    witness: dict | None = None

    @property
    def trivalent_branch_points(self) -> bool:
        """Asserted from triangularity; never recomputed from trees."""
        return self.triangular

    def to_dict(self) -> dict:
        payload = {
            "fully_irreducible": self.fully_irreducible.value,
            "ageometric": self.ageometric.value,
            "triangular": self.triangular,
            "principal": self.principal,
            "trivalent_branch_points": self.trivalent_branch_points,
        }
        if self.witness is not None:
            payload["fully_irreducible_witness"] = self.witness
        if self.index is not None:
            payload["index"] = format_fraction(self.index)
        return payload


def classify(rank: int,
             sizes: Sequence[int] | None = None,
             *,
             primitive: bool | None = None,
             local_connected: bool | None = None,
             pnp: PNPStatus | None = None,
             all_triangles: bool | None = None,
             witness: dict | None = None,
             fully_irreducible: Verdict | None = None) -> Classification:
    """
    Combine the evidence gathered for one automorphism.

    Full irreducibility is certified by a primitive transition matrix,
    connected local Whitehead graphs and no Nielsen path within the search
    bound; it is refuted by an invariant free factor ``witness``. Passing
    ``fully_irreducible`` overrides both rules.

    :param sizes: Component sizes of the ideal Whitehead graph.
    :param all_triangles: Whether every component is a triangle; defaults to
        every size being 3.
    """
    if fully_irreducible is None:
        if witness is not None:
            fully_irreducible = Verdict.CERTIFIED_NO
        elif primitive and local_connected and pnp is not None and \
                pnp.kind is PNPKind.NONE_FOUND_UP_TO_BOUND:
            fully_irreducible = Verdict.CERTIFIED_YES
        else:
            fully_irreducible = Verdict.UNKNOWN

    sizes = tuple(sizes or ())
    index = None
    if sizes and min(sizes) >= 3:
        index = rotationless_index(sizes)

    certified = fully_irreducible is Verdict.CERTIFIED_YES
    if fully_irreducible is Verdict.CERTIFIED_NO:
        ageometric = Verdict.NOT_APPLICABLE
    elif certified and index is not None and 0 > index > 1 - rank:
        ageometric = Verdict.CERTIFIED_YES
    else:
        ageometric = Verdict.UNKNOWN

    if all_triangles is None:
        all_triangles = all(k == 3 for k in sizes)
    triangular = certified and bool(sizes) and all_triangles and \
        len(sizes) <= 2 * rank - 3
    principal = triangular and len(sizes) == 2 * rank - 3
    return Classification(rank, fully_irreducible, ageometric, triangular,
                          principal, pnp, index, sizes, witness)
