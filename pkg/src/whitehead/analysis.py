"""
Full analysis of one automorphism: train track search, primitivity,
Whitehead graphs, Nielsen path search, ideal Whitehead graph, index and
classification, bundled into a JSON-serializable report.
"""
from dataclasses import dataclass, field

from src.freegroup.automorphisms import FreeAutomorphism, same_outer_class
from src.graphmap.graph_map import GraphMap, induced_automorphism
from src.graphmap.matrices import (
    PrimitivityClass, characteristic_polynomial, pf_data, primitivity_class,
    transition_matrix,
)
from src.trainfold.sequence import FoldSequence
from src.trainfold.train_track import (
    Outcome, TrainTrackResult, find_train_track, is_train_track,
)
from src.utils.config_loader import AnalysisLimits
from src.utils.errors import ValidationError
from src.utils.logger import setup_logging
from src.whitehead.classify import Classification, Verdict, classify
from src.whitehead.graphs import (
    IdealWhiteheadGraph, WhiteheadGraphs, ideal_whitehead_graph,
    whitehead_graphs,
)
from src.whitehead.index import IndexReport
from src.whitehead.pnp import (
    EXPANSION_TOLERANCE, PNPKind, PNPStatus, pnp_search,
)
from src.whitehead.turns import rotationless_power

logger = setup_logging("whitehead")


@dataclass
class AnalysisReport:
    phi: FreeAutomorphism
    train_track: TrainTrackResult
    classification: Classification
    primitivity: PrimitivityClass | None = None
    power: int | None = None
    whitehead: WhiteheadGraphs | None = None
    pnp: PNPStatus | None = None
    ideal: IdealWhiteheadGraph | None = None
    index: IndexReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def eigenvalue(self) -> float | None:
        return self.train_track.eigenvalue

    @property
    def sizes(self) -> list[int]:
        return self.ideal.sizes if self.ideal is not None else []

    @property
    def fully_irreducible(self) -> Verdict:
        return self.classification.fully_irreducible

    def to_dict(self, include_trace: bool = False) -> dict:
        payload = {
            "automorphism": self.phi.to_dict(),
            "train_track": self.train_track.to_dict(include_trace),
            "lambda": self.eigenvalue,
            "k_list": self.sizes,
            "index": None,
            "flags": self.classification.to_dict(),
            "pnp_status": self.pnp.to_dict() if self.pnp else None,
            "rotationless_power": self.power,
        }
        if self.index is not None:
            payload.update(self.index.to_dict())
        if self.primitivity is not None:
            payload["primitivity"] = self.primitivity.value
        if self.train_track.map is not None and self.train_track.found:
            matrix = transition_matrix(self.train_track.map)
            payload["transition_matrix"] = matrix.tolist()
            payload["characteristic_polynomial"] = \
                characteristic_polynomial(matrix)
        if self.whitehead is not None:
            payload["whitehead_graphs"] = \
                self.whitehead.to_dict(self.train_track.map)
        if self.ideal is not None:
            payload["ideal_provisional"] = self.ideal.provisional
        if self.notes:
            payload["notes"] = list(self.notes)
        return payload


def analyze_automorphism(phi: FreeAutomorphism,
                         limits: AnalysisLimits | None = None
                         ) -> AnalysisReport:
    """
    Run the whole pipeline on ``phi``. Never raises for mathematical
    outcomes: unresolved stages become Unknown or Inconclusive values.
    """
    limits = limits or AnalysisLimits()
    result = find_train_track(phi, limits.max_steps,
                              tolerance=limits.eigen_tolerance,
                              max_iterations=limits.eigen_max_iterations)

    if result.outcome is Outcome.REDUCTION_WITNESS:
        witness = result.witness.to_dict() \
            if result.witness.is_proper_free_factor else None
        return AnalysisReport(phi, result, classify(phi.rank,
                                                    witness=witness))
    if result.outcome is Outcome.INCONCLUSIVE:
        return AnalysisReport(phi, result, classify(phi.rank),
                              notes=list(result.notes))
    return _analyze_train_track(phi, result, limits)


def analyze_representative(phi: FreeAutomorphism, g: GraphMap,
                           limits: AnalysisLimits | None = None
                           ) -> AnalysisReport:
    """
    Run the pipeline on a known representative ``g`` of ``phi``, skipping
    the train track search. Falls back to the search when ``g`` is not an
    irreducible train track map.

    :raises ValidationError: If ``g`` does not represent the outer class of
        ``phi``.
    """
    limits = limits or AnalysisLimits()
    if not same_outer_class(induced_automorphism(g), phi):
        raise ValidationError(f"representative does not induce {phi}")
    matrix = transition_matrix(g)
    if not is_train_track(g) or \
            not primitivity_class(matrix).is_irreducible:
        logger.warning(f"⚠️ Supplied map for {phi} is not an irreducible "
                       f"train track; searching instead")
        return analyze_automorphism(phi, limits)
    eigenvalue, eigenvector = pf_data(matrix, limits.eigen_tolerance,
                                      limits.eigen_max_iterations)
    result = TrainTrackResult(Outcome.TRAIN_TRACK, 0, FoldSequence(g.graph),
                              map=g, eigenvalue=eigenvalue,
                              eigenvector=eigenvector,
                              notes=["supplied representative"])
    return _analyze_train_track(phi, result, limits)


def _analyze_train_track(phi: FreeAutomorphism, result: TrainTrackResult,
                         limits: AnalysisLimits) -> AnalysisReport:
    g = result.map
    primitivity = primitivity_class(transition_matrix(g)).kind
    power = rotationless_power(g)
    whitehead = whitehead_graphs(g, power)
    report = AnalysisReport(phi, result, classify(phi.rank),
                            primitivity=primitivity, power=power,
                            whitehead=whitehead)
    if result.eigenvalue <= 1 + EXPANSION_TOLERANCE:
        report.notes.append("train track map is not expanding")
        return report

    report.pnp = pnp_search(g, limits.pnp_slack, limits.pnp_max_candidates,
                            limits.pnp_max_subdivisions, power,
                            tolerance=limits.eigen_tolerance,
                            max_iterations=limits.eigen_max_iterations)
    if report.pnp.kind is not PNPKind.FOUND:
        report.ideal = ideal_whitehead_graph(g, report.pnp, power,
                                             whitehead)
        if report.ideal.sizes and min(report.ideal.sizes) >= 3:
            report.index = IndexReport.from_sizes(report.ideal.sizes, power)
    report.classification = classify(
        phi.rank,
        report.ideal.sizes if report.ideal else None,
        primitive=primitivity is PrimitivityClass.PRIMITIVE,
        local_connected=whitehead.local_connected(),
        pnp=report.pnp,
        all_triangles=report.ideal.all_triangles if report.ideal else None)
    logger.debug(f"🔍 {phi}: lambda {result.eigenvalue:.6g}, "
                 f"k {report.sizes}, "
                 f"FI {report.classification.fully_irreducible.value}")
    return report
