"""Traces of elementary moves."""
from dataclasses import dataclass, field

from src.freegroup.automorphisms import FreeAutomorphism
from src.graphmap.graph_map import GraphMap, induced_automorphism
from src.graphmap.marked_graph import MarkedGraph

STEP_KINDS = ("subdivide", "fold", "tighten", "collapse",
              "remove_valence_one", "remove_valence_two")


@dataclass(frozen=True)
class FoldStep:
    kind: str
    detail: dict
    graph: MarkedGraph

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.detail,
                "graph": self.graph.to_dict()}


@dataclass
class FoldSequence:
    """
    Ordered steps, each with the graph it produced.

    For a fold decomposition ``final_map`` is the last stage mapped onto the
    codomain by its edge labels.
    """

    initial: MarkedGraph
    steps: list[FoldStep] = field(default_factory=list)
    final_map: GraphMap | None = None

    def record(self, kind: str, graph: MarkedGraph, **detail):
        if kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind '{kind}'")
        self.steps.append(FoldStep(kind, detail, graph))

    def __len__(self) -> int:
        return len(self.steps)

    def count(self, kind: str) -> int:
        return sum(1 for step in self.steps if step.kind == kind)

    def kinds(self) -> list[str]:
        return [step.kind for step in self.steps]

    def graphs(self) -> list[MarkedGraph]:
        return [self.initial] + [step.graph for step in self.steps]

    def recompose(self) -> FreeAutomorphism:
        """
        The automorphism obtained by reading the final stage through its
        labels; it agrees with the decomposed map up to conjugacy.
        """
        if self.final_map is None:
            raise ValueError("only fold decompositions can be recomposed")
        return induced_automorphism(self.final_map)

    def to_dict(self) -> dict:
        return {"initial": self.initial.to_dict(),
                "steps": [step.to_dict() for step in self.steps]}
