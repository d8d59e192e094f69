"""
The principal seed: a certified principal automorphism for the reference
experiment.

Seeds are cached per rank in ``config/seeds.yaml``, optionally with a train
track representative that the analysis starts from. A cached seed is
re-certified on every load; when it is missing or fails, a deterministic
search over random Nielsen products takes over and its result is cached.
"""
import os
from dataclasses import dataclass

import numpy as np
import yaml

from src.freegroup.automorphisms import FreeAutomorphism, outer_representative
from src.freegroup.nielsen import random_nielsen_product
from src.graphmap.graph_map import GraphMap
from src.utils.config_loader import AnalysisLimits
from src.utils.errors import FreeWalkError, SeedNotFound, ValidationError
from src.utils.logger import setup_logging
from src.whitehead.analysis import (
    AnalysisReport, analyze_automorphism, analyze_representative,
)

logger = setup_logging("seeds")

DEFAULT_SEEDS_FILE = "config/seeds.yaml"


@dataclass(frozen=True)
class SeedSearch:
    """Parameters of the principal seed search."""

    attempts: int = 2000
    min_length: int = 6
    max_length: int = 14
    search_seed: int = 2024

    @classmethod
    def from_config(cls, config: dict | None) -> "SeedSearch":
        section = dict((config or {}).get("seeds", {}))
        section.pop("file", None)
        unknown = set(section) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"Unknown seed settings: {sorted(unknown)}")
        search = cls(**section)
        if not 1 <= search.min_length <= search.max_length:
            raise ValidationError("seeds.min_length must be in "
                                  "[1, seeds.max_length]")
        return search


def certify_principal(phi: FreeAutomorphism,
                      limits: AnalysisLimits | None = None,
                      representative: GraphMap | None = None
                      ) -> AnalysisReport | None:
    """
    The analysis report of ``phi`` if it certifies as principal.

    :param representative: A train track map of ``phi`` to analyze instead
        of searching for one.
    """
    try:
        if representative is not None:
            report = analyze_representative(phi, representative, limits)
        else:
            report = analyze_automorphism(phi, limits)
    except FreeWalkError as e:
        logger.error(f"❌ Analysis of {phi} failed: {e}")
        return None
    return report if report.classification.principal else None


def _read_payload(file_path: str) -> dict:
    if not os.path.exists(file_path):
        logger.warning(f"⚠️ Seeds file {file_path} does not exist")
        return {}
    try:
        with open(file_path, "r", encoding="utf-8") as handle:
            return yaml.safe_load(handle) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ValidationError(f"cannot read seeds file {file_path}: {e}") \
            from e


def load_seeds(file_path: str = DEFAULT_SEEDS_FILE) -> dict[int, list[str]]:
    payload = _read_payload(file_path)
    return {int(rank): [str(image) for image in images]
            for rank, images in (payload.get("principal") or {}).items()}


def load_representatives(file_path: str = DEFAULT_SEEDS_FILE
                         ) -> dict[int, GraphMap]:
    """Train track maps stored next to the seeds, keyed by rank."""
    payload = _read_payload(file_path)
    return {int(rank): GraphMap.from_dict(entry)
            for rank, entry in (payload.get("representatives") or {}).items()}


def save_seed(phi: FreeAutomorphism, file_path: str = DEFAULT_SEEDS_FILE,
              representative: GraphMap | None = None):
    """Cache ``phi``; a stale representative of the same rank is dropped."""
    payload = _read_payload(file_path)
    seeds = {int(rank): list(images)
             for rank, images in (payload.get("principal") or {}).items()}
    maps = {int(rank): entry for rank, entry
            in (payload.get("representatives") or {}).items()}
    seeds[phi.rank] = [str(image) for image in phi.images]
    maps.pop(phi.rank, None)
    if representative is not None:
        maps[phi.rank] = representative.to_dict()
    parent = os.path.dirname(file_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    document = {"principal": seeds}
    if maps:
        document["representatives"] = maps
    with open(file_path, "w", encoding="utf-8") as handle:
        yaml.safe_dump(document, handle, sort_keys=True)
    logger.info(f"📁 Principal seed for rank {phi.rank} cached in "
                f"{file_path}")


def search_principal(rank: int, search: SeedSearch | None = None,
                     limits: AnalysisLimits | None = None
                     ) -> AnalysisReport | None:
    """
    Try random Nielsen products, shortened in their outer class, until one
    certifies as principal.

    The candidate sequence depends only on ``search.search_seed``.
    """
    search = search or SeedSearch()
    rng = np.random.default_rng(search.search_seed)
    tried: set[FreeAutomorphism] = set()
    for attempt in range(search.attempts):
        length = int(rng.integers(search.min_length, search.max_length + 1))
        phi = outer_representative(random_nielsen_product(rank, length, rng))
        if phi in tried:
            continue
        tried.add(phi)
        report = certify_principal(phi, limits)
        if report is not None:
            logger.info(f"✅ Principal seed {phi} found after "
                        f"{attempt + 1} attempts")
            return report
    logger.warning(f"⚠️ No principal seed of rank {rank} in "
                   f"{search.attempts} attempts")
    return None


def resolve_principal_seed(rank: int = 3,
                           seeds_file: str = DEFAULT_SEEDS_FILE,
                           search: SeedSearch | None = None,
                           limits: AnalysisLimits | None = None,
                           allow_search: bool = True) -> FreeAutomorphism:
    """
    Return a principal automorphism of the given rank.

    :param allow_search: Search (and cache) when the cached seed is missing
        or does not certify.
    :raises SeedNotFound: If no certified seed is available.
    """
    report = resolve_principal_report(rank, seeds_file, search, limits,
                                      allow_search)
    return report.phi


def resolve_principal_report(rank: int = 3,
                             seeds_file: str = DEFAULT_SEEDS_FILE,
                             search: SeedSearch | None = None,
                             limits: AnalysisLimits | None = None,
                             allow_search: bool = True) -> AnalysisReport:
    """Like :func:`resolve_principal_seed`, returning the certifying report."""
    if rank < 3:
        raise ValidationError(f"principal automorphisms need rank >= 3, "
                              f"got {rank}")
    images = load_seeds(seeds_file).get(rank)
    if images is not None:
        phi = FreeAutomorphism.from_strings(images, rank)
        try:
            representative = load_representatives(seeds_file).get(rank)
        except FreeWalkError as e:
            logger.error(f"❌ Stored representative for rank {rank} "
                         f"is unusable: {e}")
            representative = None
        report = certify_principal(phi, limits, representative)
        if report is not None:
            logger.info(f"✅ Cached principal seed {phi} certified")
            return report
        logger.error(f"❌ Cached seed {phi} does not certify as principal")
    if not allow_search:
        raise SeedNotFound(f"no certified principal seed of rank {rank} in "
                           f"{seeds_file}")
    report = search_principal(rank, search, limits)
    if report is None:
        raise SeedNotFound(f"search found no principal seed of rank {rank}")
    save_seed(report.phi, seeds_file, report.train_track.map)
    return report
