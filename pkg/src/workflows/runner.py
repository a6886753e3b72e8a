"""Orchestrates relation loading, analysis commands and the run archive."""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from pydantic import BaseModel, Field

from config.settings import settings
from src.conjugacy.transfer import TransferReport, apply_homeo, are_conjugate, entropy_transfer_check
from src.core.errors import ParameterError
from src.core.homeomorphism import Homeomorphism
from src.core.relation import Relation
from src.core.scalar import Scalar
from src.core.serialization import (
    RelationFile,
    load_relation,
    relation_fingerprint,
    relation_to_record,
)
from src.database.repository import ResultRepository
from src.gallery.builders import gallery_entry, gallery_names
from src.mahavier.entropy import EntropyReport, entropy_sequence
from src.mahavier.grid import CellSemantics
from src.orbits.classify import EmbeddingVerdict, classify_embedding, orbit_census
from src.orbits.models import OrbitCensus
from src.reports.svg import prefix_svg, relation_svg
from src.utils.logger import setup_logger
from src.wellaligned.certificate import CertificateRecord, Target, certify

logger = setup_logger(__name__)

GALLERY_PREFIX = "gallery:"


class ConjugationResult(BaseModel):
    image: RelationFile
    conjugate_to_target: Optional[bool] = None
    transfer: Optional[TransferReport] = None


class GalleryListing(BaseModel):
    name: str
    description: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    relation: RelationFile


@dataclass(frozen=True)
class LoadedRelation:
    """A relation together with the label it was requested under."""

    label: str
    relation: Relation
    parameters: Dict[str, str] = field(default_factory=dict)


class AnalysisRunner:
    """Runs one analysis command per call and optionally archives the result."""

    def __init__(self, archive: Optional[bool] = None,
                 repository: Optional[ResultRepository] = None):
        """
        Initialize the runner.

        Args:
            archive: Store runs in the archive database (defaults to settings)
            repository: Explicit repository, mainly for tests
        """
        enabled = settings.archive_enabled if archive is None else archive
        self.repository = repository
        if enabled and self.repository is None:
            self.repository = ResultRepository()
            self.repository.create_tables()
        logger.info(f"Analysis runner initialized (archive {'on' if self.repository else 'off'})")

    # Inputs

    def load(self, source: str, overrides: Optional[Mapping[str, str]] = None,
             d: Optional[int] = None) -> LoadedRelation:
        """
        Resolve "gallery:<name>" or a relation file path.

        Raises:
            ParameterError: If overrides are given for a file
        """
        overrides = dict(overrides or {})
        if source.startswith(GALLERY_PREFIX):
            name = source[len(GALLERY_PREFIX):]
            parsed = {key: Scalar.parse(value, d or 0) for key, value in overrides.items()}
            entry = gallery_entry(name, parsed)
            params = {key: str(value) for key, value in entry.parameters.items()}
            return LoadedRelation(label=source, relation=entry.relation, parameters=params)
        if overrides:
            raise ParameterError("--param only applies to gallery relations")
        return LoadedRelation(label=source, relation=load_relation(source))

    # Commands

    def entropy(self, loaded: LoadedRelation, n: int, m_max: int,
                semantics: Optional[CellSemantics] = None) -> EntropyReport:
        report = entropy_sequence(loaded.relation, n, m_max, semantics)
        self._archive("entropy", loaded, report, {"grid": n, "max_m": m_max})
        return report

    def orbits(self, loaded: LoadedRelation, max_period: int) -> OrbitCensus:
        census = orbit_census(loaded.relation, max_period)
        self._archive("orbits", loaded, census, {"max_period": max_period},
                      proof_level=census.proof_level)
        return census

    def certify(self, loaded: LoadedRelation, hints: Sequence[Scalar] = (),
                target: Optional[Target] = None) -> Optional[CertificateRecord]:
        targets = (target,) if target else ("G", "G_inverse")
        certificate = certify(loaded.relation, list(hints), targets)
        record = certificate.to_record() if certificate else None
        if record is not None:
            self._archive("certify", loaded, record, {"hints": [str(h) for h in hints]})
        return record

    def conjugate(self, loaded: LoadedRelation, phi: Homeomorphism,
                  against: Optional[LoadedRelation] = None, n: Optional[int] = None,
                  m_max: Optional[int] = None) -> ConjugationResult:
        """Map G by phi; with a target relation also check conjugacy and entropy transfer."""
        image = apply_homeo(loaded.relation, phi)
        result = ConjugationResult(image=relation_to_record(image))
        if against is not None:
            H = against.relation
            result.conjugate_to_target = are_conjugate(loaded.relation, H, phi)
            if result.conjugate_to_target:
                result.transfer = entropy_transfer_check(
                    loaded.relation, H, phi,
                    n or settings.default_grid, m_max or settings.default_max_m,
                )
        self._archive("conjugate", loaded, result, {"against": against.label if against else None})
        return result

    def plot(self, loaded: LoadedRelation, prefix_depth: Optional[int] = None) -> str:
        if prefix_depth:
            return prefix_svg(loaded.relation, prefix_depth)
        return relation_svg(loaded.relation)

    def report(self, loaded: LoadedRelation, max_period: int, n: int,
               m_max: Optional[int] = None) -> EmbeddingVerdict:
        verdict = classify_embedding(loaded.relation, max_period, n, m_max)
        self._archive("report", loaded, verdict, {"max_period": max_period, "grid": n},
                      verdict=verdict.verdict.value, proof_level=verdict.census.proof_level)
        return verdict

    def gallery(self) -> List[GalleryListing]:
        listings = []
        for name in gallery_names():
            entry = gallery_entry(name)
            listings.append(GalleryListing(
                name=name,
                description=entry.description,
                parameters={key: str(value) for key, value in entry.parameters.items()},
                relation=relation_to_record(entry.relation),
            ))
        return listings

    # Archive

    def _archive(self, command: str, loaded: LoadedRelation, result: BaseModel,
                 parameters: Dict, verdict: Optional[str] = None,
                 proof_level: Optional[str] = None) -> None:
        if self.repository is None:
            return
        try:
            self.repository.record_run(
                command=command,
                relation_name=loaded.label,
                relation_hash=relation_fingerprint(loaded.relation),
                payload=result.model_dump_json(),
                parameters={**loaded.parameters, **parameters},
                verdict=verdict,
                proof_level=proof_level,
            )
        except Exception as e:
            logger.error(f"Failed to archive {command} run: {e}")
