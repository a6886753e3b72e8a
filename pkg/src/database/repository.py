"""Run archive repository."""

import json
from typing import Any, Dict, List, Optional

from sqlalchemy import create_engine, desc
from sqlalchemy.orm import Session, sessionmaker

from config.settings import settings
from src.database.models import AnalysisRun, Base
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class ResultRepository:
    """Stores analysis runs so results can be compared across versions."""

    def __init__(self, database_url: Optional[str] = None):
        """
        Initialize the run archive.

        Args:
            database_url: Optional database URL override
        """
        self.database_url = database_url or settings.database_url
        self.engine = create_engine(self.database_url, echo=False)
        self.SessionLocal = sessionmaker(bind=self.engine, expire_on_commit=False)
        logger.info(f"Result repository initialized: {self.database_url}")

    def create_tables(self) -> None:
        Base.metadata.create_all(self.engine)
        logger.info("Archive tables created successfully")

    def get_session(self) -> Session:
        return self.SessionLocal()

    def record_run(
        self,
        command: str,
        relation_name: str,
        relation_hash: str,
        payload: str,
        parameters: Optional[Dict[str, Any]] = None,
        verdict: Optional[str] = None,
        proof_level: Optional[str] = None,
    ) -> AnalysisRun:
        """Store one run; payload is the JSON text the command printed."""
        with self.get_session() as session:
            run = AnalysisRun(
                command=command,
                relation_name=relation_name,
                relation_hash=relation_hash,
                parameters=json.dumps(parameters, sort_keys=True) if parameters else None,
                verdict=verdict,
                proof_level=proof_level,
                payload=payload,
            )
            session.add(run)
            session.commit()
            session.refresh(run)
            logger.info(f"Archived run {run.id}: {command} on {relation_name}")
            return run

    def get_recent_runs(self, limit: int = 10) -> List[AnalysisRun]:
        with self.get_session() as session:
            return session.query(AnalysisRun).order_by(desc(AnalysisRun.id)).limit(limit).all()

    def get_runs_for_relation(self, relation_hash: str) -> List[AnalysisRun]:
        """All runs on relations with this fingerprint, oldest first."""
        with self.get_session() as session:
            return (
                session.query(AnalysisRun)
                .filter_by(relation_hash=relation_hash)
                .order_by(AnalysisRun.id)
                .all()
            )
