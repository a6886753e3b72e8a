"""Database model for archived analysis runs."""

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import declarative_base

from src.utils.helpers import get_timestamp

Base = declarative_base()


class AnalysisRun(Base):
    """One CLI command executed against one relation."""

    __tablename__ = "analysis_runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(20), nullable=False)  # entropy, orbits, certify, ...
    relation_name = Column(String(200), nullable=False)  # gallery:<name> or file path
    relation_hash = Column(String(64), nullable=False, index=True)
    parameters = Column(Text, nullable=True)  # JSON string
    verdict = Column(String(30), nullable=True)
    proof_level = Column(String(20), nullable=True)  # 'proven' or 'bounded_search'
    payload = Column(Text, nullable=False)  # JSON string of the full result
    created_at = Column(DateTime(timezone=True), nullable=False, default=get_timestamp)

    def __repr__(self) -> str:
        return (f"<AnalysisRun(id={self.id}, command={self.command}, "
                f"relation={self.relation_name}, verdict={self.verdict})>")
