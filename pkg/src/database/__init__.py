"""Run archive model and repository."""

from src.database.models import AnalysisRun, Base
from src.database.repository import ResultRepository

__all__ = ["Base", "AnalysisRun", "ResultRepository"]
