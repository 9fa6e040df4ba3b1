"""Command-line front end for the torus workbench"""

from .main import main
from .schemas import AnalysisReport, ReportEnvelope, TorusInputDocument

__all__ = ['main', 'AnalysisReport', 'ReportEnvelope', 'TorusInputDocument']
