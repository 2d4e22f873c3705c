"""매니저 모듈"""

from .config_manager import ConfigManager
from .problem_manager import ProblemFile, ProblemManager

__all__ = ["ConfigManager", "ProblemFile", "ProblemManager"]
