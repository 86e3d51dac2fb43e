"""Command-line interface and model files."""

from .main import main, run
from .model import Model, ModelError, parse_model, print_model

__all__ = ["main", "run", "Model", "ModelError", "parse_model", "print_model"]
