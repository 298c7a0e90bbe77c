"""Bundled example descriptions."""

from __future__ import annotations

from importlib import resources

from .model import ArchDescription
from .parser import parse


def las_source() -> str:
    """ACME text of the London Ambulance Service dispatch system."""
    return resources.files(__package__).joinpath("data/las.acme").read_text(encoding="utf-8")


def load_las() -> ArchDescription:
    return parse(las_source())
