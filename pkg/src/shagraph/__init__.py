"""Nonabelian graph H^1, Sha double-coset models, and their arithmetic inputs."""

from .orbits import BACKEND

__version__ = "0.1.0"
