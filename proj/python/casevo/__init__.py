from ._core import classify, run, small_world_edges, tallies, tokenize

__all__ = ["classify", "run", "small_world_edges", "tallies", "tokenize"]
