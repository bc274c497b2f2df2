"""Interaction systems, coinductive behaviors, and simulations evaluated as transducers."""
from .containers import InteractionSystem, SemStep, compose_is, dual, hom
from .coval import Behavior, anamorphism, bisim_depth, truncate
from .freemonad import Leaf, Node, Path, eat, star
from .layering import eval_layered, from_layers, layered, to_layers
from .simulation import LinearSim, bullet, cobind, eval_general, eval_linear, sim_compose, sim_id
from .values import STAR, Enumeration, Fn, encode

__all__ = [
    "InteractionSystem", "SemStep", "compose_is", "dual", "hom", "Behavior", "anamorphism",
    "bisim_depth", "truncate", "Leaf", "Node", "Path", "eat", "star", "eval_layered",
    "from_layers", "layered", "to_layers", "LinearSim", "bullet", "cobind", "eval_general",
    "eval_linear", "sim_compose", "sim_id", "STAR", "Enumeration", "Fn", "encode",
]
