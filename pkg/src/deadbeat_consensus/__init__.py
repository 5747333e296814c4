"""Deadbeat consensus prediction for discrete-time high-order linear
multi-agent systems.

Subpackages:
  graph      directed communication topologies, Laplacians, random models
  dynamics   closed-loop system assembly, simulation, disagreement metrics
  polyalg    polynomial / rational-function machinery
  predictor  single-agent deadbeat consensus and disagreement prediction
  bench      case-study reproduction, random-network ensembles, reports
"""

from . import bench, dynamics, graph, polyalg, predictor

__all__ = ["graph", "dynamics", "polyalg", "predictor", "bench"]
__version__ = "0.1.0"
