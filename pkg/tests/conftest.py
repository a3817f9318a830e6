from __future__ import annotations

from quiverstrata.kmcore import (
    cartan_from_graph,
    cycle_graph,
    jordan_quiver,
    path_graph,
)
from quiverstrata.modrep import GradedModule

A1 = path_graph(1)
A2 = path_graph(2)
AFF_A1 = cycle_graph(2)
AFF_A2 = cycle_graph(3)
AFF_A3 = cycle_graph(4)
JORDAN = jordan_quiver()

C_A1 = cartan_from_graph(A1)
C_A2 = cartan_from_graph(A2)
C_AFF_A1 = cartan_from_graph(AFF_A1)
C_AFF_A2 = cartan_from_graph(AFF_A2)
C_AFF_A3 = cartan_from_graph(AFF_A3)


def a1_module(a: int, b: int, q: int = 2) -> GradedModule:
    """One-vertex module with dim V = dim W = 1 and scalar maps ``a: W -> V``, ``b: V -> W``."""
    return GradedModule(A1, q, (1,), (1,), (), (((a,),),), (((b,),),))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_report", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
