"""Throughput and delay of relay bottleneck components with multi-packet
reception, opportunistic network coding and node- or flow-fair MAC."""
from .macalloc import (
    Allocation,
    CodingConfig,
    Region,
    ThroughputPoint,
    Traffic,
    Variant,
    coding_coefficient,
    derive_mc,
    flow_fair_allocation,
    flow_fair_throughput,
    nc_downlink_slots,
    node_fair_throughput,
    relay_load,
    saturated_throughput,
)
from .slotsim import (
    KnowledgeState,
    PacketId,
    SessionResult,
    SimulationError,
    completion_delay,
    decode_check,
    run_session,
)
from .topology import Kind, TopologyComponent, build_component, csma_groups
from .traffic import LoadScenario, draw_scenario, symmetric_scenario

__version__ = "0.1.0"
