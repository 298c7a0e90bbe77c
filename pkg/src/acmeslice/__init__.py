"""Architectural dependence analysis and slicing for ACME descriptions."""

__version__ = "0.1.0"

from .flow import (
    Direction,
    FlowEdge,
    FlowError,
    FlowRelation,
    attachment_flows,
    build_flow_relation,
    check_flows,
    internal_flows,
    resolve_direction,
)
from .model import (
    AcmeError,
    ArchDescription,
    Attachment,
    AttachmentsGroup,
    Component,
    Connector,
    Diagnostic,
    IfaceKind,
    InterfaceRef,
    Location,
    ParseError,
    Port,
    Property,
    Role,
    ValidationError,
)
from .parser import parse, parse_file
from .printer import emit_text
from .sadg import SADG, ArcKind, DependenceArc, Vertex, build_sadg, emit_dot, emit_json
from .slicer import (
    CriterionError,
    GraphSlice,
    SliceCriterion,
    project_slice,
    resolve_criterion,
    slice_architecture,
    slice_graph,
)
from .fixtures import las_source, load_las
from .validate import validate
