"""Sustainability models, design patterns and pattern catalogues as a textual DSL."""

from .catalogue import Catalogue, catalogue_stats, compose_chain, lint_related_distance, placement, placements
from .diagnostics import Diagnostic, Severity, SourceSpan
from .export import export_catalogue_dot, export_model_dot, export_pattern_markdown
from .model import (
    Dimension,
    Element,
    ElementKind,
    Fragment,
    Link,
    LinkKind,
    Model,
    Strategy,
    add_element,
    add_link,
    undirected_components,
)
from .parser import DSLError, load, parse_binding, parse_catalogue, parse_model, parse_pattern
from .patterns import Existing, Fresh, PatternDoc, diff_instantiation, free_roles, instantiate
from .serializer import serialize
from .validator import validate_model, validate_pattern

__version__ = "0.1.0"
