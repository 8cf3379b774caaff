"""Reference semantics and analyses for ground CR-Prolog programs."""

from .model import (
    Context,
    ExtendedLiteral,
    Literal,
    Program,
    Rule,
    RuleKind,
    complement,
    context,
    is_consistent,
    literal_universe,
)
from .parser import ParseError, parse_program, render_program

__version__ = "0.1.0"
